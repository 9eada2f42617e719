// gatpbench command-line driver. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gatpbench/gatpbench.h"

namespace {

enum Exit { kSuccess = 0, kNotProved = 1, kUsage = 2, kFailure = 3 };

struct UsageError {
  std::string message;
};

int report(gatp_error code) {
  std::cerr << "gatpbench: " << gatp_error_name(code);
  if (*gatp_last_error()) std::cerr << ": " << gatp_last_error();
  std::cerr << "\n";
  return code == GATP_ERR_INVALID_ARGUMENT || code == GATP_ERR_NEGATIVE_WEIGHT ? kUsage
                                                                                : kFailure;
}

double parse_seconds(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v > 0) || v > 1e9)
    throw UsageError{std::string(what) + " must be a positive number of seconds, got '" + text +
                     "'"};
  return v;
}

// Flag beats GATPBENCH_TIMEOUT beats the built-in default.
double resolve_timeout(const std::optional<std::string>& flag) {
  if (flag) return parse_seconds(*flag, "--timeout");
  if (const char* env = std::getenv("GATPBENCH_TIMEOUT"); env && *env)
    return parse_seconds(env, "GATPBENCH_TIMEOUT");
  return gatp_default_timeout();
}

std::pair<std::string, std::string> split_assignment(const std::string& s, const char* flag) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
    throw UsageError{std::string(flag) + " expects ID=VALUE, got '" + s + "'"};
  return {s.substr(0, eq), s.substr(eq + 1)};
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    if (comma > start) out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

gatp_reliability parse_reliability(const std::string& s) {
  if (s == "formally-verified") return GATP_FORMALLY_VERIFIED;
  if (s == "extensively-tested") return GATP_EXTENSIVELY_TESTED;
  if (s == "unverified") return GATP_UNVERIFIED;
  throw UsageError{"unknown reliability class '" + s + "'"};
}

struct Meta {
  int level = 1;
  gatp_reliability reliability = GATP_UNVERIFIED;
};

// id=LEVEL/CLASS, e.g. gclc=2/extensively-tested
std::map<std::string, Meta> parse_meta(const std::vector<std::string>& items) {
  std::map<std::string, Meta> out;
  for (const auto& item : items) {
    auto [id, value] = split_assignment(item, "--meta");
    auto slash = value.find('/');
    Meta m;
    std::string level = value.substr(0, slash);
    if (level.size() != 1 || level[0] < '1' || level[0] > '5')
      throw UsageError{"readability level must be 1..5 in '" + item + "'"};
    m.level = level[0] - '0';
    if (slash != std::string::npos) m.reliability = parse_reliability(value.substr(slash + 1));
    out[id] = m;
  }
  return out;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

// ------------------------------------------------------------------ commands

struct ProveArgs {
  std::string file;
  std::string prover = "wu";
  std::string mode = "generic";
  std::optional<std::string> timeout;
  std::optional<std::string> external;
  bool trace = false;
};

int run_prove(const ProveArgs& a) {
  double timeout = resolve_timeout(a.timeout);
  Handle<gatp_outcome, gatp_outcome_free> outcome;
  if (a.external) {
    if (gatp_error e = gatp_prove_external(a.external->c_str(), a.file.c_str(), timeout,
                                           outcome.out()))
      return report(e);
  } else {
    Handle<gatp_problem, gatp_problem_free> problem;
    if (gatp_error e = gatp_problem_load(a.file.c_str(), problem.out())) return report(e);
    gatp_prove_options o;
    gatp_prove_options_init(&o);
    o.timeout_seconds = timeout;
    o.prover = a.prover == "wu" ? GATP_PROVER_WU : GATP_PROVER_GROEBNER;
    o.mode = a.mode == "strict" ? GATP_GROEBNER_STRICT : GATP_GROEBNER_GENERIC;
    o.trace = a.trace;
    if (gatp_error e = gatp_prove(problem.get(), &o, outcome.out())) return report(e);
  }

  gatp_status status = gatp_outcome_status(outcome.get());
  std::printf("%s\n", gatp_status_name(status));
  for (size_t i = 0; i < gatp_outcome_ndg_count(outcome.get()); ++i)
    std::printf("ndg: %s != 0\n", gatp_outcome_ndg(outcome.get(), i));
  std::printf("time: %.6f s wall, %.6f s cpu\n", gatp_outcome_wall_seconds(outcome.get()),
              gatp_outcome_cpu_seconds(outcome.get()));
  if (a.trace)
    if (const char* t = gatp_outcome_trace(outcome.get())) std::printf("%s", t);
  if (status == GATP_STATUS_ERROR) {
    std::cerr << "gatpbench: prover error: " << gatp_outcome_message(outcome.get()) << "\n";
    return kFailure;
  }
  return status == GATP_PROVED ? kSuccess : kNotProved;
}

struct CheckArgs {
  std::string file;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  bool nondegenerate = false;
};

int run_check(const CheckArgs& a) {
  if (a.samples == 0) throw UsageError{"--samples must be positive"};
  Handle<gatp_problem, gatp_problem_free> problem;
  if (gatp_error e = gatp_problem_load(a.file.c_str(), problem.out())) return report(e);
  Handle<gatp_outcome, gatp_outcome_free> wu;
  if (a.nondegenerate) {
    gatp_prove_options o;
    gatp_prove_options_init(&o);
    if (gatp_error e = gatp_prove(problem.get(), &o, wu.out())) return report(e);
  }
  Handle<gatp_check, gatp_check_free> check;
  if (gatp_error e = gatp_check_run(problem.get(), a.samples, a.seed, wu.get(), check.out()))
    return report(e);
  std::printf("%s", gatp_check_report(check.get()));
  return gatp_check_consistent(check.get()) ? kSuccess : kNotProved;
}

struct BenchArgs {
  std::string corpus;
  std::string provers;
  std::string out;
  std::optional<std::string> timeout;
  std::vector<std::string> externals;
  std::vector<std::string> meta;
  unsigned repetitions = 1;
  unsigned jobs = 1;
  std::string trace_dir;
};

int run_bench(const BenchArgs& a) {
  double timeout = resolve_timeout(a.timeout);
  auto meta = parse_meta(a.meta);
  std::map<std::string, std::string> externals;
  for (const auto& x : a.externals) {
    auto [id, cmd] = split_assignment(x, "--external");
    if (!externals.emplace(id, cmd).second)
      throw UsageError{"duplicate external prover '" + id + "'"};
  }

  Handle<gatp_bench, gatp_bench_free> bench;
  bench.p = gatp_bench_new();
  if (!bench.get()) return report(GATP_ERR_INTERNAL);
  bool trace = !a.trace_dir.empty();
  for (const auto& id : split_list(a.provers)) {
    gatp_error e;
    if (id == "wu")
      e = gatp_bench_add_builtin(bench.get(), "wu", GATP_PROVER_WU, GATP_GROEBNER_GENERIC, trace);
    else if (id == "gbm")
      e = gatp_bench_add_builtin(bench.get(), "gbm", GATP_PROVER_GROEBNER, GATP_GROEBNER_GENERIC,
                                 trace);
    else if (id == "gbm-strict")
      e = gatp_bench_add_builtin(bench.get(), "gbm-strict", GATP_PROVER_GROEBNER,
                                 GATP_GROEBNER_STRICT, trace);
    else if (auto it = externals.find(id); it != externals.end()) {
      Meta m = meta.count(id) ? meta[id] : Meta{};
      e = gatp_bench_add_external(bench.get(), id.c_str(), it->second.c_str(), m.level,
                                  m.reliability);
    } else
      throw UsageError{"unknown prover '" + id + "' (built-ins: wu, gbm, gbm-strict)"};
    if (e) return report(e);
  }
  if (gatp_error e = gatp_bench_set_timeout(bench.get(), timeout)) return report(e);
  if (gatp_error e = gatp_bench_set_repetitions(bench.get(), a.repetitions)) return report(e);
  if (gatp_error e = gatp_bench_set_parallelism(bench.get(), a.jobs)) return report(e);
  if (gatp_error e = gatp_bench_set_trace_dir(bench.get(), a.trace_dir.c_str())) return report(e);

  Handle<gatp_corpus, gatp_corpus_free> corpus;
  if (gatp_error e = gatp_corpus_load(a.corpus.c_str(), corpus.out())) return report(e);
  size_t written = 0;
  if (gatp_error e = gatp_bench_run(bench.get(), corpus.get(), a.out.c_str(), &written))
    return report(e);
  std::cerr << "gatpbench: wrote " << written << " records to " << a.out << "\n";
  return kSuccess;
}

struct RankArgs {
  std::string store;
  std::string corpus;
  std::string weights;
  std::string basis = "wall";
  std::vector<std::string> meta;
  bool tsv = false;
};

int run_rank(const RankArgs& a) {
  auto meta = parse_meta(a.meta);
  Handle<gatp_rank_request, gatp_rank_request_free> req;
  req.p = gatp_rank_request_new(a.store.c_str());
  if (!req.get()) return report(GATP_ERR_INTERNAL);
  Handle<gatp_corpus, gatp_corpus_free> corpus;
  if (!a.corpus.empty()) {
    if (gatp_error e = gatp_corpus_load(a.corpus.c_str(), corpus.out())) return report(e);
    gatp_rank_request_set_corpus(req.get(), corpus.get());
  }
  if (gatp_error e = gatp_rank_request_set_weights(req.get(), a.weights.c_str())) return report(e);
  gatp_rank_request_set_basis(req.get(), a.basis == "cpu" ? GATP_BASIS_CPU : GATP_BASIS_WALL);
  for (const auto& [id, m] : meta)
    if (gatp_error e = gatp_rank_request_declare(req.get(), id.c_str(), m.level, m.reliability))
      return report(e);
  Handle<gatp_report, gatp_report_free> rep;
  if (gatp_error e = gatp_rank_run(req.get(), rep.out())) return report(e);
  std::printf("%s", a.tsv ? gatp_report_tsv(rep.get()) : gatp_report_text(rep.get()));
  return kSuccess;
}

int run_list(const std::string& manifest) {
  Handle<gatp_corpus, gatp_corpus_free> corpus;
  if (gatp_error e = gatp_corpus_load(manifest.c_str(), corpus.out())) return report(e);
  for (size_t i = 0; i < gatp_corpus_size(corpus.get()); ++i)
    std::printf("%s\t%s\n", gatp_corpus_id(corpus.get(), i), gatp_corpus_expected(corpus.get(), i));
  return kSuccess;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for algebraic geometry theorem provers"};
  app.set_version_flag("--version", gatp_version());
  app.require_subcommand(1);

  ProveArgs prove;
  auto* p = app.add_subcommand("prove", "Prove the conjectures of a problem file");
  p->add_option("file", prove.file, "Problem file")->required();
  p->add_option("--prover", prove.prover, "Built-in prover")
      ->check(CLI::IsMember({"wu", "gbm"}));
  p->add_option("--mode", prove.mode, "Groebner mode")->check(CLI::IsMember({"generic", "strict"}));
  p->add_option("--timeout", prove.timeout, "Time budget in seconds (default 60)");
  p->add_option("--external", prove.external, "Run an external command instead; {input} is the file");
  p->add_flag("--trace", prove.trace, "Print the proof record");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Evaluate the conjectures on random exact models");
  c->add_option("file", check.file, "Problem file")->required();
  c->add_option("--samples", check.samples, "Number of models")->capture_default_str();
  c->add_option("--seed", check.seed, "Random seed")->capture_default_str();
  c->add_flag("--nondegenerate", check.nondegenerate,
              "Also keep the conditions reported by Wu's method nonzero");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run provers over a corpus and append run records");
  b->add_option("--corpus", bench.corpus, "Corpus manifest")->required();
  b->add_option("--provers", bench.provers, "Comma-separated prover ids")->required();
  b->add_option("--out", bench.out, "Record store to append to")->required();
  b->add_option("--timeout", bench.timeout, "Per-run budget in seconds (default 60)");
  b->add_option("--external", bench.externals, "External prover ID=COMMAND");
  b->add_option("--meta", bench.meta, "Declared metadata ID=LEVEL/CLASS");
  b->add_option("--repetitions", bench.repetitions, "Runs per problem and prover")
      ->check(CLI::PositiveNumber);
  b->add_option("--jobs", bench.jobs, "Worker threads")->check(CLI::PositiveNumber);
  b->add_option("--trace-dir", bench.trace_dir, "Write built-in proof records here");

  RankArgs rank;
  auto* r = app.add_subcommand("rank", "Rank provers from a record store");
  r->add_option("--store", rank.store, "Record store")->required();
  r->add_option("--corpus", rank.corpus, "Corpus manifest; enables the oracle cross-check");
  r->add_option("--weights", rank.weights, "Aggregate weights, e.g. scope=1,efficiency=1/2");
  r->add_option("--basis", rank.basis, "Timing basis")->check(CLI::IsMember({"wall", "cpu"}));
  r->add_option("--meta", rank.meta, "Declared metadata ID=LEVEL/CLASS");
  r->add_flag("--tsv", rank.tsv, "Machine-readable output");

  std::string manifest;
  auto* l = app.add_subcommand("list", "List corpus problems and expected statuses");
  l->add_option("--corpus", manifest, "Corpus manifest")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*p) return run_prove(prove);
    if (*c) return run_check(check);
    if (*b) return run_bench(bench);
    if (*r) return run_rank(rank);
    if (*l) return run_list(manifest);
  } catch (const UsageError& e) {
    std::cerr << "gatpbench: " << e.message << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "gatpbench: internal error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
