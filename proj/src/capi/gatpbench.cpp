#include "gatpbench/gatpbench.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <new>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra/algebraizer.hpp"
#include "bench/harness.hpp"
#include "bench/records.hpp"
#include "common/deadline.hpp"
#include "problem/problem.hpp"
#include "prover/external.hpp"
#include "prover/groebner_prover.hpp"
#include "prover/oracle.hpp"
#include "prover/outcome.hpp"
#include "prover/wu.hpp"
#include "rank/ranking.hpp"

using namespace gatp;

struct gatp_problem {
  problem::Problem problem;
  std::string rendered;
  std::vector<std::string> warnings;
};

struct gatp_outcome {
  prover::ProofOutcome outcome;
};

struct gatp_check {
  prover::CheckResult result;
  std::string report;
};

struct gatp_corpus {
  problem::CorpusManifest manifest;
  std::vector<std::string> paths;
  std::string hash;
};

struct gatp_bench {
  bench::RunConfig config;
};

struct gatp_rank_request {
  std::string store;
  const gatp_corpus* corpus = nullptr;
  std::optional<rank::Weights> weights;
  rank::TimingBasis basis = rank::TimingBasis::Wall;
  std::size_t oracle_samples = 100;
  std::uint64_t oracle_seed = 1;
  std::map<std::string, std::pair<int, prover::ReliabilityClass>> declared;
};

struct gatp_report {
  std::string text;
  std::string tsv;
};

namespace {

struct LastError {
  std::string message;
  std::size_t line = 0;
  std::size_t column = 0;
};

thread_local LastError last_error;

gatp_error fail(gatp_error code, std::string message, std::size_t line = 0,
                std::size_t column = 0) {
  last_error = {std::move(message), line, column};
  return code;
}

gatp_error ok() {
  last_error = {};
  return GATP_OK;
}

// Maps whatever the core throws to an error code.
gatp_error translate() {
  try {
    throw;
  } catch (const problem::ParseError& e) {
    return fail(GATP_ERR_PARSE, e.what(), e.line, e.column);
  } catch (const problem::CorpusError& e) {
    return fail(GATP_ERR_CORPUS, e.what());
  } catch (const algebra::AlgebraizeError& e) {
    return fail(GATP_ERR_ALGEBRAIZE, e.what());
  } catch (const prover::DegenerateExhausted& e) {
    return fail(GATP_ERR_DEGENERATE_EXHAUSTED, e.what());
  } catch (const bench::CorruptRecord& e) {
    return fail(GATP_ERR_CORRUPT_RECORD, e.what());
  } catch (const rank::MissingRecords& e) {
    return fail(GATP_ERR_MISSING_RECORDS, e.what());
  } catch (const rank::NegativeWeight& e) {
    return fail(GATP_ERR_NEGATIVE_WEIGHT, e.what());
  } catch (const prover::SpawnFailure& e) {
    return fail(GATP_ERR_SPAWN, e.what());
  } catch (const IoError& e) {
    return fail(GATP_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(GATP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(GATP_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GATP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GATP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GATP_ERR_INTERNAL, "unknown failure");
  }
}

gatp_error null_argument(const char* what) {
  return fail(GATP_ERR_INVALID_ARGUMENT, std::string(what) + " is null");
}

gatp_problem* wrap(problem::Problem p) {
  auto h = std::make_unique<gatp_problem>();
  h->rendered = problem::render_problem(p);
  for (const auto& w : problem::validate_problem(p))
    h->warnings.push_back(std::string(problem::to_string(w.kind)) + ": " + w.message);
  h->problem = std::move(p);
  return h.release();
}

prover::ReliabilityClass to_core(gatp_reliability r) {
  switch (r) {
  case GATP_FORMALLY_VERIFIED: return prover::ReliabilityClass::FormallyVerified;
  case GATP_EXTENSIVELY_TESTED: return prover::ReliabilityClass::ExtensivelyTested;
  case GATP_UNVERIFIED: return prover::ReliabilityClass::Unverified;
  }
  throw std::invalid_argument("unknown reliability class");
}

prover::GroebnerMode to_core(gatp_groebner_mode m) {
  switch (m) {
  case GATP_GROEBNER_GENERIC: return prover::GroebnerMode::Generic;
  case GATP_GROEBNER_STRICT: return prover::GroebnerMode::Strict;
  }
  throw std::invalid_argument("unknown groebner mode");
}

Deadline budget(double seconds) {
  if (!(seconds > 0)) throw std::invalid_argument("timeout must be positive");
  return Deadline::after(std::chrono::duration<double>(seconds));
}

bool known_id(const std::vector<prover::ProverDescriptor>& ps, const std::string& id) {
  return std::any_of(ps.begin(), ps.end(), [&](const auto& p) { return p.id == id; });
}

// Conditions Wu's method would report; just the constructor hints when the
// hypotheses admit no chain.
std::vector<poly::Polynomial> wu_conditions(const algebra::PolynomialSystem& sys) {
  try {
    return prover::nondegeneracy_conditions(sys, prover::wu_triangulate(sys));
  } catch (const prover::InconsistentSystem&) {
    return sys.ndg_hints;
  }
}

// Store ids carry no kind, so built-ins are recognized by their CLI names.
prover::ProverDescriptor describe(const std::string& id, const gatp_rank_request& req) {
  if (auto it = req.declared.find(id); it != req.declared.end())
    return prover::ProverDescriptor::external(id, "{input}", it->second.first, it->second.second);
  if (id == "wu") return prover::ProverDescriptor::wu(id);
  if (id == "gbm") return prover::ProverDescriptor::groebner(id);
  if (id == "gbm-strict") return prover::ProverDescriptor::groebner(id, prover::GroebnerMode::Strict);
  auto d = prover::ProverDescriptor::external(id, "{input}");
  d.readability_declared = false;
  return d;
}

} // namespace

extern "C" {

const char* gatp_version(void) { return GATPBENCH_VERSION; }

double gatp_default_timeout(void) { return bench::kDefaultTimeoutSeconds; }

const char* gatp_error_name(gatp_error code) {
  switch (code) {
  case GATP_OK: return "ok";
  case GATP_ERR_INVALID_ARGUMENT: return "invalid argument";
  case GATP_ERR_IO: return "i/o error";
  case GATP_ERR_PARSE: return "parse error";
  case GATP_ERR_CORPUS: return "corpus error";
  case GATP_ERR_ALGEBRAIZE: return "degenerate construction";
  case GATP_ERR_DEGENERATE_EXHAUSTED: return "degenerate draws exhausted";
  case GATP_ERR_CORRUPT_RECORD: return "corrupt record";
  case GATP_ERR_MISSING_RECORDS: return "missing records";
  case GATP_ERR_NEGATIVE_WEIGHT: return "negative weight";
  case GATP_ERR_SPAWN: return "spawn failure";
  case GATP_ERR_INTERNAL: return "internal error";
  }
  return "unknown error";
}

const char* gatp_status_name(gatp_status status) {
  switch (status) {
  case GATP_PROVED: return "Proved";
  case GATP_UNPROVED: return "Unproved";
  case GATP_TIMEOUT: return "Timeout";
  case GATP_STATUS_ERROR: return "Error";
  }
  return "Error";
}

const char* gatp_last_error(void) { return last_error.message.c_str(); }
size_t gatp_last_error_line(void) { return last_error.line; }
size_t gatp_last_error_column(void) { return last_error.column; }

// ---------------------------------------------------------------- problems

gatp_error gatp_problem_parse(const char* text, gatp_problem** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  try {
    *out = wrap(problem::parse_problem(text));
    return ok();
  } catch (...) {
    return translate();
  }
}

gatp_error gatp_problem_load(const char* path, gatp_problem** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  try {
    *out = wrap(problem::load_problem(path));
    return ok();
  } catch (...) {
    return translate();
  }
}

void gatp_problem_free(gatp_problem* problem) { delete problem; }

const char* gatp_problem_id(const gatp_problem* p) { return p ? p->problem.id.c_str() : nullptr; }
const char* gatp_problem_render(const gatp_problem* p) { return p ? p->rendered.c_str() : nullptr; }
size_t gatp_problem_step_count(const gatp_problem* p) { return p ? p->problem.steps.size() : 0; }
size_t gatp_problem_conjecture_count(const gatp_problem* p) {
  return p ? p->problem.conjectures.size() : 0;
}
size_t gatp_problem_warning_count(const gatp_problem* p) { return p ? p->warnings.size() : 0; }
const char* gatp_problem_warning(const gatp_problem* p, size_t i) {
  return p && i < p->warnings.size() ? p->warnings[i].c_str() : nullptr;
}

// ----------------------------------------------------------------- proving

void gatp_prove_options_init(gatp_prove_options* o) {
  if (!o) return;
  o->timeout_seconds = bench::kDefaultTimeoutSeconds;
  o->prover = GATP_PROVER_WU;
  o->mode = GATP_GROEBNER_GENERIC;
  o->trace = 0;
}

gatp_error gatp_prove(const gatp_problem* problem, const gatp_prove_options* options,
                      gatp_outcome** out) {
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  *out = nullptr;
  gatp_prove_options o;
  gatp_prove_options_init(&o);
  if (options) o = *options;
  try {
    auto deadline = budget(o.timeout_seconds);
    auto sys = algebra::algebraize(problem->problem);
    auto h = std::make_unique<gatp_outcome>();
    switch (o.prover) {
    case GATP_PROVER_WU: h->outcome = prover::wu_prove(sys, deadline, o.trace != 0); break;
    case GATP_PROVER_GROEBNER:
      h->outcome = prover::groebner_prove(sys, deadline, to_core(o.mode), o.trace != 0);
      break;
    default: return fail(GATP_ERR_INVALID_ARGUMENT, "unknown prover");
    }
    *out = h.release();
    return ok();
  } catch (...) {
    return translate();
  }
}

gatp_error gatp_prove_external(const char* command_template, const char* problem_file,
                               double timeout_seconds, gatp_outcome** out) {
  if (!command_template) return null_argument("command_template");
  if (!problem_file) return null_argument("problem_file");
  if (!out) return null_argument("out");
  *out = nullptr;
  try {
    auto deadline = budget(timeout_seconds);
    auto desc = prover::ProverDescriptor::external("external", command_template);
    auto h = std::make_unique<gatp_outcome>();
    h->outcome = prover::external_prove(desc, problem_file, deadline);
    *out = h.release();
    return ok();
  } catch (...) {
    return translate();
  }
}

void gatp_outcome_free(gatp_outcome* o) { delete o; }

gatp_status gatp_outcome_status(const gatp_outcome* o) {
  if (!o) return GATP_STATUS_ERROR;
  switch (o->outcome.status) {
  case prover::Status::Proved: return GATP_PROVED;
  case prover::Status::Unproved: return GATP_UNPROVED;
  case prover::Status::Timeout: return GATP_TIMEOUT;
  case prover::Status::Error: return GATP_STATUS_ERROR;
  }
  return GATP_STATUS_ERROR;
}

size_t gatp_outcome_ndg_count(const gatp_outcome* o) { return o ? o->outcome.ndg_text.size() : 0; }
const char* gatp_outcome_ndg(const gatp_outcome* o, size_t i) {
  return o && i < o->outcome.ndg_text.size() ? o->outcome.ndg_text[i].c_str() : nullptr;
}
const char* gatp_outcome_trace(const gatp_outcome* o) {
  return o && o->outcome.trace ? o->outcome.trace->c_str() : nullptr;
}
const char* gatp_outcome_message(const gatp_outcome* o) {
  return o ? o->outcome.message.c_str() : nullptr;
}
double gatp_outcome_cpu_seconds(const gatp_outcome* o) { return o ? o->outcome.cpu_seconds : 0; }
double gatp_outcome_wall_seconds(const gatp_outcome* o) { return o ? o->outcome.wall_seconds : 0; }

// ------------------------------------------------------------------ oracle

gatp_error gatp_check_run(const gatp_problem* problem, size_t samples, uint64_t seed,
                          const gatp_outcome* nondegenerate, gatp_check** out) {
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  *out = nullptr;
  if (samples == 0) return fail(GATP_ERR_INVALID_ARGUMENT, "samples must be positive");
  try {
    auto sys = algebra::algebraize(problem->problem);
    std::vector<poly::Polynomial> nonzero;
    if (nondegenerate) nonzero = nondegenerate->outcome.ndg_conditions;
    auto h = std::make_unique<gatp_check>();
    h->result = prover::numeric_check(sys, samples, seed, nonzero);
    std::ostringstream os;
    const auto& r = h->result;
    os << (r.consistent ? "Consistent" : "Counterexample") << "\n";
    os << "samples: " << r.samples_used << "\n";
    os << "resamples: " << r.resamples << "\n";
    if (!r.consistent && r.counterexample) {
      if (r.failing_conclusion) {
        const auto& src = sys.conclusion_source[*r.failing_conclusion];
        os << "failing conjecture: "
           << problem::render_predicate(problem->problem.conjectures[src]) << "\n";
      }
      os << "value: " << gatp::to_string(r.failing_value) << "\n";
      os << prover::describe_model(sys, *r.counterexample);
    }
    h->report = os.str();
    *out = h.release();
    return ok();
  } catch (...) {
    return translate();
  }
}

void gatp_check_free(gatp_check* c) { delete c; }
int gatp_check_consistent(const gatp_check* c) { return c && c->result.consistent ? 1 : 0; }
size_t gatp_check_samples_used(const gatp_check* c) { return c ? c->result.samples_used : 0; }
const char* gatp_check_report(const gatp_check* c) { return c ? c->report.c_str() : nullptr; }

// ------------------------------------------------------------------ corpus

gatp_error gatp_corpus_load(const char* manifest_path, gatp_corpus** out) {
  if (!manifest_path) return null_argument("manifest_path");
  if (!out) return null_argument("out");
  *out = nullptr;
  try {
    auto h = std::make_unique<gatp_corpus>();
    h->manifest = problem::load_corpus(manifest_path);
    for (const auto& e : h->manifest.entries) h->paths.push_back(e.resolved.string());
    h->hash = h->manifest.content_hash();
    *out = h.release();
    return ok();
  } catch (...) {
    return translate();
  }
}

void gatp_corpus_free(gatp_corpus* c) { delete c; }
size_t gatp_corpus_size(const gatp_corpus* c) { return c ? c->manifest.entries.size() : 0; }
const char* gatp_corpus_id(const gatp_corpus* c, size_t i) {
  return c && i < c->manifest.entries.size() ? c->manifest.entries[i].id.c_str() : nullptr;
}
const char* gatp_corpus_expected(const gatp_corpus* c, size_t i) {
  if (!c || i >= c->manifest.entries.size()) return nullptr;
  return problem::to_string(c->manifest.entries[i].expected).data();
}
const char* gatp_corpus_path(const gatp_corpus* c, size_t i) {
  return c && i < c->paths.size() ? c->paths[i].c_str() : nullptr;
}
const char* gatp_corpus_hash(const gatp_corpus* c) { return c ? c->hash.c_str() : nullptr; }

// ------------------------------------------------------------ benchmarking

gatp_bench* gatp_bench_new(void) { return new (std::nothrow) gatp_bench(); }
void gatp_bench_free(gatp_bench* b) { delete b; }

gatp_error gatp_bench_set_timeout(gatp_bench* b, double seconds) {
  if (!b) return null_argument("bench");
  if (!(seconds > 0)) return fail(GATP_ERR_INVALID_ARGUMENT, "timeout must be positive");
  b->config.timeout_seconds = seconds;
  return ok();
}

gatp_error gatp_bench_set_repetitions(gatp_bench* b, unsigned repetitions) {
  if (!b) return null_argument("bench");
  if (repetitions == 0) return fail(GATP_ERR_INVALID_ARGUMENT, "repetitions must be positive");
  b->config.repetitions = repetitions;
  return ok();
}

gatp_error gatp_bench_set_parallelism(gatp_bench* b, unsigned workers) {
  if (!b) return null_argument("bench");
  if (workers == 0) return fail(GATP_ERR_INVALID_ARGUMENT, "parallelism must be positive");
  b->config.parallelism = workers;
  return ok();
}

gatp_error gatp_bench_set_trace_dir(gatp_bench* b, const char* dir) {
  if (!b) return null_argument("bench");
  if (dir && *dir)
    b->config.trace_dir = std::filesystem::path(dir);
  else
    b->config.trace_dir.reset();
  return ok();
}

gatp_error gatp_bench_add_builtin(gatp_bench* b, const char* id, gatp_prover_kind kind,
                                  gatp_groebner_mode mode, int trace) {
  if (!b) return null_argument("bench");
  if (!id || !*id) return fail(GATP_ERR_INVALID_ARGUMENT, "prover id is empty");
  if (known_id(b->config.provers, id))
    return fail(GATP_ERR_INVALID_ARGUMENT, std::string("duplicate prover id '") + id + "'");
  try {
    switch (kind) {
    case GATP_PROVER_WU: b->config.provers.push_back(prover::ProverDescriptor::wu(id, trace != 0)); break;
    case GATP_PROVER_GROEBNER:
      b->config.provers.push_back(prover::ProverDescriptor::groebner(id, to_core(mode), trace != 0));
      break;
    default: return fail(GATP_ERR_INVALID_ARGUMENT, "unknown prover kind");
    }
    return ok();
  } catch (...) {
    return translate();
  }
}

gatp_error gatp_bench_add_external(gatp_bench* b, const char* id, const char* command_template,
                                   int readability_level, gatp_reliability reliability) {
  if (!b) return null_argument("bench");
  if (!id || !*id) return fail(GATP_ERR_INVALID_ARGUMENT, "prover id is empty");
  if (!command_template) return null_argument("command_template");
  if (known_id(b->config.provers, id))
    return fail(GATP_ERR_INVALID_ARGUMENT, std::string("duplicate prover id '") + id + "'");
  try {
    b->config.provers.push_back(prover::ProverDescriptor::external(
        id, command_template, readability_level, to_core(reliability)));
    return ok();
  } catch (...) {
    return translate();
  }
}

gatp_error gatp_bench_run(const gatp_bench* b, const gatp_corpus* corpus, const char* store_path,
                          size_t* records_written) {
  if (!b) return null_argument("bench");
  if (!corpus) return null_argument("corpus");
  if (!store_path) return null_argument("store_path");
  if (records_written) *records_written = 0;
  try {
    auto cfg = b->config;
    cfg.corpus = corpus->manifest;
    cfg.validate();
    if (cfg.trace_dir) std::filesystem::create_directories(*cfg.trace_dir);
    bench::ResultsStore store(store_path);
    auto records = bench::run_suite(cfg);
    store.append(records);
    if (records_written) *records_written = records.size();
    return ok();
  } catch (...) {
    return translate();
  }
}

gatp_error gatp_store_count(const char* store_path, size_t* count) {
  if (!store_path) return null_argument("store_path");
  if (!count) return null_argument("count");
  try {
    *count = bench::ResultsStore(store_path).load().size();
    return ok();
  } catch (...) {
    return translate();
  }
}

// ----------------------------------------------------------------- ranking

gatp_rank_request* gatp_rank_request_new(const char* store_path) {
  if (!store_path) return nullptr;
  auto* r = new (std::nothrow) gatp_rank_request();
  if (r) r->store = store_path;
  return r;
}

void gatp_rank_request_free(gatp_rank_request* r) { delete r; }

gatp_error gatp_rank_request_set_corpus(gatp_rank_request* r, const gatp_corpus* corpus) {
  if (!r) return null_argument("request");
  r->corpus = corpus;
  return ok();
}

gatp_error gatp_rank_request_set_weights(gatp_rank_request* r, const char* weights) {
  if (!r) return null_argument("request");
  if (!weights || !*weights) {
    r->weights.reset();
    return ok();
  }
  try {
    r->weights = rank::parse_weights(weights);
    return ok();
  } catch (...) {
    return translate();
  }
}

gatp_error gatp_rank_request_set_basis(gatp_rank_request* r, gatp_timing_basis basis) {
  if (!r) return null_argument("request");
  switch (basis) {
  case GATP_BASIS_WALL: r->basis = rank::TimingBasis::Wall; return ok();
  case GATP_BASIS_CPU: r->basis = rank::TimingBasis::Cpu; return ok();
  }
  return fail(GATP_ERR_INVALID_ARGUMENT, "unknown timing basis");
}

gatp_error gatp_rank_request_set_oracle(gatp_rank_request* r, size_t samples, uint64_t seed) {
  if (!r) return null_argument("request");
  r->oracle_samples = samples;
  r->oracle_seed = seed;
  return ok();
}

gatp_error gatp_rank_request_declare(gatp_rank_request* r, const char* prover_id,
                                     int readability_level, gatp_reliability reliability) {
  if (!r) return null_argument("request");
  if (!prover_id || !*prover_id) return fail(GATP_ERR_INVALID_ARGUMENT, "prover id is empty");
  try {
    rank::ReadabilityLevel level(readability_level);
    r->declared[prover_id] = {level.value(), to_core(reliability)};
    return ok();
  } catch (...) {
    return translate();
  }
}

gatp_error gatp_rank_run(const gatp_rank_request* r, gatp_report** out) {
  if (!r) return null_argument("request");
  if (!out) return null_argument("out");
  *out = nullptr;
  try {
    if (!std::filesystem::exists(r->store))
      return fail(GATP_ERR_IO, "cannot open results store '" + r->store + "'");
    auto records = bench::ResultsStore(r->store).load();

    problem::CorpusManifest corpus;
    rank::OracleVerdicts oracle;
    rank::Provenance prov;
    prov.basis = r->basis;
    if (r->corpus) {
      corpus = r->corpus->manifest;
      prov.corpus_hash = r->corpus->hash;
      if (r->oracle_samples > 0) {
        for (const auto& e : corpus.entries) {
          try {
            auto sys = algebra::algebraize(e.problem);
            oracle[e.id] =
                prover::numeric_check(sys, r->oracle_samples, r->oracle_seed, wu_conditions(sys))
                    .consistent;
          } catch (const algebra::AlgebraizeError&) {
          } catch (const prover::DegenerateExhausted&) {
          }
        }
      }
    } else {
      std::set<std::string> ids;
      for (const auto& rec : records) ids.insert(rec.problem_id);
      for (const auto& id : ids) {
        problem::CorpusEntry e;
        e.id = id;
        corpus.entries.push_back(std::move(e));
      }
      prov.corpus_hash = "none";
    }

    std::set<std::string> prover_ids, hosts;
    for (const auto& rec : records) {
      prover_ids.insert(rec.prover_id);
      hosts.insert(rec.host_fingerprint);
    }
    prov.host_fingerprints.assign(hosts.begin(), hosts.end());
    prov.record_count = records.size();

    std::vector<rank::QualityProfile> profiles;
    for (const auto& id : prover_ids)
      profiles.push_back(
          rank::build_quality_profile(records, describe(id, *r), corpus, oracle, r->basis));

    auto report = rank::rank_report(profiles, r->weights, prov);
    auto h = std::make_unique<gatp_report>();
    h->text = report.text();
    h->tsv = report.tsv();
    *out = h.release();
    return ok();
  } catch (...) {
    return translate();
  }
}

void gatp_report_free(gatp_report* r) { delete r; }
const char* gatp_report_text(const gatp_report* r) { return r ? r->text.c_str() : nullptr; }
const char* gatp_report_tsv(const gatp_report* r) { return r ? r->tsv.c_str() : nullptr; }

} // extern "C"
