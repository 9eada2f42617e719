#include "bench/harness.hpp"

#include <sys/utsname.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "algebra/algebraizer.hpp"
#include "common/deadline.hpp"
#include "common/stopwatch.hpp"
#include "prover/external.hpp"
#include "prover/groebner_prover.hpp"
#include "prover/wu.hpp"

namespace gatp::bench {

using prover::ProverKind;
using prover::Status;

void RunConfig::validate() const {
  if (!(timeout_seconds > 0)) throw std::invalid_argument("timeout must be positive");
  if (provers.empty()) throw std::invalid_argument("at least one prover is required");
  if (repetitions == 0) throw std::invalid_argument("repetitions must be positive");
  if (parallelism == 0) throw std::invalid_argument("parallelism must be positive");
  for (std::size_t i = 0; i < provers.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (provers[i].id == provers[j].id)
        throw std::invalid_argument("duplicate prover id '" + provers[i].id + "'");
}

std::string host_fingerprint() {
  std::string out;
  utsname u{};
  if (::uname(&u) == 0)
    out = std::string(u.sysname) + " " + u.release + " " + u.machine;
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) != 0) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    auto model = line.substr(colon + 1);
    model.erase(0, model.find_first_not_of(' '));
    out += "; " + model;
    break;
  }
  return out.empty() ? "unknown" : out;
}

namespace {

std::int64_t now_micros() {
  using namespace std::chrono;
  return duration_cast<microseconds>(system_clock::now().time_since_epoch()).count();
}

std::filesystem::path temp_problem_file(const problem::Problem& p) {
  auto dir = std::filesystem::temp_directory_path();
  std::string templ = (dir / ("gatpbench-" + p.id + "-XXXXXX.geo")).string();
  int fd = ::mkstemps(templ.data(), 4);
  if (fd < 0) throw IoError("cannot create temporary problem file");
  std::string text = problem::render_problem(p);
  bool ok = ::write(fd, text.data(), text.size()) == static_cast<ssize_t>(text.size());
  ::close(fd);
  if (!ok) throw IoError("cannot write temporary problem file");
  return templ;
}

} // namespace

RunRecord run_single(const problem::CorpusEntry& entry, const prover::ProverDescriptor& desc,
                     const RunConfig& cfg, unsigned repetition) {
  static const std::string host = host_fingerprint();
  RunRecord rec;
  rec.problem_id = entry.id;
  rec.prover_id = desc.id;
  rec.repetition = repetition;
  rec.host_fingerprint = host;
  rec.started_at_micros = now_micros();

  Stopwatch clock;
  const auto deadline = Deadline::after(std::chrono::duration<double>(cfg.timeout_seconds));
  prover::ProofOutcome outcome;
  bool child_cpu = false;
  try {
    if (desc.kind == ProverKind::External) {
      auto file = temp_problem_file(entry.problem);
      try {
        outcome = prover::external_prove(desc, file, deadline);
      } catch (...) {
        std::filesystem::remove(file);
        throw;
      }
      std::filesystem::remove(file);
      child_cpu = true;
    } else {
      auto sys = algebra::algebraize(entry.problem);
      outcome = desc.kind == ProverKind::BuiltinWu
                    ? prover::wu_prove(sys, deadline, desc.emit_trace)
                    : prover::groebner_prove(sys, deadline, desc.mode, desc.emit_trace);
    }
  } catch (const std::exception& e) {
    outcome = prover::ProofOutcome{};
    outcome.status = Status::Error;
    outcome.message = e.what();
  }
  rec.wall_micros = to_micros(clock.wall_seconds());
  rec.cpu_micros = to_micros(child_cpu ? outcome.cpu_seconds : clock.cpu_seconds());
  rec.status = outcome.status;
  rec.ndg_count = static_cast<unsigned>(outcome.ndg_conditions.size());

  if (cfg.trace_dir && desc.emit_trace && desc.kind != ProverKind::External) {
    std::filesystem::create_directories(*cfg.trace_dir);
    auto path = *cfg.trace_dir /
                (entry.id + "." + desc.id + "." + std::to_string(repetition) + ".trace");
    std::ofstream out(path, std::ios::binary);
    out << "status: " << prover::to_string(outcome.status) << "\n";
    for (const auto& n : outcome.ndg_text) out << "ndg: " << n << "\n";
    if (outcome.trace) out << *outcome.trace;
    if (!outcome.message.empty()) out << "error: " << outcome.message << "\n";
    if (out) rec.trace_path = path.string();
  }
  return rec;
}

std::vector<RunRecord> run_suite(const RunConfig& cfg) {
  cfg.validate();
  struct Job {
    const problem::CorpusEntry* entry;
    const prover::ProverDescriptor* desc;
    unsigned repetition;
  };
  std::vector<Job> jobs;
  for (const auto& e : cfg.corpus.entries)
    for (const auto& d : cfg.provers)
      for (unsigned r = 1; r <= cfg.repetitions; ++r) jobs.push_back({&e, &d, r});

  std::vector<RunRecord> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++)
      out[i] = run_single(*jobs[i].entry, *jobs[i].desc, cfg, jobs[i].repetition);
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(cfg.parallelism, std::max<std::size_t>(jobs.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::stable_sort(out.begin(), out.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.problem_id, a.prover_id, a.repetition) <
           std::tie(b.problem_id, b.prover_id, b.repetition);
  });
  return out;
}

} // namespace gatp::bench
