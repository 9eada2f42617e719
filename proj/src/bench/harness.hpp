#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "bench/records.hpp"
#include "problem/problem.hpp"
#include "prover/outcome.hpp"

namespace gatp::bench {

/// Default per-run time budget in seconds.
inline constexpr double kDefaultTimeoutSeconds = 60.0;

struct RunConfig {
  double timeout_seconds = kDefaultTimeoutSeconds;
  std::vector<prover::ProverDescriptor> provers;
  problem::CorpusManifest corpus;
  unsigned repetitions = 1;
  unsigned parallelism = 1;
  /// Where built-in provers with emit_trace write their traces.
  std::optional<std::filesystem::path> trace_dir;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// OS release and CPU model, e.g. "Linux 6.1.0 x86_64; Intel(R) Core(TM) ...".
std::string host_fingerprint();

/// Runs one prover on one problem. Never throws for prover-side failures;
/// those become Error records.
RunRecord run_single(const problem::CorpusEntry& entry, const prover::ProverDescriptor& desc,
                     const RunConfig& cfg, unsigned repetition = 1);

/// Full cross product problems x provers x repetitions on a bounded worker
/// pool, returned in (problem, prover, repetition) order.
std::vector<RunRecord> run_suite(const RunConfig& cfg);

} // namespace gatp::bench
