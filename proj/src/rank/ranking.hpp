#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bench/records.hpp"
#include "common/error.hpp"
#include "common/rational.hpp"
#include "problem/problem.hpp"
#include "prover/outcome.hpp"

namespace gatp::rank {

using prover::ReliabilityClass;
using prover::Status;

/// Classroom wait-time bounds: at most 1.5 s is good, at most 3 s fair.
inline constexpr double kGoodSeconds = 1.5;
inline constexpr double kFairSeconds = 3.0;

enum class EfficiencyClass { Good, Fair, Unsuitable, Undecided };

std::string_view to_string(EfficiencyClass c);

/// Both bounds inclusive on the faster class. Anything but Proved is
/// Undecided.
EfficiencyClass classify_time(double seconds, Status status);

/// Readability scale, 1 (no readable proof) to 5 (synthetic proof with
/// natural-language and visual renderings).
class ReadabilityLevel {
public:
  explicit ReadabilityLevel(int level);
  int value() const { return level_; }
  std::string_view description() const;
  auto operator<=>(const ReadabilityLevel&) const = default;

private:
  int level_;
};

class ZeroSize : public Error {
public:
  ZeroSize() : Error("proof sizes must be positive") {}
};

/// informal / formal, exactly. With `compressed` the caller passes sizes
/// measured after compression; the ratio is the same formula.
Rational de_bruijn_factor(std::uint64_t informal_bytes, std::uint64_t formal_bytes,
                          bool compressed = false);

/// zlib (deflate, level 9) size of the given bytes.
std::uint64_t compressed_size(std::string_view bytes);

enum class TimingBasis { Wall, Cpu };

/// Per-problem oracle outcome: true for Consistent, false for a
/// counterexample.
using OracleVerdicts = std::map<std::string, bool>;

struct QualityProfile {
  std::string prover_id;

  // Scope
  std::size_t proved = 0;
  std::size_t scope_total = 0;
  Rational scope_score; // proved / scope_total, 0 for an empty universe

  // Efficiency
  std::map<EfficiencyClass, std::size_t> histogram;
  std::optional<std::int64_t> median_micros; // over proved problems

  // Readability
  ReadabilityLevel readability{1};
  bool readability_declared = false;
  std::optional<Rational> de_bruijn;

  // Reliability
  ReliabilityClass reliability = ReliabilityClass::Unverified;
  std::size_t proved_verdicts = 0;
  std::size_t contradicted = 0;
  Rational oracle_agreement{1};

  std::size_t count(EfficiencyClass c) const {
    auto it = histogram.find(c);
    return it == histogram.end() ? 0 : it->second;
  }
};

class MissingRecords : public Error {
public:
  MissingRecords(const std::string& prover, const std::string& problem)
      : Error("no record for prover '" + prover + "' on problem '" + problem + "'"),
        prover(prover), problem(problem) {}
  std::string prover;
  std::string problem;
};

/// Repetitions of one (problem, prover) cell collapsed to a single status
/// (most frequent, ties to the better status) and the median time of the
/// repetitions carrying that status.
struct CellSummary {
  Status status;
  std::int64_t median_micros;
};

CellSummary summarize_cell(const std::vector<const bench::RunRecord*>& reps, TimingBasis basis);

/// Median of the values; the lower middle for even counts so the result is
/// always an observed value.
std::int64_t median(std::vector<std::int64_t> values);

QualityProfile build_quality_profile(const std::vector<bench::RunRecord>& records,
                                     const prover::ProverDescriptor& desc,
                                     const problem::CorpusManifest& corpus,
                                     const OracleVerdicts& oracle,
                                     TimingBasis basis = TimingBasis::Wall);

enum class Dimension { Scope, Efficiency, Readability, Reliability };

inline constexpr Dimension kDimensions[] = {Dimension::Scope, Dimension::Efficiency,
                                            Dimension::Readability, Dimension::Reliability};

std::string_view to_string(Dimension d);
std::optional<Dimension> parse_dimension(std::string_view s);

class NegativeWeight : public Error {
public:
  explicit NegativeWeight(Dimension d)
      : Error("negative weight for " + std::string(to_string(d))), dimension(d) {}
  Dimension dimension;
};

using Weights = std::map<Dimension, Rational>;

/// Parses "scope=1,efficiency=1/2". Throws std::invalid_argument on bad
/// syntax or an unknown dimension and NegativeWeight on a negative value.
Weights parse_weights(std::string_view text);

struct RankEntry {
  std::size_t position; // 1-based; ties broken by prover id
  std::string prover_id;
  std::string score;
};

struct Provenance {
  TimingBasis basis = TimingBasis::Wall;
  std::string corpus_hash;
  std::vector<std::string> host_fingerprints;
  std::size_t record_count = 0;
};

struct RankingReport {
  std::map<Dimension, std::vector<RankEntry>> rankings;
  std::optional<std::vector<RankEntry>> aggregate;
  Weights weights;
  Provenance provenance;
  std::vector<QualityProfile> profiles; // sorted by prover id

  /// Aligned human-readable tables.
  std::string text() const;
  /// One line per (dimension, rank, prover, score).
  std::string tsv() const;
};

/// Independent per-dimension rankings; the weighted aggregate of normalized
/// ranks only when some weight is positive.
RankingReport rank_report(const std::vector<QualityProfile>& profiles,
                          const std::optional<Weights>& weights = std::nullopt,
                          Provenance provenance = {});

} // namespace gatp::rank
