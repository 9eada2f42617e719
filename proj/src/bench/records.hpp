#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "common/error.hpp"
#include "prover/outcome.hpp"

namespace gatp::bench {

/// One (problem, prover, repetition) measurement. Times are kept in whole
/// microseconds so that the six-decimal file form is lossless.
struct RunRecord {
  std::string problem_id;
  std::string prover_id;
  unsigned repetition = 1;
  prover::Status status = prover::Status::Error;
  std::int64_t cpu_micros = 0;
  std::int64_t wall_micros = 0;
  unsigned ndg_count = 0;
  std::optional<std::string> trace_path;
  std::int64_t started_at_micros = 0; // since the Unix epoch, UTC
  std::string host_fingerprint;

  double cpu_seconds() const { return static_cast<double>(cpu_micros) * 1e-6; }
  double wall_seconds() const { return static_cast<double>(wall_micros) * 1e-6; }

  bool operator==(const RunRecord&) const = default;
};

std::int64_t to_micros(double seconds);

/// ISO-8601 UTC with microseconds, e.g. 2026-10-15T08:30:00.000125Z.
std::string format_timestamp(std::int64_t micros_since_epoch);
std::optional<std::int64_t> parse_timestamp(std::string_view text);

class CorruptRecord : public Error {
public:
  CorruptRecord(std::size_t line, const std::string& detail)
      : Error("line " + std::to_string(line) + ": " + detail), line(line) {}
  std::size_t line;
};

extern const char* const kRecordHeader;

/// Tab-separated record line without the trailing newline. The trace path,
/// when present, follows as a tenth column.
std::string format_record(const RunRecord& r);
RunRecord parse_record(std::string_view line, std::size_t line_no);

/// Parses a whole store file body.
std::vector<RunRecord> parse_records(std::string_view text);

/// Append-only record file. Appends from several threads are serialized.
class ResultsStore {
public:
  explicit ResultsStore(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }

  /// Writes the header first when the file is new or empty.
  void append(const RunRecord& r);
  void append(std::span<const RunRecord> rs);

  /// Missing file loads as an empty store.
  std::vector<RunRecord> load() const;

private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
};

/// Sort key used everywhere records are listed.
bool record_order(const RunRecord& a, const RunRecord& b);

} // namespace gatp::bench
