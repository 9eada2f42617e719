#include "bench/records.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gatp::bench {

const char* const kRecordHeader =
    "# problem_id\tprover_id\trepetition\tstatus\tcpu_seconds\twall_seconds\tndg_count"
    "\tstarted_at\thost_fingerprint\t[trace_path]";

namespace {

std::string format_seconds(std::int64_t micros) {
  char buf[48];
  const char* sign = micros < 0 ? "-" : "";
  std::int64_t m = micros < 0 ? -micros : micros;
  std::snprintf(buf, sizeof buf, "%s%" PRId64 ".%06" PRId64, sign, m / 1000000, m % 1000000);
  return buf;
}

// Exactly six decimals, optionally negative.
std::optional<std::int64_t> parse_seconds(std::string_view s) {
  bool neg = !s.empty() && s.front() == '-';
  if (neg) s.remove_prefix(1);
  auto dot = s.find('.');
  if (dot == std::string_view::npos || s.size() - dot - 1 != 6 || dot == 0) return std::nullopt;
  std::int64_t whole = 0, frac = 0;
  auto r1 = std::from_chars(s.data(), s.data() + dot, whole);
  auto r2 = std::from_chars(s.data() + dot + 1, s.data() + s.size(), frac);
  if (r1.ec != std::errc() || r1.ptr != s.data() + dot) return std::nullopt;
  if (r2.ec != std::errc() || r2.ptr != s.data() + s.size()) return std::nullopt;
  std::int64_t v = whole * 1000000 + frac;
  return neg ? -v : v;
}

template <typename T>
std::optional<T> parse_uint(std::string_view s) {
  T v{};
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\t': out += "\\t"; break;
    case '\n': out += "\\n"; break;
    default: out += c;
    }
  }
  return out + "\"";
}

std::optional<std::string> unquote(std::string_view s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::nullopt;
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    char c = s[i];
    if (c == '"') return std::nullopt;
    if (c != '\\') {
      out += c;
      continue;
    }
    if (i + 2 >= s.size()) return std::nullopt;
    char e = s[++i];
    switch (e) {
    case '"': out += '"'; break;
    case '\\': out += '\\'; break;
    case 't': out += '\t'; break;
    case 'n': out += '\n'; break;
    default: return std::nullopt;
    }
  }
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

bool valid_field(std::string_view s) {
  return !s.empty() && s.find_first_of("\t\n\r") == std::string_view::npos;
}

} // namespace

std::int64_t to_micros(double seconds) { return std::llround(seconds * 1e6); }

std::string format_timestamp(std::int64_t micros) {
  using namespace std::chrono;
  const sys_time<microseconds> tp{microseconds(micros)};
  const auto day = floor<days>(tp);
  const year_month_day ymd{day};
  const auto tod = tp - day;
  const auto h = duration_cast<hours>(tod);
  const auto m = duration_cast<minutes>(tod - h);
  const auto s = duration_cast<seconds>(tod - h - m);
  const auto us = duration_cast<microseconds>(tod - h - m - s);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02lldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(h.count()), static_cast<int>(m.count()),
                static_cast<long long>(s.count()));
  std::string out(buf);
  char frac[16];
  std::snprintf(frac, sizeof frac, ".%06lld", static_cast<long long>(us.count()));
  out.insert(out.size() - 1, frac);
  return out;
}

std::optional<std::int64_t> parse_timestamp(std::string_view t) {
  // YYYY-MM-DDTHH:MM:SS.ffffffZ
  if (t.size() != 27 || t[4] != '-' || t[7] != '-' || t[10] != 'T' || t[13] != ':' ||
      t[16] != ':' || t[19] != '.' || t[26] != 'Z')
    return std::nullopt;
  auto num = [&](std::size_t pos, std::size_t len) { return parse_uint<unsigned>(t.substr(pos, len)); };
  auto y = num(0, 4), mo = num(5, 2), d = num(8, 2), h = num(11, 2), mi = num(14, 2),
       s = num(17, 2), us = num(20, 6);
  if (!y || !mo || !d || !h || !mi || !s || !us) return std::nullopt;
  using namespace std::chrono;
  const year_month_day ymd{year(static_cast<int>(*y)), month(*mo), day(*d)};
  if (!ymd.ok() || *h > 23 || *mi > 59 || *s > 59) return std::nullopt;
  const auto tp = sys_days(ymd) + hours(*h) + minutes(*mi) + seconds(*s) + microseconds(*us);
  return duration_cast<microseconds>(tp.time_since_epoch()).count();
}

std::string format_record(const RunRecord& r) {
  std::string out;
  out += r.problem_id;
  out += '\t';
  out += r.prover_id;
  out += '\t';
  out += std::to_string(r.repetition);
  out += '\t';
  out += prover::to_string(r.status);
  out += '\t';
  out += format_seconds(r.cpu_micros);
  out += '\t';
  out += format_seconds(r.wall_micros);
  out += '\t';
  out += std::to_string(r.ndg_count);
  out += '\t';
  out += format_timestamp(r.started_at_micros);
  out += '\t';
  out += quote(r.host_fingerprint);
  if (r.trace_path) {
    out += '\t';
    out += quote(*r.trace_path);
  }
  return out;
}

RunRecord parse_record(std::string_view line, std::size_t line_no) {
  auto fields = split_tabs(line);
  if (fields.size() != 9 && fields.size() != 10)
    throw CorruptRecord(line_no, "expected 9 or 10 tab-separated fields, found " +
                                     std::to_string(fields.size()));
  auto bad = [line_no](const std::string& what) { return CorruptRecord(line_no, what); };
  RunRecord r;
  if (!valid_field(fields[0]) || !valid_field(fields[1])) throw bad("empty identifier");
  r.problem_id = fields[0];
  r.prover_id = fields[1];
  auto rep = parse_uint<unsigned>(fields[2]);
  if (!rep || *rep == 0) throw bad("invalid repetition '" + std::string(fields[2]) + "'");
  r.repetition = *rep;
  auto status = prover::parse_status(fields[3]);
  if (!status) throw bad("invalid status '" + std::string(fields[3]) + "'");
  r.status = *status;
  auto cpu = parse_seconds(fields[4]);
  auto wall = parse_seconds(fields[5]);
  if (!cpu || !wall) throw bad("invalid time field");
  r.cpu_micros = *cpu;
  r.wall_micros = *wall;
  auto ndg = parse_uint<unsigned>(fields[6]);
  if (!ndg) throw bad("invalid ndg_count '" + std::string(fields[6]) + "'");
  r.ndg_count = *ndg;
  auto ts = parse_timestamp(fields[7]);
  if (!ts) throw bad("invalid timestamp '" + std::string(fields[7]) + "'");
  r.started_at_micros = *ts;
  auto host = unquote(fields[8]);
  if (!host) throw bad("invalid host fingerprint");
  r.host_fingerprint = std::move(*host);
  if (fields.size() == 10) {
    auto trace = unquote(fields[9]);
    if (!trace) throw bad("invalid trace path");
    r.trace_path = std::move(*trace);
  }
  return r;
}

std::vector<RunRecord> parse_records(std::string_view text) {
  std::vector<RunRecord> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    ++line_no;
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos)
      throw CorruptRecord(line_no, "truncated final line (no newline)");
    std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    if (line.empty() || line.front() == '#') continue;
    out.push_back(parse_record(line, line_no));
  }
  return out;
}

ResultsStore::ResultsStore(std::filesystem::path path) : path_(std::move(path)) {}

void ResultsStore::append(const RunRecord& r) { append(std::span<const RunRecord>(&r, 1)); }

void ResultsStore::append(std::span<const RunRecord> rs) {
  std::lock_guard lock(mutex_);
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path_, ec) ||
                     std::filesystem::file_size(path_, ec) == 0;
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw IoError("cannot open record store " + path_.string());
  if (fresh) out << kRecordHeader << '\n';
  for (const auto& r : rs) out << format_record(r) << '\n';
  out.flush();
  if (!out) throw IoError("write failed on " + path_.string());
}

std::vector<RunRecord> ResultsStore::load() const {
  std::lock_guard lock(mutex_);
  std::ifstream in(path_, std::ios::binary);
  if (!in) {
    if (!std::filesystem::exists(path_)) return {};
    throw IoError("cannot read record store " + path_.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_records(ss.str());
}

bool record_order(const RunRecord& a, const RunRecord& b) {
  return std::tie(a.problem_id, a.prover_id, a.repetition, a.started_at_micros) <
         std::tie(b.problem_id, b.prover_id, b.repetition, b.started_at_micros);
}

} // namespace gatp::bench
