#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bench/harness.hpp"
#include "bench/records.hpp"
#include "doctest.h"

using namespace gatp;
using namespace gatp::bench;
using prover::ProverDescriptor;
using prover::Status;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& stem) {
  static int n = 0;
  return fs::temp_directory_path() /
         ("gatp-bench-" + std::to_string(::getpid()) + "-" + std::to_string(n++) + stem);
}

RunRecord sample(int i) {
  RunRecord r;
  r.problem_id = "GEO" + std::to_string(1000 + i);
  r.prover_id = i % 2 ? "wu" : "ext \"q\"";
  r.repetition = 1 + i % 3;
  r.status = static_cast<Status>(i % 4);
  r.cpu_micros = 123456 * i;
  r.wall_micros = 234567 * i + 1;
  r.ndg_count = i % 5;
  if (i % 3 == 0) r.trace_path = "/tmp/t\t" + std::to_string(i);
  r.started_at_micros = 1760000000000000LL + i;
  r.host_fingerprint = "Linux\\x86 \"box\"";
  return r;
}

problem::CorpusManifest small_corpus(std::size_t n) {
  auto all = problem::load_corpus(fs::path(GATP_CORPUS_DIR) / "corpus.tsv");
  all.entries.resize(std::min(n, all.entries.size()));
  return all;
}

std::string strip_timing(const std::vector<RunRecord>& rs) {
  std::ostringstream out;
  for (auto r : rs) out << r.problem_id << ' ' << r.prover_id << ' ' << r.repetition << ' '
                        << prover::to_string(r.status) << ' ' << r.ndg_count << '\n';
  return out.str();
}

} // namespace

TEST_CASE("timestamps") {
  CHECK(format_timestamp(0) == "1970-01-01T00:00:00.000000Z");
  auto t = 1760518200000125LL;
  CHECK(parse_timestamp(format_timestamp(t)) == t);
  CHECK_FALSE(parse_timestamp("yesterday"));
}

TEST_CASE("record lines round trip") {
  for (int i = 0; i < 50; ++i) {
    auto r = sample(i);
    CHECK(parse_record(format_record(r), 1) == r);
  }
  CHECK(format_record(sample(2)).find("0.246912") != std::string::npos);
  CHECK_THROWS_AS(parse_record("GEO1\twu\t1\tProved", 4), CorruptRecord);
  CHECK_THROWS_AS(parse_record(format_record(sample(1)).replace(0, 0, "\t"), 2), CorruptRecord);
}

TEST_CASE("results store") {
  auto path = temp_path(".tsv");
  ResultsStore store(path);
  CHECK(store.load().empty());

  std::vector<RunRecord> rs;
  for (int i = 0; i < 12; ++i) rs.push_back(sample(i));
  store.append(rs);
  CHECK(store.load() == rs);

  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == kRecordHeader);

  SUBCASE("empty file") {
    std::ofstream(path, std::ios::trunc).close();
    CHECK(ResultsStore(path).load().empty());
  }
  SUBCASE("truncated final line") {
    std::ofstream(path, std::ios::app) << "GEO9\twu\t1\tPro";
    try {
      ResultsStore(path).load();
      FAIL("expected CorruptRecord");
    } catch (const CorruptRecord& e) {
      CHECK(e.line == 14);
    }
  }
  fs::remove(path);
}

TEST_CASE("config validation") {
  RunConfig cfg;
  CHECK(cfg.timeout_seconds == 60.0);
  cfg.provers = {ProverDescriptor::wu()};
  CHECK_NOTHROW(cfg.validate());
  cfg.timeout_seconds = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.timeout_seconds = 1;
  cfg.repetitions = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.repetitions = 1;
  cfg.provers.push_back(ProverDescriptor::wu());
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument); // duplicate id
}

TEST_CASE("single runs") {
  RunConfig cfg;
  cfg.corpus = small_corpus(1);
  const auto& e = cfg.corpus.entries[0];

  auto r = run_single(e, ProverDescriptor::wu(), cfg);
  CHECK(r.status == Status::Proved);
  CHECK(r.wall_seconds() < 1.5);
  CHECK(!r.host_fingerprint.empty());

  auto bad = run_single(e, ProverDescriptor::external("broken", "exit 3 # {input}"), cfg);
  CHECK(bad.status == Status::Error);

  cfg.timeout_seconds = 0.3;
  auto slow = run_single(e, ProverDescriptor::external("slow", "sleep 10; cat {input}"), cfg);
  CHECK(slow.status == Status::Timeout);
  CHECK(slow.wall_seconds() < 0.3 + 0.5);
}

TEST_CASE("traces are written when requested") {
  RunConfig cfg;
  cfg.corpus = small_corpus(2);
  cfg.trace_dir = temp_path("-traces");
  fs::create_directories(*cfg.trace_dir);
  cfg.provers = {ProverDescriptor::wu("wu", true)};
  auto rs = run_suite(cfg);
  REQUIRE(rs.size() == 2);
  for (const auto& r : rs) {
    REQUIRE(r.trace_path);
    CHECK(fs::file_size(*r.trace_path) > 0);
  }
  fs::remove_all(*cfg.trace_dir);
}

TEST_CASE("suite cardinality, order and determinism") {
  RunConfig cfg;
  cfg.corpus = small_corpus(6);
  cfg.provers = {ProverDescriptor::wu(), ProverDescriptor::groebner()};
  auto one = run_suite(cfg);
  CHECK(one.size() == 12);
  CHECK(std::is_sorted(one.begin(), one.end(), record_order));

  cfg.parallelism = 4;
  auto four = run_suite(cfg);
  CHECK(strip_timing(one) == strip_timing(four));

  cfg.repetitions = 3;
  auto three = run_suite(cfg);
  CHECK(three.size() == 36);
  std::map<std::pair<std::string, std::string>, int> cells;
  for (const auto& r : three) ++cells[{r.problem_id, r.prover_id}];
  for (const auto& [k, n] : cells) CHECK(n == 3);
}
