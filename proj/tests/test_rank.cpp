#include "doctest.h"
#include "rank/ranking.hpp"

using namespace gatp;
using namespace gatp::rank;
using bench::RunRecord;
using prover::ProverDescriptor;

namespace {

problem::CorpusManifest corpus_of(std::size_t n, std::size_t non_theorems = 0) {
  problem::CorpusManifest c;
  for (std::size_t i = 0; i < n; ++i) {
    problem::CorpusEntry e;
    e.id = "P" + std::to_string(i);
    e.expected = i < n - non_theorems ? problem::ExpectedStatus::Proved
                                      : problem::ExpectedStatus::NotATheorem;
    c.entries.push_back(e);
  }
  return c;
}

RunRecord rec(const std::string& problem, const std::string& prover, Status s, double wall,
              unsigned rep = 1) {
  RunRecord r;
  r.problem_id = problem;
  r.prover_id = prover;
  r.repetition = rep;
  r.status = s;
  r.wall_micros = bench::to_micros(wall);
  r.cpu_micros = r.wall_micros / 2;
  r.host_fingerprint = "host";
  return r;
}

std::vector<RunRecord> all_proved(const std::string& prover, std::size_t n, double wall) {
  std::vector<RunRecord> rs;
  for (std::size_t i = 0; i < n; ++i)
    rs.push_back(rec("P" + std::to_string(i), prover, Status::Proved, wall));
  return rs;
}

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::vector<std::string> order(const std::vector<RankEntry>& rows) {
  std::vector<std::string> out;
  for (const auto& r : rows) out.push_back(r.prover_id);
  return out;
}

} // namespace

TEST_CASE("efficiency classes") {
  CHECK(classify_time(0.016, Status::Proved) == EfficiencyClass::Good);
  CHECK(classify_time(1.5, Status::Proved) == EfficiencyClass::Good);
  CHECK(classify_time(1.500001, Status::Proved) == EfficiencyClass::Fair);
  CHECK(classify_time(2.9, Status::Proved) == EfficiencyClass::Fair);
  CHECK(classify_time(3.0, Status::Proved) == EfficiencyClass::Fair);
  CHECK(classify_time(3.2, Status::Proved) == EfficiencyClass::Unsuitable);
  CHECK(classify_time(0.1, Status::Timeout) == EfficiencyClass::Undecided);
  CHECK(classify_time(0.1, Status::Unproved) == EfficiencyClass::Undecided);
  CHECK(classify_time(0.1, Status::Error) == EfficiencyClass::Undecided);
  // monotone in time
  int last = 0;
  for (double t = 0; t < 10; t += 0.01) {
    int c = static_cast<int>(classify_time(t, Status::Proved));
    CHECK(c >= last);
    last = c;
  }
}

TEST_CASE("readability levels") {
  CHECK(ReadabilityLevel(1).value() == 1);
  CHECK_THROWS_AS(ReadabilityLevel(0), std::invalid_argument);
  CHECK_THROWS_AS(ReadabilityLevel(6), std::invalid_argument);
  CHECK(!ReadabilityLevel(5).description().empty());
}

TEST_CASE("de Bruijn factor") {
  CHECK(de_bruijn_factor(1000, 4000) == q(1, 4));
  CHECK(de_bruijn_factor(777, 777) == 1);
  CHECK(de_bruijn_factor(4000, 1000) == 4);
  CHECK(de_bruijn_factor(3, 7) * de_bruijn_factor(7, 3) == 1);
  CHECK_THROWS_AS(de_bruijn_factor(0, 5), ZeroSize);
  CHECK(compressed_size(std::string(10000, 'a')) < 100);
}

TEST_CASE("cells and medians") {
  CHECK(median({5, 1, 3}) == 3);
  CHECK(median({4, 1, 3, 2}) == 2);
  auto a = rec("P0", "x", Status::Proved, 1.0, 1);
  auto b = rec("P0", "x", Status::Timeout, 60.0, 2);
  auto c = rec("P0", "x", Status::Proved, 2.0, 3);
  auto cell = summarize_cell({&a, &b, &c}, TimingBasis::Wall);
  CHECK(cell.status == Status::Proved);
  CHECK(cell.median_micros == 1000000);
  auto tie = summarize_cell({&a, &b}, TimingBasis::Wall);
  CHECK(tie.status == Status::Proved);
  CHECK(summarize_cell({&a}, TimingBasis::Cpu).median_micros == 500000);
}

TEST_CASE("quality profiles") {
  auto corpus = corpus_of(6);
  auto full = build_quality_profile(all_proved("a", 6, 0.2), ProverDescriptor::wu("a"), corpus, {});
  CHECK(full.scope_score == 1);
  CHECK(full.count(EfficiencyClass::Good) == 6);
  CHECK(full.readability.value() == 1);
  CHECK(full.oracle_agreement == 1);

  auto rs = all_proved("b", 6, 0.2);
  rs[5].status = Status::Timeout;
  auto five = build_quality_profile(rs, ProverDescriptor::wu("b"), corpus, {});
  CHECK(five.scope_score == q(5, 6));
  CHECK(five.count(EfficiencyClass::Undecided) == 1);

  OracleVerdicts oracle{{"P0", false}, {"P1", true}};
  auto checked = build_quality_profile(all_proved("a", 6, 0.2), ProverDescriptor::wu("a"),
                                       corpus, oracle);
  CHECK(checked.contradicted == 1);
  CHECK(checked.oracle_agreement == q(5, 6));

  CHECK_THROWS_AS(build_quality_profile(all_proved("a", 5, 0.2), ProverDescriptor::wu("a"),
                                        corpus, {}),
                  MissingRecords);

  auto mixed = corpus_of(6, 2);
  auto scoped = build_quality_profile(all_proved("a", 6, 0.2), ProverDescriptor::wu("a"), mixed, {});
  CHECK(scoped.scope_total == 4);
  CHECK(scoped.scope_score == 1);

  auto ext = build_quality_profile(
      all_proved("e", 6, 0.2),
      ProverDescriptor::external("e", "x {input}", 3, ReliabilityClass::FormallyVerified),
      corpus, {});
  CHECK(ext.readability.value() == 3);
  CHECK(ext.readability_declared);
}

TEST_CASE("weights") {
  auto w = parse_weights("scope=1,efficiency=1/2");
  CHECK(w.at(Dimension::Scope) == 1);
  CHECK(w.at(Dimension::Efficiency) == q(1, 2));
  CHECK_THROWS_AS(parse_weights("scope=-1"), NegativeWeight);
  CHECK_THROWS_AS(parse_weights("speed=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_weights("scope"), std::invalid_argument);
  CHECK_THROWS_AS(parse_weights("scope=1,scope=2"), std::invalid_argument);
}

TEST_CASE("rankings") {
  auto corpus = corpus_of(6);
  auto rs_b = all_proved("B", 6, 0.1);
  rs_b[0].status = Status::Unproved;
  auto A = build_quality_profile(all_proved("A", 6, 2.0), ProverDescriptor::wu("A"), corpus, {});
  auto B = build_quality_profile(rs_b, ProverDescriptor::wu("B"), corpus, {});

  auto report = rank_report({B, A});
  CHECK(order(report.rankings.at(Dimension::Scope)) == std::vector<std::string>{"A", "B"});
  CHECK(order(report.rankings.at(Dimension::Efficiency)) == std::vector<std::string>{"B", "A"});
  CHECK(!report.aggregate);

  auto C = A;
  C.prover_id = "C";
  auto tied = rank_report({C, A});
  for (auto d : kDimensions)
    CHECK(order(tied.rankings.at(d)) == std::vector<std::string>{"A", "C"});

  auto zero = rank_report({A, B}, Weights{{Dimension::Scope, 0}});
  CHECK(!zero.aggregate);
  CHECK(zero.rankings.size() == 4);

  auto one = rank_report({A, B}, parse_weights("scope=2,efficiency=1"));
  auto scaled = rank_report({A, B}, parse_weights("scope=6,efficiency=3"));
  REQUIRE(one.aggregate);
  CHECK(order(*one.aggregate) == std::vector<std::string>{"A", "B"});
  CHECK(order(*one.aggregate) == order(*scaled.aggregate));
  CHECK((*one.aggregate)[0].score == (*scaled.aggregate)[0].score);

  CHECK(rank_report({A, B}).text() == rank_report({B, A}).text());
  CHECK(rank_report({A, B}).tsv().rfind("# dimension\trank\tprover\tscore\n", 0) == 0);
  CHECK_THROWS_AS(rank_report({}), std::invalid_argument);
}
