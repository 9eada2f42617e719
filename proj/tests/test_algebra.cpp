#include <random>

#include "algebra/algebraizer.hpp"
#include "doctest.h"
#include "prover/oracle.hpp"

using namespace gatp;
using namespace gatp::algebra;
using problem::parse_problem;

namespace {

const char* kMidpoint = R"(problem GEO0001
fixed A 0 0
free B
free C
midpoint M A B
midpoint N A C
conjecture parallel M N B C
)";

Polynomial by_name(const PolynomialSystem& sys, const std::string& name) {
  for (Var v = 0; v < sys.variables.size(); ++v)
    if (sys.var_name(v) == name) return Polynomial::variable(v);
  FAIL("no variable " << name);
  return {};
}

} // namespace

TEST_CASE("midpoint theorem system") {
  auto sys = algebraize(parse_problem(kMidpoint));
  CHECK(sys.params.size() == 4);
  CHECK(sys.dependents.size() == 4);
  auto u = [&](int i) { return by_name(sys, "u" + std::to_string(i)); };
  auto x = [&](int i) { return by_name(sys, "x" + std::to_string(i)); };

  std::vector<Polynomial> expected{2 * x(1) - u(1), 2 * x(2) - u(2), 2 * x(3) - u(3),
                                   2 * x(4) - u(4)};
  REQUIRE(sys.hypotheses.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(sys.hypotheses[i].primitive_part() == expected[i].primitive_part());

  REQUIRE(sys.conclusions.size() == 1);
  auto c = (x(3) - x(1)) * (u(4) - u(2)) - (x(4) - x(2)) * (u(3) - u(1));
  CHECK((sys.conclusions[0] == c || sys.conclusions[0] == -c));
  CHECK(sys.format(2 * x(1) - u(1)).find("x1") != std::string::npos);
}

TEST_CASE("degenerate conclusions are zero") {
  auto sys = algebraize(parse_problem("problem Z\nfree A\nfree B\nconjecture collinear A A B\n"));
  REQUIRE(sys.conclusions.size() == 1);
  CHECK(sys.conclusions[0].is_zero());
  auto eq = algebraize(parse_problem("problem E\nfree A\nfree B\nconjecture eqdist A B A B\n"));
  CHECK(eq.conclusions[0].is_zero());
}

TEST_CASE("unit square") {
  auto sys = algebraize(parse_problem(
      "problem S\nfixed A 0 0\nfixed B 1 0\nfixed C 1 1\nfixed D 0 1\nconjecture eqdist A B C D\n"));
  CHECK(sys.variables.empty());
  REQUIRE(sys.conclusions.size() == 1);
  CHECK(sys.conclusions[0].is_zero());
}

TEST_CASE("perpendicular translation") {
  auto sys = algebraize(
      parse_problem("problem P\nfixed A 0 0\nfree B\nfree C\nconjecture perpendicular A B A C\n"));
  auto u = [&](int i) { return by_name(sys, "u" + std::to_string(i)); };
  auto c = u(1) * u(3) + u(2) * u(4);
  CHECK((sys.conclusions[0] == c || sys.conclusions[0] == -c));
  auto direct = translate_predicate(sys.problem.conjectures[0], sys.coords);
  CHECK(direct == sys.conclusions);
}

TEST_CASE("equation and variable balance") {
  auto p = parse_problem(R"(problem B
fixed A 0 0
free B
free C
free D
midpoint M A B
on_line P A B
inter X A C B D
foot F C A B
on_circle Q A B
circumcenter O A B C
conjecture collinear A B P
)");
  auto sys = algebraize(p);
  std::map<std::size_t, std::size_t> eqs;
  for (auto s : sys.hypothesis_step) ++eqs[s];
  std::map<std::size_t, std::size_t> deps, params;
  for (const auto& v : sys.variables) {
    std::size_t step = 0;
    for (std::size_t i = 0; i < p.steps.size(); ++i)
      if (p.steps[i].introduced() == v.point) step = i;
    (v.kind == VarKind::Dependent ? deps : params)[step]++;
  }
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    CAPTURE(i);
    switch (p.steps[i].kind) {
    case problem::StepKind::Free: CHECK(params[i] == 2); CHECK(eqs[i] == 0); break;
    case problem::StepKind::Fixed: CHECK(params[i] + deps[i] == 0); break;
    case problem::StepKind::OnLine:
    case problem::StepKind::OnCircle:
      CHECK(params[i] == 1); CHECK(deps[i] == 1); CHECK(eqs[i] == 1); break;
    default: CHECK(params[i] == 0); CHECK(deps[i] == eqs[i]); break;
    }
  }
  CHECK(!sys.ndg_hints.empty());
}

TEST_CASE("degenerate constructions are rejected") {
  auto p = parse_problem("problem D\nfree A\nmidpoint M A A\nconjecture collinear A A M\n");
  CHECK_THROWS_AS(algebraize(p), AlgebraizeError);
  auto q = parse_problem("problem D\nfree A\non_line P A A\nconjecture collinear A A P\n");
  CHECK_THROWS_AS(algebraize(q), AlgebraizeError);
}

TEST_CASE("sampled models satisfy every hypothesis") {
  auto p = parse_problem(R"(problem M
fixed A 0 0
free B
free C
on_line P A B
inter X A C B P
foot F C A B
on_circle Q A C
circumcenter O A B C
conjecture collinear A B P
)");
  auto sys = algebraize(p);
  std::mt19937_64 rng(5);
  int drawn = 0;
  for (int i = 0; i < 40; ++i) {
    auto m = prover::sample_model(sys, rng);
    if (!m) continue;
    ++drawn;
    for (const auto& h : sys.hypotheses) CHECK(h.evaluate(m->values) == 0);
  }
  CHECK(drawn > 30);
}
