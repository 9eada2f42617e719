#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "algebra/algebraizer.hpp"
#include "doctest.h"
#include "problem/problem.hpp"
#include "prover/external.hpp"
#include "prover/groebner_prover.hpp"
#include "prover/oracle.hpp"
#include "prover/outcome.hpp"
#include "prover/wu.hpp"

using namespace gatp;
using namespace gatp::prover;
using algebra::algebraize;
using problem::parse_problem;
namespace fs = std::filesystem;

namespace {

const char* kMidpoint = R"(problem GEO0001
fixed A 0 0
free B
free C
midpoint M A B
midpoint N A C
conjecture parallel M N B C
)";

const char* kRightAngle = R"(problem GEO0101
fixed A 0 0
free B
free C
conjecture perpendicular A B A C
)";

Deadline minute() { return Deadline::after(std::chrono::seconds(60)); }

// One parameter u1 (id 0) and `deps` dependents x1.. (ids 1..).
PolynomialSystem synthetic(std::size_t deps) {
  PolynomialSystem sys;
  sys.variables.push_back({algebra::VarKind::Parameter, 1, "U", algebra::Axis::X});
  sys.params.push_back(0);
  for (std::size_t i = 1; i <= deps; ++i) {
    sys.variables.push_back({algebra::VarKind::Dependent, i, "P" + std::to_string(i),
                             algebra::Axis::X});
    sys.dependents.push_back(static_cast<Var>(i));
  }
  return sys;
}

Polynomial v(Var i) { return Polynomial::variable(i); }

fs::path temp_problem() {
  auto path = fs::temp_directory_path() / ("gatp-prover-" + std::to_string(::getpid()) + ".geo");
  std::ofstream(path) << kMidpoint;
  return path;
}

} // namespace

TEST_CASE("triangulation") {
  SUBCASE("already triangular") {
    auto sys = algebraize(parse_problem(kMidpoint));
    auto chain = wu_triangulate(sys);
    REQUIRE(chain.members.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(chain.members[i].initial.is_constant());
      CHECK(chain.members[i].poly.primitive_part() == sys.hypotheses[i].primitive_part());
    }
  }
  SUBCASE("duplicates collapse") {
    auto sys = synthetic(1);
    sys.hypotheses = {v(1) - v(0), v(1) - v(0)};
    auto chain = wu_triangulate(sys);
    REQUIRE(chain.members.size() == 1);
    CHECK(chain.members[0].poly.primitive_part() == (v(1) - v(0)).primitive_part());
  }
  SUBCASE("contradiction") {
    auto sys = synthetic(1);
    sys.hypotheses = {v(1), v(1) - 1};
    CHECK_THROWS_AS(wu_triangulate(sys), InconsistentSystem);
  }
  SUBCASE("main variables increase") {
    auto sys = synthetic(2);
    sys.hypotheses = {v(2) * v(1) - v(0), v(1) * v(1) - v(0), v(2) - v(1)};
    auto chain = wu_triangulate(sys);
    for (std::size_t i = 1; i < chain.members.size(); ++i)
      CHECK(*sys.dependent_rank(chain.members[i - 1].main) <
            *sys.dependent_rank(chain.members[i].main));
  }
}

TEST_CASE("wu prover") {
  auto mid = wu_prove(algebraize(parse_problem(kMidpoint)), minute());
  CHECK(mid.status == Status::Proved);
  CHECK(mid.ndg_conditions.empty());

  auto zero = wu_prove(
      algebraize(parse_problem("problem Z\nfree A\nfree B\nconjecture collinear A A B\n")),
      minute());
  CHECK(zero.status == Status::Proved);

  auto right = wu_prove(algebraize(parse_problem(kRightAngle)), minute(), true);
  CHECK(right.status == Status::Unproved);
  REQUIRE(right.trace);
  CHECK(right.trace->find("final remainder: u4*u2 + u3*u1") != std::string::npos);

  auto sys = synthetic(1);
  sys.hypotheses = {v(1), v(1) - 1};
  sys.conclusions = {v(1)};
  CHECK(wu_prove(sys, minute()).status == Status::Error);
}

TEST_CASE("wu prover reports initials as ndg conditions") {
  auto sys = algebraize(parse_problem(R"(problem C
fixed A 0 0
free B
free C
circumcenter O A B C
conjecture eqdist O A O B
)"));
  auto out = wu_prove(sys, minute());
  CHECK(out.status == Status::Proved);
  CHECK(!out.ndg_conditions.empty());
  CHECK(out.ndg_text.size() == out.ndg_conditions.size());
}

TEST_CASE("groebner prover") {
  auto sys = synthetic(1);
  sys.hypotheses = {v(1) * v(1)};
  sys.conclusions = {v(1)};
  CHECK(groebner_prove(sys, minute(), GroebnerMode::Strict).status == Status::Proved);

  auto zero = synthetic(1);
  zero.hypotheses = {v(1) - v(0)};
  zero.conclusions = {Polynomial()};
  CHECK(groebner_prove(zero, minute(), GroebnerMode::Strict).status == Status::Proved);

  auto mid = algebraize(parse_problem(kMidpoint));
  CHECK(groebner_prove(mid, minute(), GroebnerMode::Strict).status == Status::Proved);
  CHECK(groebner_prove(mid, minute(), GroebnerMode::Generic).status == Status::Proved);
  auto right = algebraize(parse_problem(kRightAngle));
  CHECK(groebner_prove(right, minute()).status == Status::Unproved);

  auto out = groebner_prove(mid, Deadline::after(std::chrono::seconds(0)));
  CHECK(out.status == Status::Timeout);
}

TEST_CASE("numeric oracle") {
  auto mid = algebraize(parse_problem(kMidpoint));
  auto ok = numeric_check(mid, 100, 1);
  CHECK(ok.consistent);
  CHECK(ok.samples_used == 100);

  auto right = algebraize(parse_problem(kRightAngle));
  auto bad = numeric_check(right, 100, 1);
  CHECK_FALSE(bad.consistent);
  REQUIRE(bad.counterexample);
  CHECK(bad.samples_used == 1);
  CHECK(bad.failing_value != 0);

  auto fixed = algebraize(parse_problem(
      "problem F\nfixed A 0 0\nfixed B 2 0\nfixed M 1 0\nconjecture midpoint_of M A B\n"));
  auto once = numeric_check(fixed, 100, 1);
  CHECK(once.consistent);
  CHECK(once.samples_used == 1);

  // same seed, same text
  CHECK(describe_model(right, *bad.counterexample) ==
        describe_model(right, *numeric_check(right, 100, 1).counterexample));
}

TEST_CASE("oracle keeps ndg conditions nonzero") {
  auto sys = algebraize(parse_problem(R"(problem C
fixed A 0 0
free B
free C
circumcenter O A B C
conjecture eqdist O A O C
)"));
  auto out = wu_prove(sys, minute());
  REQUIRE(out.status == Status::Proved);
  CHECK(numeric_check(sys, 100, 9, out.ndg_conditions).consistent);
}

TEST_CASE("descriptors") {
  CHECK_THROWS_AS(ProverDescriptor::external("x", "no placeholder"), std::invalid_argument);
  CHECK_THROWS_AS(ProverDescriptor::external("x", "run {input}", 6), std::invalid_argument);
  auto w = ProverDescriptor::wu("wu", true);
  CHECK(w.readability_level == 2);
  CHECK(ProverDescriptor::groebner().readability_level == 1);
  CHECK(parse_reliability(to_string(ReliabilityClass::FormallyVerified)) ==
        ReliabilityClass::FormallyVerified);
  CHECK(parse_status("Timeout") == Status::Timeout);
}

TEST_CASE("external adapter") {
  auto file = temp_problem();
  auto run = [&](const std::string& cmd, double seconds) {
    return external_prove(ProverDescriptor::external("stub", cmd), file,
                          Deadline::after(std::chrono::duration<double>(seconds)));
  };

  auto proved = run("test -f {input} && sleep 0.01", 10);
  CHECK(proved.status == Status::Proved);
  CHECK(proved.wall_seconds >= 0.01);
  CHECK(proved.wall_seconds < 1.0);

  CHECK(run("test -f {input} && exit 1", 10).status == Status::Unproved);
  CHECK(run("cat {input} >/dev/null; exit 2", 10).status == Status::Error);

  auto echoed = run("cat {input}", 10);
  CHECK(echoed.status == Status::Proved);
  REQUIRE(echoed.trace);
  CHECK(echoed.trace->find("problem GEO0001") != std::string::npos);

  auto slow = run("sleep 30 & sleep 30; cat {input}", 0.5);
  CHECK(slow.status == Status::Timeout);
  CHECK(slow.wall_seconds >= 0.5);
  CHECK(slow.wall_seconds < 1.0);

  CHECK(expand_command("p {input} {input}", "/tmp/a b") == "p '/tmp/a b' '/tmp/a b'");
  CHECK(shell_quote("it's") == "'it'\\''s'");
  fs::remove(file);
}
