#include <random>

#include "doctest.h"
#include "poly/groebner.hpp"
#include "poly/polynomial.hpp"

using namespace gatp;
using namespace gatp::poly;

namespace {

Polynomial var(Var v) { return Polynomial::variable(v); }

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Polynomial random_poly(std::mt19937_64& rng, std::vector<Var> vars, unsigned max_deg,
                       unsigned max_terms) {
  Polynomial p;
  unsigned terms = 1 + rng() % max_terms;
  for (unsigned t = 0; t < terms; ++t) {
    std::vector<Monomial::Factor> f;
    unsigned budget = rng() % (max_deg + 1);
    for (Var v : vars) {
      if (!budget) break;
      unsigned e = rng() % (budget + 1);
      if (e) f.emplace_back(v, e);
      budget -= e;
    }
    long c = static_cast<long>(rng() % 19) - 9;
    if (c == 0) c = 1;
    p.add_term(Monomial(f), c);
  }
  return p;
}

} // namespace

TEST_CASE("ring arithmetic") {
  auto x = var(0), y = var(1);
  CHECK((x + y) + (x - y) == 2 * x);
  CHECK((x - 1) * (x + 1) == x.pow(2) - 1);
  CHECK(((x + y) + (-(x + y))).is_zero());
  CHECK((x * y).total_degree() == 2);
  CHECK((x.pow(3) * y).degree_in(0) == 3);
}

TEST_CASE("exact evaluation") {
  // x1..x4 = 0..3, u1..u4 = 4..7
  auto x1 = var(0), x2 = var(1), x3 = var(2), x4 = var(3);
  auto u1 = var(4), u2 = var(5), u3 = var(6), u4 = var(7);
  auto c = (x3 - x1) * (u4 - u2) - (x4 - x2) * (u3 - u1);
  std::map<Var, Rational> env{{0, 2}, {1, 1}, {2, 3}, {3, 5}, {4, 4}, {5, 2}, {6, 6}, {7, 10}};
  CHECK(c.evaluate(env) == 0);
  CHECK(Polynomial(q(7, 2)).evaluate({}) == q(7, 2));
  CHECK((var(0) * var(1)).evaluate({{0, q(2, 3)}, {1, q(3, 2)}}) == 1);
  CHECK_THROWS_AS(var(0).evaluate({}), MissingVariable);
}

TEST_CASE("canonical text") {
  auto x = var(0), y = var(1);
  TermOrder lex(OrderKind::Lex, {0, 1});
  auto name = [](Var v) { return v == 0 ? std::string("x") : std::string("y"); };
  CHECK(to_string(x.pow(2) + y.pow(2), lex, name) == "x^2 + y^2");
  CHECK(to_string(Polynomial(), lex, name) == "0");
  CHECK(to_string(Polynomial(q(-1, 2)) + x, lex, name) == "x + -1/2");
}

TEST_CASE("coefficients and substitution") {
  auto x = var(0), u = var(1);
  auto f = u * x.pow(2) + 3 * x - u;
  auto cs = f.coefficients_in(0);
  REQUIRE(cs.size() == 3);
  CHECK(cs[2] == u);
  CHECK(cs[0] == -u);
  CHECK(Polynomial::from_coefficients(cs, 0) == f);
  CHECK(f.leading_coefficient_in(0) == u);
  CHECK(f.substitute({{0, Polynomial(1)}}) == Polynomial(3));
  CHECK((6 * x + 4).primitive_part() == 3 * x + 2);
}

TEST_CASE("pseudo-division worked cases") {
  auto x = var(0), u = var(1), v = var(2);
  auto r = pseudo_divide(x.pow(2) - u, v * x - 1, 0);
  CHECK(r.remainder == 1 - u * v.pow(2));
  CHECK(r.power == 2);
  CHECK(v.pow(2) * (x.pow(2) - u) == r.quotient * (v * x - 1) + r.remainder);

  auto low = pseudo_divide(u + 1, x - u, 0);
  CHECK(low.quotient.is_zero());
  CHECK(low.remainder == u + 1);
  CHECK(low.power == 0);

  CHECK(pseudo_remainder(x.pow(2) - 1, x - 1, 0).is_zero());
  CHECK_THROWS_AS(pseudo_divide(x, u, 0), NotUnivariateInX);
}

TEST_CASE("pseudo-division identity on random inputs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto f = random_poly(rng, {0, 1, 2}, 4, 5);
    auto g = random_poly(rng, {0, 1, 2}, 3, 4);
    if (g.degree_in(0) == 0) g += var(0) * var(1);
    auto d = pseudo_divide(f, g, 0);
    CHECK(d.remainder.degree_in(0) < g.degree_in(0) + (d.remainder.is_zero() ? 1u : 0u));
    CHECK(g.leading_coefficient_in(0).pow(d.power) * f == d.quotient * g + d.remainder);
  }
}

TEST_CASE("normal form") {
  auto x = var(0), y = var(1);
  TermOrder lex(OrderKind::Lex, {0, 1});
  CHECK(normal_form(x * y, {x}, lex).is_zero());
  CHECK(normal_form(y, {x}, lex) == y);
  CHECK(normal_form(x.pow(2) + y.pow(2), {x * y, y.pow(3)}, lex) == x.pow(2) + y.pow(2));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto f = random_poly(rng, {0, 1}, 4, 4);
    std::vector<Polynomial> G{random_poly(rng, {0, 1}, 2, 3), random_poly(rng, {0, 1}, 2, 3)};
    auto red = reduce(f, G, lex);
    Polynomial sum = red.remainder;
    for (std::size_t k = 0; k < G.size(); ++k) sum += red.cofactors[k] * G[k];
    CHECK(sum == f);
  }
}

TEST_CASE("buchberger examples") {
  auto x = var(0), y = var(1);
  TermOrder lex(OrderKind::Lex, {0, 1});
  CHECK(buchberger({x}, lex) == std::vector<Polynomial>{x});
  CHECK(buchberger({Polynomial(1)}, lex) == std::vector<Polynomial>{Polynomial(1)});
  CHECK(buchberger({x.pow(2) + y.pow(2), x * y}, lex) ==
        std::vector<Polynomial>{x.pow(2) + y.pow(2), x * y, y.pow(3)});
  CHECK(buchberger({Polynomial()}, lex).empty());

  BuchbergerStats stats;
  auto unit = buchberger({x * y - 1, x}, lex, {}, &stats);
  CHECK(unit == std::vector<Polynomial>{Polynomial(1)});
  CHECK(stats.stopped_at_unit);
}

TEST_CASE("buchberger output is a basis of the input ideal") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 25; ++i) {
    std::vector<Polynomial> F;
    unsigned n = 1 + rng() % 3;
    for (unsigned k = 0; k < n; ++k) F.push_back(random_poly(rng, {0, 1, 2}, 2, 3));
    auto order = TermOrder(i % 2 ? OrderKind::Lex : OrderKind::DegRevLex, {0, 1, 2});
    auto G = buchberger(F, order, Deadline::after(std::chrono::seconds(20)));
    for (const auto& f : F) CHECK(normal_form(f, G, order).is_zero());
    for (std::size_t a = 0; a < G.size(); ++a)
      for (std::size_t b = a + 1; b < G.size(); ++b)
        CHECK(normal_form(s_polynomial(G[a], G[b], order), G, order).is_zero());
    for (const auto& g : G) CHECK(order.leading_coefficient(g) == 1);
  }
}

TEST_CASE("buchberger honours the deadline") {
  std::vector<Polynomial> F;
  for (Var v = 0; v < 4; ++v) F.push_back(var(v).pow(3) + var((v + 1) % 4) * var(v) - 1);
  TermOrder lex(OrderKind::Lex, {0, 1, 2, 3});
  CHECK_THROWS_AS(buchberger(F, lex, Deadline::after(std::chrono::seconds(0))), TimeoutError);
}
