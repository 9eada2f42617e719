#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "common/error.hpp"
#include "common/rational.hpp"

namespace gatp::poly {

/// Variable identifier. Meaning (name, kind) is owned by whoever built the
/// polynomials; the arithmetic only needs a total order on ids.
using Var = std::uint32_t;

/// Power product, stored sparsely as (variable, exponent) pairs sorted by
/// variable id. Zero exponents are never stored.
class Monomial {
public:
  using Factor = std::pair<Var, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);

  static Monomial of(Var v, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t degree() const;
  std::uint32_t degree_in(Var v) const;

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; requires other.divides(*this).
  Monomial operator/(const Monomial& other) const;
  /// Drops the factor of v.
  Monomial without(Var v) const;

  static Monomial lcm(const Monomial& a, const Monomial& b);

  /// Storage order only (lexicographic over the factor list); use TermOrder
  /// for algebraically meaningful comparisons.
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

private:
  std::vector<Factor> factors_;
};

class MissingVariable : public Error {
public:
  explicit MissingVariable(Var v)
      : Error("no value for variable #" + std::to_string(v)), var(v) {}
  Var var;
};

class NotUnivariateInX : public Error {
public:
  explicit NotUnivariateInX(Var v)
      : Error("divisor has degree 0 in variable #" + std::to_string(v)),
        var(v) {}
  Var var;
};

/// Sparse multivariate polynomial over Q. The term map never holds a zero
/// coefficient, so the zero polynomial is the empty map.
class Polynomial {
public:
  using TermMap = std::map<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c); // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(Rational(c)) {} // NOLINT

  static Polynomial variable(Var v);
  static Polynomial term(const Monomial& m, const Rational& c);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the unit monomial.
  Rational constant_term() const;

  std::uint32_t degree_in(Var x) const;
  std::uint32_t total_degree() const;
  bool contains(Var x) const;
  /// Sorted, duplicate free.
  std::vector<Var> variables() const;

  /// coefficients_in(x)[k] is the coefficient of x^k, as a polynomial free
  /// of x. Empty for the zero polynomial.
  std::vector<Polynomial> coefficients_in(Var x) const;
  static Polynomial from_coefficients(const std::vector<Polynomial>& coeffs,
                                      Var x);
  /// Leading coefficient with respect to x (the "initial" when x is the
  /// main variable).
  Polynomial leading_coefficient_in(Var x) const;

  Rational evaluate(const std::map<Var, Rational>& env) const;

  /// Substitutes the given variables by polynomials.
  Polynomial substitute(const std::map<Var, Polynomial>& values) const;

  /// Scalar multiple with integer coefficients of gcd 1 whose greatest
  /// term (storage order) is positive. Zero stays zero.
  Polynomial primitive_part() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(Polynomial a, long c) { return a *= Rational(c); }
  friend Polynomial operator*(long c, Polynomial a) { return a *= Rational(c); }

  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial&) const = default;

  /// Adds c*m in place.
  void add_term(const Monomial& m, const Rational& c);

private:
  TermMap terms_;
};

enum class OrderKind { Lex, DegRevLex };

/// Monomial order: kind plus variable precedence, highest variable first.
class TermOrder {
public:
  TermOrder(OrderKind kind, std::vector<Var> precedence);

  /// Precedence over every variable of the given polynomials, higher ids
  /// ranked higher.
  static TermOrder covering(OrderKind kind, const std::vector<Polynomial>& polys);

  OrderKind kind() const { return kind_; }
  const std::vector<Var>& precedence() const { return precedence_; }
  bool covers(Var v) const;
  /// Position in the precedence list (0 = highest).
  std::size_t position(Var v) const;

  /// Negative, zero or positive as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b) const;

  /// Terms sorted from greatest to least.
  std::vector<std::pair<Monomial, Rational>> sorted_terms(const Polynomial& p) const;
  /// Requires p nonzero.
  Monomial leading_monomial(const Polynomial& p) const;
  Rational leading_coefficient(const Polynomial& p) const;

private:
  OrderKind kind_;
  std::vector<Var> precedence_;
  std::vector<std::size_t> position_; // indexed by Var, npos when absent
};

using VarNamer = std::function<std::string(Var)>;

/// Canonical text form: terms sorted by `order`, each as `coef*var^e*...`,
/// joined by " + ". A coefficient of exactly 1 is omitted on non-constant
/// terms. The zero polynomial prints as "0".
std::string to_string(const Polynomial& p, const TermOrder& order,
                       const VarNamer& name);
/// Same, with a DegRevLex order over p's own variables and names "v<id>".
std::string to_string(const Polynomial& p);

struct PseudoDivision {
  Polynomial quotient;
  Polynomial remainder;
  unsigned power = 0; // k in init(g)^k * f = q*g + r
};

/// Pseudo-division of f by g in x. Throws NotUnivariateInX when
/// deg_x(g) == 0.
PseudoDivision pseudo_divide(const Polynomial& f, const Polynomial& g, Var x);

inline Polynomial pseudo_remainder(const Polynomial& f, const Polynomial& g,
                                   Var x) {
  return pseudo_divide(f, g, x).remainder;
}

} // namespace gatp::poly
