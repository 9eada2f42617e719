#include "poly/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gatp::poly {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!factors_.empty() && factors_.back().first == v)
      factors_.back().second += e;
    else
      factors_.emplace_back(v, e);
  }
}

Monomial Monomial::of(Var v, std::uint32_t exponent) {
  return Monomial({{v, exponent}});
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::degree_in(Var v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0});
  return it != factors_.end() && it->first == v ? it->second : 0;
}

bool Monomial::divides(const Monomial& other) const {
  auto it = other.factors_.begin();
  for (const auto& [v, e] : factors_) {
    while (it != other.factors_.end() && it->first < v) ++it;
    if (it == other.factors_.end() || it->first != v || it->second < e)
      return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->first == b->first) return false;
    if (a->first < b->first)
      ++a;
    else
      ++b;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial out;
  auto b = other.factors_.begin();
  for (const auto& [v, e] : factors_) {
    std::uint32_t sub = 0;
    if (b != other.factors_.end() && b->first == v) sub = (b++)->second;
    if (sub > e) throw std::invalid_argument("monomial division is not exact");
    if (e > sub) out.factors_.emplace_back(v, e - sub);
  }
  if (b != other.factors_.end())
    throw std::invalid_argument("monomial division is not exact");
  return out;
}

Monomial Monomial::without(Var v) const {
  Monomial out;
  for (const auto& f : factors_)
    if (f.first != v) out.factors_.push_back(f);
  return out;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      out.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.emplace_back(i->first, std::max(i->second, j->second));
      ++i;
      ++j;
    }
  }
  return out;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial(), c);
}

Polynomial Polynomial::variable(Var v) { return term(Monomial::of(v), 1); }

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Polynomial::degree_in(Var x) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.degree_in(x));
  return d;
}

std::uint32_t Polynomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.degree());
  return d;
}

bool Polynomial::contains(Var x) const {
  for (const auto& t : terms_)
    if (t.first.degree_in(x) > 0) return true;
  return false;
}

std::vector<Var> Polynomial::variables() const {
  std::set<Var> vars;
  for (const auto& t : terms_)
    for (const auto& f : t.first.factors()) vars.insert(f.first);
  return {vars.begin(), vars.end()};
}

std::vector<Polynomial> Polynomial::coefficients_in(Var x) const {
  if (is_zero()) return {};
  std::vector<Polynomial> out(degree_in(x) + 1);
  for (const auto& [m, c] : terms_)
    out[m.degree_in(x)].terms_.emplace(m.without(x), c);
  return out;
}

Polynomial Polynomial::from_coefficients(const std::vector<Polynomial>& coeffs,
                                         Var x) {
  Polynomial out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Monomial xk = k == 0 ? Monomial() : Monomial::of(x, static_cast<std::uint32_t>(k));
    for (const auto& [m, c] : coeffs[k].terms_) out.add_term(m * xk, c);
  }
  return out;
}

Polynomial Polynomial::leading_coefficient_in(Var x) const {
  if (is_zero()) return {};
  const auto d = degree_in(x);
  Polynomial out;
  for (const auto& [m, c] : terms_)
    if (m.degree_in(x) == d) out.terms_.emplace(m.without(x), c);
  return out;
}

Rational Polynomial::evaluate(const std::map<Var, Rational>& env) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational value = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = env.find(v);
      if (it == env.end()) throw MissingVariable(v);
      Rational power;
      mpz_pow_ui(power.get_num_mpz_t(), it->second.get_num_mpz_t(), e);
      mpz_pow_ui(power.get_den_mpz_t(), it->second.get_den_mpz_t(), e);
      value *= power;
    }
    sum += value;
  }
  return sum;
}

Polynomial Polynomial::substitute(const std::map<Var, Polynomial>& values) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial t(c);
    std::vector<Monomial::Factor> kept;
    for (const auto& [v, e] : m.factors()) {
      auto it = values.find(v);
      if (it == values.end())
        kept.emplace_back(v, e);
      else
        t *= it->second.pow(e);
    }
    t *= Polynomial::term(Monomial(std::move(kept)), 1);
    out += t;
  }
  return out;
}

Polynomial Polynomial::primitive_part() const {
  if (is_zero()) return {};
  Integer den_lcm = 1;
  for (const auto& t : terms_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                                       t.second.get_den_mpz_t());
  Integer num_gcd = 0;
  for (const auto& t : terms_) {
    Integer scaled = t.second.get_num() * (den_lcm / t.second.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (terms_.rbegin()->second < 0) factor = -factor;
  Polynomial out = *this;
  out *= factor;
  return out;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

// --------------------------------------------------------------- TermOrder

namespace {
constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
}

TermOrder::TermOrder(OrderKind kind, std::vector<Var> precedence)
    : kind_(kind), precedence_(std::move(precedence)) {
  for (std::size_t i = 0; i < precedence_.size(); ++i) {
    Var v = precedence_[i];
    if (position_.size() <= v) position_.resize(v + 1, kAbsent);
    if (position_[v] != kAbsent)
      throw std::invalid_argument("term order precedence repeats a variable");
    position_[v] = i;
  }
}

TermOrder TermOrder::covering(OrderKind kind, const std::vector<Polynomial>& polys) {
  std::set<Var> vars;
  for (const auto& p : polys)
    for (Var v : p.variables()) vars.insert(v);
  return TermOrder(kind, std::vector<Var>(vars.rbegin(), vars.rend()));
}

bool TermOrder::covers(Var v) const {
  return v < position_.size() && position_[v] != kAbsent;
}

std::size_t TermOrder::position(Var v) const {
  if (!covers(v)) throw std::invalid_argument("variable outside the term order");
  return position_[v];
}

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  if (kind_ == OrderKind::DegRevLex) {
    auto da = a.degree();
    auto db = b.degree();
    if (da != db) return da < db ? -1 : 1;
  }
  std::vector<std::uint32_t> ea(precedence_.size(), 0), eb(precedence_.size(), 0);
  for (const auto& [v, e] : a.factors()) ea[position(v)] = e;
  for (const auto& [v, e] : b.factors()) eb[position(v)] = e;
  if (kind_ == OrderKind::Lex) {
    for (std::size_t i = 0; i < ea.size(); ++i)
      if (ea[i] != eb[i]) return ea[i] < eb[i] ? -1 : 1;
    return 0;
  }
  for (std::size_t i = ea.size(); i-- > 0;)
    if (ea[i] != eb[i]) return ea[i] < eb[i] ? 1 : -1;
  return 0;
}

std::vector<std::pair<Monomial, Rational>>
TermOrder::sorted_terms(const Polynomial& p) const {
  std::vector<std::pair<Monomial, Rational>> out(p.terms().begin(), p.terms().end());
  std::sort(out.begin(), out.end(), [this](const auto& x, const auto& y) {
    return compare(x.first, y.first) > 0;
  });
  return out;
}

Monomial TermOrder::leading_monomial(const Polynomial& p) const {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial has no leading term");
  const Monomial* best = nullptr;
  for (const auto& t : p.terms())
    if (!best || compare(t.first, *best) > 0) best = &t.first;
  return *best;
}

Rational TermOrder::leading_coefficient(const Polynomial& p) const {
  return p.terms().at(leading_monomial(p));
}

// ------------------------------------------------------------------ output

std::string to_string(const Polynomial& p, const TermOrder& order,
                      const VarNamer& name) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : order.sorted_terms(p)) {
    if (!first) out << " + ";
    first = false;
    bool wrote = false;
    if (m.is_one() || c != 1) {
      out << gatp::to_string(c);
      wrote = true;
    }
    // Variables in precedence order so equal monomials print identically.
    auto factors = m.factors();
    std::sort(factors.begin(), factors.end(), [&](const auto& x, const auto& y) {
      return order.position(x.first) < order.position(y.first);
    });
    for (const auto& [v, e] : factors) {
      if (wrote) out << '*';
      out << name(v);
      if (e != 1) out << '^' << e;
      wrote = true;
    }
  }
  return out.str();
}

std::string to_string(const Polynomial& p) {
  return to_string(p, TermOrder::covering(OrderKind::DegRevLex, {p}),
                   [](Var v) { return "v" + std::to_string(v); });
}

// ---------------------------------------------------------- pseudo-division

namespace {

void trim(std::vector<Polynomial>& coeffs) {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

} // namespace

PseudoDivision pseudo_divide(const Polynomial& f, const Polynomial& g, Var x) {
  const std::uint32_t n = g.degree_in(x);
  if (n == 0) throw NotUnivariateInX(x);
  PseudoDivision out;
  if (f.is_zero() || f.degree_in(x) < n) {
    out.remainder = f;
    return out;
  }
  const auto divisor = g.coefficients_in(x);
  const Polynomial& init = divisor[n];
  auto rem = f.coefficients_in(x);
  std::vector<Polynomial> quot(rem.size() - n);
  while (!rem.empty() && rem.size() - 1 >= n) {
    const std::size_t shift = rem.size() - 1 - n;
    const Polynomial lead = rem.back();
    for (auto& q : quot) q *= init;
    quot[shift] += lead;
    for (auto& r : rem) r *= init;
    for (std::size_t j = 0; j <= n; ++j) rem[j + shift] -= lead * divisor[j];
    trim(rem);
    ++out.power;
  }
  out.quotient = Polynomial::from_coefficients(quot, x);
  out.remainder = Polynomial::from_coefficients(rem, x);
  return out;
}

} // namespace gatp::poly
