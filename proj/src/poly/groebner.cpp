#include "poly/groebner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gatp::poly {

namespace {

// Dense working representation: exponents indexed by precedence position,
// terms kept sorted from greatest to least under the active order.
using Exps = std::vector<std::uint32_t>;

struct DTerm {
  Exps e;
  std::uint32_t deg = 0;
  Rational c;
};

using DPoly = std::vector<DTerm>;

class Dense {
public:
  explicit Dense(const TermOrder& order)
      : order_(order), n_(order.precedence().size()),
        lex_(order.kind() == OrderKind::Lex) {}

  std::size_t width() const { return n_; }

  int compare(const Exps& a, std::uint32_t da, const Exps& b, std::uint32_t db) const {
    if (!lex_ && da != db) return da < db ? -1 : 1;
    if (lex_) {
      for (std::size_t i = 0; i < n_; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    }
    for (std::size_t i = n_; i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }

  int compare(const DTerm& a, const DTerm& b) const {
    return compare(a.e, a.deg, b.e, b.deg);
  }

  DPoly to_dense(const Polynomial& p) const {
    DPoly out;
    out.reserve(p.size());
    for (const auto& [m, c] : p.terms()) {
      DTerm t{Exps(n_, 0), m.degree(), c};
      for (const auto& [v, e] : m.factors()) {
        if (!order_.covers(v))
          throw std::invalid_argument("polynomial variable outside the term order");
        t.e[order_.position(v)] = e;
      }
      out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(),
              [this](const DTerm& a, const DTerm& b) { return compare(a, b) > 0; });
    return out;
  }

  Polynomial to_poly(const DPoly& p) const {
    Polynomial out;
    for (const auto& t : p) out.add_term(to_monomial(t.e), t.c);
    return out;
  }

  Monomial to_monomial(const Exps& e) const {
    std::vector<Monomial::Factor> factors;
    for (std::size_t i = 0; i < n_; ++i)
      if (e[i]) factors.emplace_back(order_.precedence()[i], e[i]);
    return Monomial(std::move(factors));
  }

  /// Returns p[from..] - c * x^m * g. Assumes the result's ordering is
  /// preserved under multiplication by x^m, which holds for monomial orders.
  DPoly sub_scaled(const DPoly& p, std::size_t from, const Rational& c,
                   const Exps& m, std::uint32_t mdeg, const DPoly& g) const {
    DPoly out;
    out.reserve(p.size() - from + g.size());
    std::size_t i = from;
    std::size_t j = 0;
    DTerm shifted;
    auto load = [&](std::size_t k) {
      shifted.e = g[k].e;
      for (std::size_t v = 0; v < n_; ++v) shifted.e[v] += m[v];
      shifted.deg = g[k].deg + mdeg;
      shifted.c = -(c * g[k].c);
    };
    if (j < g.size()) load(j);
    while (i < p.size() || j < g.size()) {
      int cmp = 0;
      if (i >= p.size())
        cmp = -1;
      else if (j >= g.size())
        cmp = 1;
      else
        cmp = compare(p[i], shifted);
      if (cmp > 0) {
        out.push_back(p[i++]);
      } else if (cmp < 0) {
        out.push_back(shifted);
        if (++j < g.size()) load(j);
      } else {
        Rational sum = p[i].c + shifted.c;
        if (sum != 0) out.push_back(DTerm{p[i].e, p[i].deg, sum});
        ++i;
        if (++j < g.size()) load(j);
      }
    }
    return out;
  }

private:
  const TermOrder& order_;
  std::size_t n_;
  bool lex_;
};

bool divides(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps quotient(const Exps& a, const Exps& b) {
  Exps out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Exps lcm(const Exps& a, const Exps& b) {
  Exps out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

std::uint32_t degree(const Exps& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool coprime(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

void make_monic(DPoly& p) {
  if (p.empty() || p.front().c == 1) return;
  Rational inv = 1 / p.front().c;
  for (auto& t : p) t.c *= inv;
}

bool is_constant(const DPoly& p) { return p.size() == 1 && p.front().deg == 0; }

/// Full reduction of f modulo basis. Cofactor terms are appended to
/// `cofactors` when it is non-null.
DPoly reduce_dense(const Dense& dense, DPoly p, const std::vector<const DPoly*>& basis,
                   const Deadline& deadline, std::vector<DPoly>* cofactors) {
  DPoly rem;
  std::size_t head = 0;
  std::size_t steps = 0;
  while (head < p.size()) {
    if ((++steps & 0x3f) == 0) deadline.poll();
    const DTerm& lead = p[head];
    const DPoly* divisor = nullptr;
    std::size_t which = 0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const DPoly& g = *basis[k];
      if (!g.empty() && divides(g.front().e, lead.e)) {
        divisor = &g;
        which = k;
        break;
      }
    }
    if (!divisor) {
      rem.push_back(lead);
      ++head;
      continue;
    }
    Rational c = lead.c / divisor->front().c;
    Exps m = quotient(lead.e, divisor->front().e);
    std::uint32_t mdeg = lead.deg - divisor->front().deg;
    if (cofactors) (*cofactors)[which].push_back(DTerm{m, mdeg, c});
    p = dense.sub_scaled(p, head, c, m, mdeg, *divisor);
    head = 0;
  }
  return rem;
}

DPoly s_poly_dense(const Dense& dense, const DPoly& f, const DPoly& g) {
  Exps l = lcm(f.front().e, g.front().e);
  std::uint32_t ld = degree(l);
  Exps mf = quotient(l, f.front().e);
  Exps mg = quotient(l, g.front().e);
  DPoly scaled_f = dense.sub_scaled({}, 0, -1 / f.front().c, mf, ld - f.front().deg, f);
  return dense.sub_scaled(scaled_f, 0, 1 / g.front().c, mg, ld - g.front().deg, g);
}

} // namespace

Reduction reduce(const Polynomial& f, const std::vector<Polynomial>& G,
                 const TermOrder& order, const Deadline& deadline) {
  Dense dense(order);
  std::vector<DPoly> basis;
  basis.reserve(G.size());
  for (const auto& g : G) basis.push_back(dense.to_dense(g));
  std::vector<const DPoly*> refs;
  for (const auto& g : basis) refs.push_back(&g);
  std::vector<DPoly> cof(G.size());
  DPoly rem = reduce_dense(dense, dense.to_dense(f), refs, deadline, &cof);
  Reduction out;
  out.remainder = dense.to_poly(rem);
  for (const auto& c : cof) out.cofactors.push_back(dense.to_poly(c));
  return out;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g,
                        const TermOrder& order) {
  if (f.is_zero() || g.is_zero())
    throw std::invalid_argument("S-polynomial of a zero polynomial");
  Dense dense(order);
  return dense.to_poly(s_poly_dense(dense, dense.to_dense(f), dense.to_dense(g)));
}

std::vector<Polynomial> buchberger(const std::vector<Polynomial>& F,
                                   const TermOrder& order, const Deadline& deadline,
                                   BuchbergerStats* stats) {
  BuchbergerStats local;
  BuchbergerStats& st = stats ? *stats : local;
  Dense dense(order);

  std::vector<DPoly> G;
  for (const auto& f : F) {
    if (f.is_zero()) continue;
    DPoly d = dense.to_dense(f);
    make_monic(d);
    if (is_constant(d)) {
      st.stopped_at_unit = true;
      return {Polynomial(1)};
    }
    G.push_back(std::move(d));
  }
  if (G.empty()) return {};

  struct Pair {
    std::size_t i, j;
    Exps lcm;
    std::uint32_t deg;
  };
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto add_pair = [&](std::size_t i, std::size_t j) {
    Exps l = lcm(G[i].front().e, G[j].front().e);
    std::uint32_t d = degree(l);
    pairs.push_back(Pair{i, j, std::move(l), d});
    pending.emplace(i, j);
  };
  for (std::size_t j = 1; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) add_pair(i, j);

  auto is_pending = [&](std::size_t a, std::size_t b) {
    return pending.count({std::min(a, b), std::max(a, b)}) > 0;
  };

  while (!pairs.empty()) {
    deadline.poll();
    // Normal strategy: smallest lcm first, ties broken by index for
    // determinism.
    auto best = pairs.begin();
    for (auto it = pairs.begin() + 1; it != pairs.end(); ++it) {
      if (it->deg != best->deg) {
        if (it->deg < best->deg) best = it;
        continue;
      }
      int c = dense.compare(it->lcm, it->deg, best->lcm, best->deg);
      if (c < 0 || (c == 0 && std::tie(it->j, it->i) < std::tie(best->j, best->i)))
        best = it;
    }
    Pair pr = std::move(*best);
    pairs.erase(best);
    pending.erase({pr.i, pr.j});
    ++st.pairs_considered;

    if (coprime(G[pr.i].front().e, G[pr.j].front().e)) {
      ++st.pairs_skipped_coprime;
      continue;
    }
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (divides(G[k].front().e, pr.lcm) && !is_pending(pr.i, k) &&
          !is_pending(pr.j, k))
        chain = true;
    }
    if (chain) {
      ++st.pairs_skipped_chain;
      continue;
    }

    std::vector<const DPoly*> refs;
    for (const auto& g : G) refs.push_back(&g);
    DPoly r = reduce_dense(dense, s_poly_dense(dense, G[pr.i], G[pr.j]), refs,
                           deadline, nullptr);
    if (r.empty()) {
      ++st.reductions_to_zero;
      continue;
    }
    make_monic(r);
    if (is_constant(r)) {
      st.stopped_at_unit = true;
      return {Polynomial(1)};
    }
    G.push_back(std::move(r));
    const std::size_t fresh = G.size() - 1;
    for (std::size_t k = 0; k < fresh; ++k) add_pair(k, fresh);
  }

  // Minimalize: drop elements whose leading monomial is a multiple of
  // another's (keeping the earliest among equal ones).
  std::vector<DPoly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < G.size() && !redundant; ++k) {
      if (k == i || !divides(G[k].front().e, G[i].front().e)) continue;
      redundant = G[k].front().e != G[i].front().e || k < i;
    }
    if (!redundant) minimal.push_back(G[i]);
  }

  // Inter-reduce tails. Leading terms stay put because the set is minimal.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const DPoly*> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(&minimal[k]);
    DPoly tail(minimal[i].begin() + 1, minimal[i].end());
    DPoly reduced = reduce_dense(dense, std::move(tail), others, deadline, nullptr);
    reduced.insert(reduced.begin(), minimal[i].front());
    make_monic(reduced);
    minimal[i] = std::move(reduced);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const DPoly& a, const DPoly& b) {
    return dense.compare(a.front(), b.front()) > 0;
  });

  std::vector<Polynomial> out;
  out.reserve(minimal.size());
  for (const auto& g : minimal) out.push_back(dense.to_poly(g));
  return out;
}

} // namespace gatp::poly
