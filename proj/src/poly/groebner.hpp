#pragma once

#include <cstddef>
#include <vector>

#include "common/deadline.hpp"
#include "poly/polynomial.hpp"

namespace gatp::poly {

/// f = sum(cofactors[i] * G[i]) + remainder, and no term of remainder is
/// divisible by a leading monomial of G.
struct Reduction {
  Polynomial remainder;
  std::vector<Polynomial> cofactors;
};

/// Full multivariate division of f by G. Zero members of G are skipped.
Reduction reduce(const Polynomial& f, const std::vector<Polynomial>& G,
                 const TermOrder& order, const Deadline& deadline = {});

inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G,
                              const TermOrder& order,
                              const Deadline& deadline = {}) {
  return reduce(f, G, order, deadline).remainder;
}

/// S-polynomial lcm/lt(f)*f - lcm/lt(g)*g of two nonzero polynomials.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g,
                        const TermOrder& order);

struct BuchbergerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_skipped_coprime = 0;
  std::size_t pairs_skipped_chain = 0;
  std::size_t reductions_to_zero = 0;
  bool stopped_at_unit = false;
};

/// Reduced Groebner basis of the ideal generated by F, sorted by leading
/// monomial from greatest to least, every element monic. The unit ideal
/// yields {1} as soon as a nonzero constant shows up; the zero ideal yields
/// an empty basis. Polls `deadline` between pair reductions.
std::vector<Polynomial> buchberger(const std::vector<Polynomial>& F,
                                   const TermOrder& order,
                                   const Deadline& deadline = {},
                                   BuchbergerStats* stats = nullptr);

} // namespace gatp::poly
