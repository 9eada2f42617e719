#pragma once

#include <vector>

#include "algebra/algebraizer.hpp"
#include "common/deadline.hpp"
#include "prover/outcome.hpp"

namespace gatp::prover {

using algebra::PolynomialSystem;
using poly::Polynomial;
using poly::Var;

struct ChainMember {
  Polynomial poly;
  Var main;           // class variable (highest dependent present)
  Polynomial initial; // leading coefficient in `main`
};

/// Triangular set with strictly increasing main variables in the dependent
/// order. Parameters never serve as main variables.
struct AscendingChain {
  std::vector<ChainMember> members;
};

/// Raised when reduction produces a nonzero polynomial free of dependents,
/// i.e. the hypotheses are contradictory.
class InconsistentSystem : public Error {
public:
  using Error::Error;
};

/// Class of p in the dependent order: rank of its highest dependent, or
/// nullopt when p involves parameters only.
std::optional<std::size_t> polynomial_class(const PolynomialSystem& sys, const Polynomial& p);

/// Ritt-Wu triangulation, eliminating from the highest dependent down:
/// polynomials sharing a class are pseudo-reduced against the one of least
/// degree until one remains; remainders fall to lower classes.
AscendingChain wu_triangulate(const PolynomialSystem& sys, const Deadline& deadline = {});

/// Successive pseudo-remainder of g by the chain, last member first.
Polynomial wu_remainder(const AscendingChain& chain, const Polynomial& g,
                        const Deadline& deadline = {});

/// Nonconstant chain initials and constructor hints, deduplicated up to
/// scalar multiples and in first-seen order.
std::vector<Polynomial> nondegeneracy_conditions(const PolynomialSystem& sys,
                                                 const AscendingChain& chain);

/// Generic-truth Wu prover: Proved iff every conclusion's final remainder
/// is zero.
ProofOutcome wu_prove(const PolynomialSystem& sys, const Deadline& deadline,
                      bool trace = false);

} // namespace gatp::prover
