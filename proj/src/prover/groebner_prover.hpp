#pragma once

#include "algebra/algebraizer.hpp"
#include "common/deadline.hpp"
#include "prover/outcome.hpp"

namespace gatp::prover {

/// Radical-membership prover. Each conclusion g is proved iff 1 lies in
/// (hypotheses, 1 - z*g); Generic mode also adjoins 1 - w*D where D is the
/// product of the nondegeneracy conditions Wu's method would report.
ProofOutcome groebner_prove(const algebra::PolynomialSystem& sys, const Deadline& deadline,
                            GroebnerMode mode = GroebnerMode::Generic, bool trace = false);

} // namespace gatp::prover
