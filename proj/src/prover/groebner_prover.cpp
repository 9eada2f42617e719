#include "prover/groebner_prover.hpp"

#include <algorithm>
#include <sstream>

#include "common/stopwatch.hpp"
#include "poly/groebner.hpp"
#include "prover/wu.hpp"

namespace gatp::prover {

ProofOutcome groebner_prove(const algebra::PolynomialSystem& sys, const Deadline& deadline,
                            GroebnerMode mode, bool trace) {
  Stopwatch clock;
  ProofOutcome out;
  std::ostringstream log;
  try {
    const auto z = static_cast<Var>(sys.variables.size());
    const auto w = z + 1;
    // DegRevLex with slack variables on top, then dependents (latest
    // first), then parameters.
    std::vector<Var> precedence{w, z};
    for (auto it = sys.dependents.rbegin(); it != sys.dependents.rend(); ++it)
      precedence.push_back(*it);
    for (auto it = sys.params.rbegin(); it != sys.params.rend(); ++it)
      precedence.push_back(*it);
    const poly::TermOrder order(poly::OrderKind::DegRevLex, precedence);

    bool all_zero = std::all_of(sys.conclusions.begin(), sys.conclusions.end(),
                                [](const Polynomial& g) { return g.is_zero(); });
    std::vector<Polynomial> base = sys.hypotheses;
    std::vector<Polynomial> ndg;
    if (mode == GroebnerMode::Generic && !all_zero) {
      ndg = nondegeneracy_conditions(sys, wu_triangulate(sys, deadline));
      if (!ndg.empty()) {
        Polynomial product(1);
        for (const auto& d : ndg) product *= d;
        base.push_back(Polynomial(1) - Polynomial::variable(w) * product);
      }
    }
    if (trace)
      log << "mode " << to_string(mode) << ", " << base.size() << " generators before "
          << "the Rabinowitsch slack\n";

    out.status = Status::Proved;
    for (std::size_t i = 0; i < sys.conclusions.size(); ++i) {
      const auto& g = sys.conclusions[i];
      if (g.is_zero()) {
        if (trace) log << "conclusion " << i + 1 << ": zero polynomial\n";
        continue;
      }
      auto gens = base;
      gens.push_back(Polynomial(1) - Polynomial::variable(z) * g);
      poly::BuchbergerStats stats;
      auto basis = poly::buchberger(gens, order, deadline, &stats);
      bool unit = basis.size() == 1 && basis.front() == Polynomial(1);
      if (trace || !unit) {
        log << "conclusion " << i + 1 << ": " << sys.format(g) << "\n"
            << "  basis size " << basis.size() << ", pairs " << stats.pairs_considered
            << " (coprime skips " << stats.pairs_skipped_coprime << ", chain skips "
            << stats.pairs_skipped_chain << ")" << (unit ? ", 1 in ideal\n" : ", 1 not in ideal\n");
      }
      if (!unit) {
        out.status = Status::Unproved;
        break;
      }
    }
    if (out.status == Status::Proved) {
      out.ndg_conditions = std::move(ndg);
      for (const auto& c : out.ndg_conditions) out.ndg_text.push_back(sys.format(c));
    }
  } catch (const TimeoutError&) {
    out = ProofOutcome{};
    out.status = Status::Timeout;
    log.str("");
  } catch (const InconsistentSystem& e) {
    out = ProofOutcome{};
    out.status = Status::Error;
    out.message = e.what();
  }
  if (!log.str().empty()) out.trace = log.str();
  out.cpu_seconds = clock.cpu_seconds();
  out.wall_seconds = clock.wall_seconds();
  return out;
}

} // namespace gatp::prover
