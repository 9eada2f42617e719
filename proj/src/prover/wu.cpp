#include "prover/wu.hpp"

#include <algorithm>
#include <sstream>

#include "common/stopwatch.hpp"

namespace gatp::prover {

std::optional<std::size_t> polynomial_class(const PolynomialSystem& sys, const Polynomial& p) {
  std::optional<std::size_t> best;
  for (Var v : p.variables()) {
    auto rank = sys.dependent_rank(v);
    if (rank && (!best || *rank > *best)) best = rank;
  }
  return best;
}

AscendingChain wu_triangulate(const PolynomialSystem& sys, const Deadline& deadline) {
  std::vector<Polynomial> pool;
  for (const auto& h : sys.hypotheses)
    if (!h.is_zero()) pool.push_back(h.primitive_part());

  auto admit = [&](Polynomial r) {
    if (r.is_zero()) return;
    if (!polynomial_class(sys, r))
      throw InconsistentSystem("hypotheses are contradictory: reduction produced " +
                               sys.format(r));
    pool.push_back(r.primitive_part());
  };
  // Dependent-free hypotheses are contradictions from the start.
  {
    auto initial = std::move(pool);
    pool.clear();
    for (auto& h : initial) admit(std::move(h));
  }

  std::vector<ChainMember> reversed;
  for (std::size_t rank = sys.dependents.size(); rank-- > 0;) {
    const Var main = sys.dependents[rank];
    std::vector<Polynomial> level;
    std::vector<Polynomial> rest;
    for (auto& p : pool) {
      auto cls = polynomial_class(sys, p);
      (cls && *cls == rank ? level : rest).push_back(std::move(p));
    }
    pool = std::move(rest);

    while (level.size() > 1) {
      deadline.poll();
      auto pivot_it = std::min_element(level.begin(), level.end(),
                                       [main](const Polynomial& a, const Polynomial& b) {
                                         auto da = a.degree_in(main), db = b.degree_in(main);
                                         if (da != db) return da < db;
                                         return a.size() < b.size();
                                       });
      Polynomial pivot = *pivot_it;
      level.erase(pivot_it);
      std::vector<Polynomial> kept{pivot};
      for (const auto& f : level) {
        Polynomial r = poly::pseudo_remainder(f, pivot, main);
        if (r.is_zero()) continue;
        auto cls = polynomial_class(sys, r);
        if (cls && *cls == rank)
          kept.push_back(r.primitive_part());
        else
          admit(std::move(r));
      }
      level = std::move(kept);
    }
    if (level.size() == 1) {
      Polynomial init = level.front().leading_coefficient_in(main);
      reversed.push_back(ChainMember{std::move(level.front()), main, std::move(init)});
    }
  }
  AscendingChain chain;
  chain.members.assign(std::make_move_iterator(reversed.rbegin()),
                       std::make_move_iterator(reversed.rend()));
  return chain;
}

Polynomial wu_remainder(const AscendingChain& chain, const Polynomial& g,
                        const Deadline& deadline) {
  Polynomial r = g;
  for (auto it = chain.members.rbegin(); it != chain.members.rend() && !r.is_zero(); ++it) {
    deadline.poll();
    if (r.degree_in(it->main) == 0) continue;
    r = poly::pseudo_remainder(r, it->poly, it->main).primitive_part();
  }
  return r;
}

std::vector<Polynomial> nondegeneracy_conditions(const PolynomialSystem& sys,
                                                 const AscendingChain& chain) {
  std::vector<Polynomial> out;
  auto add = [&out](const Polynomial& p) {
    if (p.is_constant()) return;
    Polynomial n = p.primitive_part();
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(std::move(n));
  };
  for (const auto& m : chain.members) add(m.initial);
  for (const auto& h : sys.ndg_hints) add(h);
  return out;
}

ProofOutcome wu_prove(const PolynomialSystem& sys, const Deadline& deadline, bool trace) {
  Stopwatch clock;
  ProofOutcome out;
  std::ostringstream log;
  try {
    bool all_zero = std::all_of(sys.conclusions.begin(), sys.conclusions.end(),
                                [](const Polynomial& g) { return g.is_zero(); });
    AscendingChain chain;
    if (!all_zero) chain = wu_triangulate(sys, deadline);
    if (trace) {
      log << "characteristic set (" << chain.members.size() << " members)\n";
      for (const auto& m : chain.members)
        log << "  [" << sys.var_name(m.main) << "] " << sys.format(m.poly)
            << "    initial: " << sys.format(m.initial) << "\n";
    }
    out.status = Status::Proved;
    for (std::size_t i = 0; i < sys.conclusions.size(); ++i) {
      const auto& g = sys.conclusions[i];
      Polynomial r = g.is_zero() ? Polynomial() : wu_remainder(chain, g, deadline);
      if (trace) {
        log << "conclusion " << i + 1 << ": " << sys.format(g) << "\n"
            << "  final remainder: " << sys.format(r) << "\n";
      }
      if (!r.is_zero()) {
        out.status = Status::Unproved;
        if (!trace) log << "conclusion " << i + 1 << " final remainder: " << sys.format(r) << "\n";
        break;
      }
    }
    if (out.status == Status::Proved && !all_zero) {
      out.ndg_conditions = nondegeneracy_conditions(sys, chain);
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
