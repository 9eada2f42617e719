#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "common/error.hpp"
#include "poly/polynomial.hpp"
#include "problem/problem.hpp"

namespace gatp::algebra {

using poly::Polynomial;
using poly::Var;

enum class VarKind { Parameter, Dependent };
enum class Axis { X, Y };

/// A coordinate unknown. Parameters print as u1, u2, ...; dependents as
/// x1, x2, ..., numbered in construction order within each kind.
struct Variable {
  VarKind kind;
  std::size_t index; // 1-based within its kind
  problem::PointName point;
  Axis axis;

  std::string name() const;
};

/// Coordinates of a point; each side is a constant or a single variable.
struct Coordinate {
  Polynomial x;
  Polynomial y;
};

using CoordinateAssignment = std::map<problem::PointName, Coordinate>;

struct PolynomialSystem {
  problem::Problem problem;
  /// Indexed by Var id; ids follow construction order.
  std::vector<Variable> variables;
  std::vector<Var> params;
  std::vector<Var> dependents;

  std::vector<Polynomial> hypotheses;
  std::vector<std::size_t> hypothesis_step; // originating step index
  std::vector<Polynomial> conclusions;
  std::vector<std::size_t> conclusion_source; // originating conjecture index
  /// Constructor-level nondegeneracy (nonzero) conditions.
  std::vector<Polynomial> ndg_hints;
  CoordinateAssignment coords;

  bool is_dependent(Var v) const { return variables.at(v).kind == VarKind::Dependent; }
  /// Position in `dependents`, or nullopt for parameters.
  std::optional<std::size_t> dependent_rank(Var v) const;
  std::string var_name(Var v) const { return variables.at(v).name(); }
  poly::VarNamer namer() const;
  /// Canonical text of a polynomial over this system's variables.
  std::string format(const Polynomial& p) const;
};

class AlgebraizeError : public Error {
public:
  AlgebraizeError(std::size_t step, const std::string& detail)
      : Error(detail), step(step) {}
  std::size_t step;
};

/// Coordinate translation of a problem. Free points become two parameters,
/// fixed points constants, and every other constructor introduces
/// dependents together with the equations that pin them down. Throws
/// AlgebraizeError on a construction that cannot define its point.
PolynomialSystem algebraize(const problem::Problem& p);

/// Polynomials whose common vanishing expresses the predicate.
std::vector<Polynomial> translate_predicate(const problem::Predicate& pred,
                                            const CoordinateAssignment& coords);

// Coordinate formulations shared with the oracle and tests.
Polynomial collinearity(const Coordinate& a, const Coordinate& b, const Coordinate& c);
Polynomial cross_difference(const Coordinate& a, const Coordinate& b,
                            const Coordinate& c, const Coordinate& d);
Polynomial dot_product(const Coordinate& a, const Coordinate& b, const Coordinate& c,
                       const Coordinate& d);
Polynomial squared_distance(const Coordinate& a, const Coordinate& b);

} // namespace gatp::algebra
