#include "algebra/algebraizer.hpp"

namespace gatp::algebra {

using problem::PredicateKind;
using problem::StepKind;

std::string Variable::name() const {
  return (kind == VarKind::Parameter ? "u" : "x") + std::to_string(index);
}

std::optional<std::size_t> PolynomialSystem::dependent_rank(Var v) const {
  for (std::size_t i = 0; i < dependents.size(); ++i)
    if (dependents[i] == v) return i;
  return std::nullopt;
}

poly::VarNamer PolynomialSystem::namer() const {
  return [this](Var v) { return var_name(v); };
}

std::string PolynomialSystem::format(const Polynomial& p) const {
  std::vector<Var> precedence;
  for (Var v = static_cast<Var>(variables.size()); v-- > 0;) precedence.push_back(v);
  // Extra variables (e.g. Rabinowitsch slacks) rank above the system's.
  auto vars = p.variables();
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    if (*it >= variables.size()) precedence.insert(precedence.begin(), *it);
  poly::TermOrder order(poly::OrderKind::DegRevLex, std::move(precedence));
  return poly::to_string(p, order, [this](Var v) {
    return v < variables.size() ? var_name(v) : "t" + std::to_string(v);
  });
}

Polynomial collinearity(const Coordinate& a, const Coordinate& b, const Coordinate& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

Polynomial cross_difference(const Coordinate& a, const Coordinate& b,
                            const Coordinate& c, const Coordinate& d) {
  return (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x);
}

Polynomial dot_product(const Coordinate& a, const Coordinate& b, const Coordinate& c,
                       const Coordinate& d) {
  return (b.x - a.x) * (d.x - c.x) + (b.y - a.y) * (d.y - c.y);
}

Polynomial squared_distance(const Coordinate& a, const Coordinate& b) {
  Polynomial dx = b.x - a.x;
  Polynomial dy = b.y - a.y;
  return dx * dx + dy * dy;
}

std::vector<Polynomial> translate_predicate(const problem::Predicate& pred,
                                            const CoordinateAssignment& coords) {
  std::vector<const Coordinate*> pt;
  for (const auto& name : pred.points) pt.push_back(&coords.at(name));
  switch (pred.kind) {
  case PredicateKind::Collinear:
    return {collinearity(*pt[0], *pt[1], *pt[2])};
  case PredicateKind::Parallel:
    return {cross_difference(*pt[0], *pt[1], *pt[2], *pt[3])};
  case PredicateKind::Perpendicular:
    return {dot_product(*pt[0], *pt[1], *pt[2], *pt[3])};
  case PredicateKind::EqDist:
    return {squared_distance(*pt[0], *pt[1]) - squared_distance(*pt[2], *pt[3])};
  case PredicateKind::MidpointOf:
    return {Rational(2) * pt[0]->x - pt[1]->x - pt[2]->x,
            Rational(2) * pt[0]->y - pt[1]->y - pt[2]->y};
  case PredicateKind::OnCircleOf:
    return {squared_distance(*pt[1], *pt[0]) - squared_distance(*pt[1], *pt[2])};
  }
  return {};
}

namespace {

class Builder {
public:
  explicit Builder(const problem::Problem& p) { sys_.problem = p; }

  PolynomialSystem run() {
    const auto& steps = sys_.problem.steps;
    for (step_ = 0; step_ < steps.size(); ++step_) construct(steps[step_]);
    for (std::size_t i = 0; i < sys_.problem.conjectures.size(); ++i)
      for (auto& g : translate_predicate(sys_.problem.conjectures[i], sys_.coords)) {
        sys_.conclusions.push_back(std::move(g));
        sys_.conclusion_source.push_back(i);
      }
    return std::move(sys_);
  }

private:
  Polynomial fresh(VarKind kind, const problem::PointName& point, Axis axis) {
    auto id = static_cast<Var>(sys_.variables.size());
    auto& list = kind == VarKind::Parameter ? sys_.params : sys_.dependents;
    list.push_back(id);
    sys_.variables.push_back(Variable{kind, list.size(), point, axis});
    return Polynomial::variable(id);
  }

  const Coordinate& at(const problem::PointName& name) const { return sys_.coords.at(name); }

  void hypothesis(Polynomial h) {
    sys_.hypotheses.push_back(std::move(h));
    sys_.hypothesis_step.push_back(step_);
  }

  void hint(const Polynomial& h, const std::string& what) {
    if (h.is_zero()) degenerate(what);
    if (!h.is_constant()) sys_.ndg_hints.push_back(h.primitive_part());
  }

  [[noreturn]] void degenerate(const std::string& what) const {
    throw AlgebraizeError(step_, "degenerate construction '" +
                                     problem::render_step(sys_.problem.steps[step_]) +
                                     "': " + what);
  }

  void construct(const problem::ConstructionStep& s) {
    if (problem::is_degenerate(s)) degenerate("repeated points");
    const auto& pts = s.points;
    const auto& name = pts[0];
    Coordinate c;
    switch (s.kind) {
    case StepKind::Free:
      c.x = fresh(VarKind::Parameter, name, Axis::X);
      c.y = fresh(VarKind::Parameter, name, Axis::Y);
      break;
    case StepKind::Fixed:
      c.x = s.x;
      c.y = s.y;
      break;
    case StepKind::Midpoint: {
      const auto& a = at(pts[1]);
      const auto& b = at(pts[2]);
      c.x = fresh(VarKind::Dependent, name, Axis::X);
      c.y = fresh(VarKind::Dependent, name, Axis::Y);
      hypothesis(Rational(2) * c.x - a.x - b.x);
      hypothesis(Rational(2) * c.y - a.y - b.y);
      break;
    }
    case StepKind::OnLine: {
      const auto& a = at(pts[1]);
      const auto& b = at(pts[2]);
      hint(b.x - a.x, "line is vertical, so x cannot be the free coordinate");
      c.x = fresh(VarKind::Parameter, name, Axis::X);
      c.y = fresh(VarKind::Dependent, name, Axis::Y);
      hypothesis(collinearity(a, b, c));
      break;
    }
    case StepKind::InterLL: {
      const auto& a = at(pts[1]);
      const auto& b = at(pts[2]);
      const auto& p = at(pts[3]);
      const auto& q = at(pts[4]);
      hint(cross_difference(a, b, p, q), "lines are parallel");
      c.x = fresh(VarKind::Dependent, name, Axis::X);
      c.y = fresh(VarKind::Dependent, name, Axis::Y);
      hypothesis(collinearity(a, b, c));
      hypothesis(collinearity(p, q, c));
      break;
    }
    case StepKind::Foot: {
      const auto& p = at(pts[1]);
      const auto& a = at(pts[2]);
      const auto& b = at(pts[3]);
      hint(squared_distance(a, b), "line points coincide");
      c.x = fresh(VarKind::Dependent, name, Axis::X);
      c.y = fresh(VarKind::Dependent, name, Axis::Y);
      hypothesis(collinearity(a, b, c));
      hypothesis(dot_product(c, p, a, b));
      break;
    }
    case StepKind::OnCircle: {
      const auto& o = at(pts[1]);
      const auto& a = at(pts[2]);
      c.x = fresh(VarKind::Parameter, name, Axis::X);
      c.y = fresh(VarKind::Dependent, name, Axis::Y);
      hypothesis(squared_distance(o, c) - squared_distance(o, a));
      break;
    }
    case StepKind::Circumcenter: {
      const auto& a = at(pts[1]);
      const auto& b = at(pts[2]);
      const auto& d = at(pts[3]);
      hint(collinearity(a, b, d), "triangle points are collinear");
      c.x = fresh(VarKind::Dependent, name, Axis::X);
      c.y = fresh(VarKind::Dependent, name, Axis::Y);
      hypothesis(squared_distance(c, a) - squared_distance(c, b));
      hypothesis(squared_distance(c, a) - squared_distance(c, d));
      break;
    }
    }
    sys_.coords.emplace(name, std::move(c));
  }

  PolynomialSystem sys_;
  std::size_t step_ = 0;
};

} // namespace

PolynomialSystem algebraize(const problem::Problem& p) { return Builder(p).run(); }

} // namespace gatp::algebra
