#include "prover/oracle.hpp"

#include <sstream>

namespace gatp::prover {

using problem::StepKind;

namespace {

struct Point {
  Rational x, y;
};

Rational draw(std::mt19937_64& rng, std::int64_t bound) {
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  return Rational(static_cast<long>(static_cast<std::int64_t>(rng() % span) - bound));
}

Rational cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  return (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x);
}

} // namespace

std::optional<Model> sample_model(const algebra::PolynomialSystem& sys, std::mt19937_64& rng,
                                  const SamplerOptions& options) {
  std::map<problem::PointName, Point> pts;
  for (const auto& s : sys.problem.steps) {
    const auto& a = s.points;
    auto at = [&](std::size_t i) -> const Point& { return pts.at(a[i]); };
    Point p;
    switch (s.kind) {
    case StepKind::Free:
      p.x = draw(rng, options.bound);
      p.y = draw(rng, options.bound);
      break;
    case StepKind::Fixed:
      p = {s.x, s.y};
      break;
    case StepKind::Midpoint:
      p.x = (at(1).x + at(2).x) / 2;
      p.y = (at(1).y + at(2).y) / 2;
      break;
    case StepKind::OnLine: {
      const Point& l0 = at(1);
      const Point& l1 = at(2);
      if (l0.x == l1.x) return std::nullopt;
      p.x = draw(rng, options.bound);
      p.y = l0.y + (p.x - l0.x) * (l1.y - l0.y) / (l1.x - l0.x);
      break;
    }
    case StepKind::InterLL: {
      const Point &l0 = at(1), &l1 = at(2), &m0 = at(3), &m1 = at(4);
      Rational den = cross(l0, l1, m0, m1);
      if (den == 0) return std::nullopt;
      Rational t = cross(l0, m0, m0, m1) / den;
      p.x = l0.x + t * (l1.x - l0.x);
      p.y = l0.y + t * (l1.y - l0.y);
      break;
    }
    case StepKind::Foot: {
      const Point &q = at(1), &l0 = at(2), &l1 = at(3);
      Rational dx = l1.x - l0.x, dy = l1.y - l0.y;
      Rational len2 = dx * dx + dy * dy;
      if (len2 == 0) return std::nullopt;
      Rational t = ((q.x - l0.x) * dx + (q.y - l0.y) * dy) / len2;
      p.x = l0.x + t * dx;
      p.y = l0.y + t * dy;
      break;
    }
    case StepKind::OnCircle: {
      // Rotate A about O by the angle with tan(theta/2) = t.
      const Point &o = at(1), &r = at(2);
      Rational den = draw(rng, options.bound);
      if (den < 0) den = -den;
      Rational t = draw(rng, options.bound) / (den + 1);
      Rational cos_t = (1 - t * t) / (1 + t * t);
      Rational sin_t = 2 * t / (1 + t * t);
      Rational dx = r.x - o.x, dy = r.y - o.y;
      p.x = o.x + cos_t * dx - sin_t * dy;
      p.y = o.y + sin_t * dx + cos_t * dy;
      break;
    }
    case StepKind::Circumcenter: {
      const Point &pa = at(1), &pb = at(2), &pc = at(3);
      Rational d = 2 * cross(pa, pb, pa, pc);
      if (d == 0) return std::nullopt;
      Rational bx = pb.x - pa.x, by = pb.y - pa.y;
      Rational cx = pc.x - pa.x, cy = pc.y - pa.y;
      Rational b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
      p.x = pa.x + (cy * b2 - by * c2) / d;
      p.y = pa.y + (bx * c2 - cx * b2) / d;
      break;
    }
    }
    pts.emplace(s.introduced(), std::move(p));
  }

  Model m;
  for (const auto& [name, p] : pts) {
    m.points.emplace(name, std::make_pair(p.x, p.y));
    const auto& c = sys.coords.at(name);
    for (const auto& [coord, value] : {std::pair{&c.x, &p.x}, std::pair{&c.y, &p.y}}) {
      if (coord->is_constant()) continue;
      m.values.emplace(coord->variables().front(), *value);
    }
  }
  return m;
}

CheckResult numeric_check(const algebra::PolynomialSystem& sys, std::size_t samples,
                          std::uint64_t seed, const std::vector<poly::Polynomial>& nonzero,
                          const SamplerOptions& options) {
  if (samples == 0) throw std::invalid_argument("numeric_check needs at least one sample");
  // Nothing random to draw: one model decides.
  bool deterministic = sys.params.empty();
  if (deterministic) samples = 1;

  std::mt19937_64 rng(seed);
  CheckResult out;
  for (std::size_t s = 0; s < samples; ++s) {
    std::optional<Model> model;
    for (std::size_t attempt = 0; attempt < options.retry_cap; ++attempt) {
      model = sample_model(sys, rng, options);
      if (model) {
        bool ok = true;
        for (const auto& h : sys.ndg_hints) ok = ok && h.evaluate(model->values) != 0;
        for (const auto& h : nonzero) ok = ok && h.evaluate(model->values) != 0;
        if (ok) break;
        model.reset();
      }
      ++out.resamples;
      if (deterministic) break;
    }
    if (!model)
      throw DegenerateExhausted("construction of " + sys.problem.id +
                                " stayed degenerate after " +
                                std::to_string(options.retry_cap) + " draws");
    ++out.samples_used;
    for (std::size_t i = 0; i < sys.conclusions.size(); ++i) {
      Rational v = sys.conclusions[i].evaluate(model->values);
      if (v != 0) {
        out.consistent = false;
        out.failing_conclusion = i;
        out.failing_value = v;
        out.counterexample = std::move(model);
        return out;
      }
    }
  }
  return out;
}

std::string describe_model(const algebra::PolynomialSystem& sys, const Model& m) {
  std::ostringstream out;
  for (const auto& name : sys.problem.points()) {
    const auto& [x, y] = m.points.at(name);
    out << name << " = (" << gatp::to_string(x) << ", " << gatp::to_string(y) << ")\n";
  }
  return out.str();
}

} // namespace gatp::prover
