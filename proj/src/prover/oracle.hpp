#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "algebra/algebraizer.hpp"

namespace gatp::prover {

/// Exact coordinates for every point plus the induced variable values.
struct Model {
  std::map<poly::Var, Rational> values;
  std::map<problem::PointName, std::pair<Rational, Rational>> points;
};

struct SamplerOptions {
  /// Integer draws are uniform in [-bound, bound].
  std::int64_t bound = 10000;
  /// Attempts per sample before giving up on a degenerate construction.
  std::size_t retry_cap = 100;
};

class DegenerateExhausted : public Error {
public:
  using Error::Error;
};

struct CheckResult {
  bool consistent = true;
  std::size_t samples_used = 0;
  std::size_t resamples = 0;
  std::optional<Model> counterexample;
  std::optional<std::size_t> failing_conclusion;
  Rational failing_value;
};

/// Seeded draw of one model by solving the construction step by step.
/// Points on circles come from the rational parametrisation of the circle,
/// so every coordinate is exact. Returns nullopt when the draw hits a
/// degenerate configuration (parallel lines, vertical line for on_line,
/// collinear triangle, coincident line points).
std::optional<Model> sample_model(const algebra::PolynomialSystem& sys, std::mt19937_64& rng,
                                  const SamplerOptions& options = {});

/// Evaluates every conclusion on `samples` random models that also keep
/// each of `nonzero` away from zero. Exact; no tolerance anywhere.
CheckResult numeric_check(const algebra::PolynomialSystem& sys, std::size_t samples,
                          std::uint64_t seed,
                          const std::vector<poly::Polynomial>& nonzero = {},
                          const SamplerOptions& options = {});

/// Human-readable model, one point per line in construction order.
std::string describe_model(const algebra::PolynomialSystem& sys, const Model& m);

} // namespace gatp::prover
