#ifndef RCCMO_VARIATION_HPP
#define RCCMO_VARIATION_HPP

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "rccmo/types.hpp"

namespace rccmo {

using Rng = std::mt19937_64;

struct VariationParams {
  double de_f = 0.5;    // DE scale factor
  double de_cr = 0.9;   // binomial crossover rate
  double pm = -1.0;     // per-variable mutation probability; < 0 means 1/d
  double eta_m = 20.0;  // polynomial mutation distribution index
};

/// Polynomial mutation, each coordinate flipped with probability pm; the
/// result stays inside the box.
inline std::vector<double> polynomial_mutation(std::vector<double> x,
                                               const VariationParams& params,
                                               const Bounds& bounds, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double pm = params.pm < 0.0 ? 1.0 / static_cast<double>(x.size()) : params.pm;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (unit(rng) >= pm) continue;
    const double lb = bounds.lower[j], ub = bounds.upper[j];
    const double range = ub - lb;
    if (range <= 0.0) continue;
    const double d1 = (x[j] - lb) / range;
    const double d2 = (ub - x[j]) / range;
    const double u = unit(rng);
    const double mpow = 1.0 / (params.eta_m + 1.0);
    double dq;
    if (u < 0.5) {
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, params.eta_m + 1.0);
      dq = std::pow(val, mpow) - 1.0;
    } else {
      const double val =
          2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, params.eta_m + 1.0);
      dq = 1.0 - std::pow(val, mpow);
    }
    x[j] = bounds.clamp(j, x[j] + dq * range);
  }
  return x;
}

/// DE/rand/1/bin offspring followed by polynomial mutation. Targets cycle
/// through the parent list; with fewer than 4 parents the base indices are
/// sampled with replacement.
inline std::vector<std::vector<double>> de_offspring(
    const std::vector<std::vector<double>>& parents, std::size_t count,
    const VariationParams& params, const Bounds& bounds, Rng& rng) {
  if (parents.empty())
    throw std::invalid_argument("de_offspring: empty parent pool");
  const std::size_t np = parents.size();
  const std::size_t d = parents[0].size();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, np - 1);
  std::uniform_int_distribution<std::size_t> pickd(0, d - 1);

  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t target = t % np;
    std::size_t r1, r2, r3;
    if (np >= 4) {
      do { r1 = pick(rng); } while (r1 == target);
      do { r2 = pick(rng); } while (r2 == target || r2 == r1);
      do { r3 = pick(rng); } while (r3 == target || r3 == r1 || r3 == r2);
    } else {
      r1 = pick(rng);
      r2 = pick(rng);
      r3 = pick(rng);
    }
    const std::size_t jrand = pickd(rng);
    std::vector<double> trial = parents[target];
    for (std::size_t j = 0; j < d; ++j) {
      if (unit(rng) < params.de_cr || j == jrand)
        trial[j] = parents[r1][j] + params.de_f * (parents[r2][j] - parents[r3][j]);
    }
    trial = polynomial_mutation(std::move(trial), params, bounds, rng);
    for (std::size_t j = 0; j < d; ++j) trial[j] = bounds.clamp(j, trial[j]);
    out.push_back(std::move(trial));
  }
  return out;
}

}  // namespace rccmo

#endif  // RCCMO_VARIATION_HPP
