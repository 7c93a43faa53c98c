#ifndef RCCMO_METRICS_HPP
#define RCCMO_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rccmo/selection.hpp"
#include "rccmo/types.hpp"

namespace rccmo {

struct MetricResult {
  std::string name;
  double value = 0.0;
  bool defined = true;
  std::size_t sample_size = 0;
  std::string details;
};

/// Inverted generational distance: mean distance from each reference point
/// to its closest obtained point. Callers pass only feasible objective
/// vectors; an empty obtained set yields an undefined result.
inline MetricResult igd(const std::vector<std::vector<double>>& reference,
                        const std::vector<std::vector<double>>& obtained) {
  if (reference.empty()) throw std::invalid_argument("igd: empty reference set");
  MetricResult r{"igd", 0.0, true, obtained.size(), ""};
  if (obtained.empty()) {
    r.defined = false;
    return r;
  }
  const std::size_t m = reference[0].size();
  double total = 0.0;
  for (const auto& v : reference) {
    if (v.size() != m) throw std::invalid_argument("igd: dimension mismatch");
    double best = kInf;
    for (const auto& q : obtained) {
      if (q.size() != m) throw std::invalid_argument("igd: dimension mismatch");
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double d = v[k] - q[k];
        s += d * d;
      }
      best = std::min(best, s);
    }
    total += std::sqrt(best);
  }
  r.value = total / static_cast<double>(reference.size());
  return r;
}

/// Exact bi-objective hypervolume by a sorted sweep.
inline double hypervolume_2d_exact(std::vector<std::vector<double>> pts,
                                   const std::vector<double>& ref) {
  // Keep only points strictly dominating the reference point.
  std::erase_if(pts, [&](const std::vector<double>& p) {
    return !(p[0] < ref[0] && p[1] < ref[1]);
  });
  if (pts.empty()) return 0.0;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    return a[1] < b[1];
  });
  double hv = 0.0;
  double prev_f2 = ref[1];
  for (const auto& p : pts) {
    if (p[1] < prev_f2) {
      hv += (ref[0] - p[0]) * (prev_f2 - p[1]);
      prev_f2 = p[1];
    }
  }
  return hv;
}

/// Monte Carlo hypervolume over the box [componentwise min, ref].
inline double hypervolume_monte_carlo(const std::vector<std::vector<double>>& pts,
                                      const std::vector<double>& ref,
                                      std::size_t samples, std::uint64_t seed) {
  const std::size_t m = ref.size();
  std::vector<std::vector<double>> dom;
  for (const auto& p : pts) {
    bool strict = true;
    for (std::size_t k = 0; k < m; ++k)
      if (!(p[k] < ref[k])) { strict = false; break; }
    if (strict) dom.push_back(p);
  }
  if (dom.empty()) return 0.0;
  std::vector<double> lo(m, kInf);
  for (const auto& p : dom)
    for (std::size_t k = 0; k < m; ++k) lo[k] = std::min(lo[k], p[k]);
  double volume = 1.0;
  for (std::size_t k = 0; k < m; ++k) volume *= ref[k] - lo[k];
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t hits = 0;
  std::vector<double> z(m);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t k = 0; k < m; ++k) z[k] = lo[k] + unit(rng) * (ref[k] - lo[k]);
    for (const auto& p : dom) {
      bool covered = true;
      for (std::size_t k = 0; k < m; ++k)
        if (p[k] > z[k]) { covered = false; break; }
      if (covered) { ++hits; break; }
    }
  }
  return volume * static_cast<double>(hits) / static_cast<double>(samples);
}

/// Hypervolume relative to ref_point: exact sweep for two objectives,
/// seeded Monte Carlo (1e5 samples) beyond that.
inline MetricResult hypervolume(const std::vector<std::vector<double>>& front,
                                const std::vector<double>& ref_point,
                                std::uint64_t seed = 0) {
  for (double v : ref_point)
    if (!std::isfinite(v)) throw std::invalid_argument("hypervolume: non-finite ref");
  MetricResult r{"hv", 0.0, true, front.size(), ""};
  if (front.empty()) {
    r.details = "empty front";
    return r;
  }
  if (ref_point.size() == 2) {
    r.value = hypervolume_2d_exact(front, ref_point);
    r.details = "exact-2d";
  } else {
    constexpr std::size_t kSamples = 100000;
    r.value = hypervolume_monte_carlo(front, ref_point, kSamples, seed);
    r.details = "monte-carlo n=100000";
  }
  return r;
}

enum class RankSumVerdict { ABetter, BBetter, NoDifference };

/// Two-sided Wilcoxon rank-sum test with midranks, tie-corrected variance
/// and a normal approximation. A significant result is attributed to the
/// sample with the smaller median (metric minimized).
inline RankSumVerdict wilcoxon_rank_sum(std::vector<double> a, std::vector<double> b,
                                        double alpha) {
  if (a.size() < 5 || b.size() < 5)
    throw std::invalid_argument("wilcoxon_rank_sum: need at least 5 per sample");
  if (alpha <= 0.0 || alpha > 0.5)
    throw std::invalid_argument("wilcoxon_rank_sum: alpha out of (0, 0.5]");
  const std::size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;
  struct Item { double v; bool from_a; };
  std::vector<Item> all;
  all.reserve(n);
  for (double v : a) all.push_back({v, true});
  for (double v : b) all.push_back({v, false});
  std::stable_sort(all.begin(), all.end(),
                   [](const Item& x, const Item& y) { return x.v < y.v; });
  double w_a = 0.0;
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && all[j].v == all[i].v) ++j;
    const double t = static_cast<double>(j - i);
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // average of ranks i+1..j
    for (std::size_t k = i; k < j; ++k)
      if (all[k].from_a) w_a += midrank;
    tie_term += t * t * t - t;
    i = j;
  }
  const double nn = static_cast<double>(n);
  const double mu = static_cast<double>(n1) * (nn + 1.0) / 2.0;
  const double var = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                     ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
  if (var <= 0.0) return RankSumVerdict::NoDifference;
  double z = w_a - mu;
  z -= 0.5 * (z > 0 ? 1.0 : (z < 0 ? -1.0 : 0.0));  // continuity correction
  z /= std::sqrt(var);
  const double p = std::erfc(std::fabs(z) / std::sqrt(2.0));  // two-sided
  if (p >= alpha) return RankSumVerdict::NoDifference;
  auto median = [](std::vector<double>& s) {
    std::sort(s.begin(), s.end());
    const std::size_t k = s.size();
    return k % 2 ? s[k / 2] : 0.5 * (s[k / 2 - 1] + s[k / 2]);
  };
  const double ma = median(a), mb = median(b);
  if (ma == mb) return RankSumVerdict::NoDifference;
  return ma < mb ? RankSumVerdict::ABetter : RankSumVerdict::BBetter;
}

/// Fraction of the population with zero aggregate violation.
inline double feasibility_rate(const std::vector<Solution>& pop) {
  if (pop.empty()) throw std::invalid_argument("feasibility_rate: empty population");
  std::size_t feas = 0;
  for (const auto& s : pop)
    if (s.feasible()) ++feas;
  return static_cast<double>(feas) / static_cast<double>(pop.size());
}

}  // namespace rccmo

#endif  // RCCMO_METRICS_HPP
