#ifndef RCCMO_SELECTION_HPP
#define RCCMO_SELECTION_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rccmo/types.hpp"

namespace rccmo {

/// Pareto dominance (minimization): a <= b everywhere and a < b somewhere.
inline bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dominates: length mismatch");
  bool strict = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strict = true;
  }
  return strict;
}

/// Constrained dominance: smaller violation wins outright; equal violations
/// fall back to Pareto dominance on the keys.
inline bool constrained_dominates(const std::vector<double>& ka, double va,
                                  const std::vector<double>& kb, double vb) {
  if (va < vb) return true;
  if (va > vb) return false;
  return dominates(ka, kb);
}

/// Front numbers (1-based) by pairwise dominance; O(n^2) in comparisons.
inline std::vector<int> nondominated_sort(const std::vector<std::vector<double>>& keys,
                                          const std::vector<double>& viols) {
  const std::size_t n = keys.size();
  std::vector<int> front(n, 0);
  std::vector<int> dom_count(n, 0);
  std::vector<std::vector<int>> dominated(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (constrained_dominates(keys[i], viols[i], keys[j], viols[j])) {
        dominated[i].push_back(static_cast<int>(j));
        ++dom_count[j];
      } else if (constrained_dominates(keys[j], viols[j], keys[i], viols[i])) {
        dominated[j].push_back(static_cast<int>(i));
        ++dom_count[i];
      }
    }
  }
  std::vector<int> current;
  for (std::size_t i = 0; i < n; ++i)
    if (dom_count[i] == 0) {
      front[i] = 1;
      current.push_back(static_cast<int>(i));
    }
  int level = 1;
  while (!current.empty()) {
    std::vector<int> next;
    for (int i : current)
      for (int j : dominated[i])
        if (--dom_count[j] == 0) {
          front[j] = level + 1;
          next.push_back(j);
        }
    ++level;
    current = std::move(next);
  }
  return front;
}

inline std::vector<int> nondominated_sort(const std::vector<std::vector<double>>& keys) {
  return nondominated_sort(keys, std::vector<double>(keys.size(), 0.0));
}

/// Min-max normalization per coordinate; constant coordinates map to 0.
inline std::vector<std::vector<double>> minmax_normalize(
    const std::vector<std::vector<double>>& points) {
  if (points.empty()) return {};
  const std::size_t m = points[0].size();
  std::vector<double> lo(m, kInf), hi(m, -kInf);
  for (const auto& p : points)
    for (std::size_t k = 0; k < m; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  std::vector<std::vector<double>> out(points.size(), std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t k = 0; k < m; ++k) {
      const double range = hi[k] - lo[k];
      out[i][k] = (range > 0.0 && std::isfinite(range))
                      ? (points[i][k] - lo[k]) / range
                      : 0.0;
    }
  return out;
}

/// SPEA2 k-th nearest neighbor density, D(i) = 1 / (sigma_k + 2), computed
/// on min-max normalized coordinates. k = floor(sqrt(n)), at least 1; a
/// single point uses sigma = 0.
inline std::vector<double> spea2_density(const std::vector<std::vector<double>>& points) {
  const std::size_t n = points.size();
  std::vector<double> density(n, 0.5);
  if (n <= 1) return density;
  const auto norm = minmax_normalize(points);
  const std::size_t k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n)))));
  std::vector<double> dist(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t w = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double s = 0.0;
      for (std::size_t c = 0; c < norm[i].size(); ++c) {
        const double d = norm[i][c] - norm[j][c];
        s += d * d;
      }
      dist[w++] = std::sqrt(s);
    }
    std::nth_element(dist.begin(), dist.begin() + (std::min(k, n - 1) - 1), dist.end());
    density[i] = 1.0 / (dist[std::min(k, n - 1) - 1] + 2.0);
  }
  return density;
}

/// SPEA2 fitness = raw strength sum + density. Non-dominated points end up
/// strictly below 1.
inline std::vector<double> spea2_fitness(const std::vector<std::vector<double>>& points) {
  const std::size_t n = points.size();
  if (n == 0) return {};
  std::vector<int> strength(n, 0);
  std::vector<std::vector<bool>> dom(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && dominates(points[i], points[j])) {
        dom[i][j] = true;
        ++strength[i];
      }
  std::vector<double> fit = spea2_density(points);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (dom[j][i]) fit[i] += strength[j];
  return fit;
}

/// SPEA2 archive truncation: repeatedly remove the member whose sorted
/// vector of distances to the survivors is lexicographically smallest, until
/// `capacity` remain. Distances are Euclidean over min-max normalized keys;
/// a full tie removes the younger solution. Returns kept indices.
inline std::vector<std::size_t> spea2_truncate(const std::vector<const Solution*>& set,
                                               const std::vector<std::vector<double>>& keys,
                                               std::size_t capacity) {
  const std::size_t n = set.size();
  std::vector<std::size_t> kept;
  if (n <= capacity) {
    kept.resize(n);
    std::iota(kept.begin(), kept.end(), 0);
    return kept;
  }
  const auto norm = minmax_normalize(keys);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < norm[i].size(); ++c) {
        const double diff = norm[i][c] - norm[j][c];
        s += diff * diff;
      }
      d[i][j] = d[j][i] = std::sqrt(s);
    }
  // Neighbor lists are sorted once; removals are handled by skipping dead
  // entries during comparison instead of re-sorting.
  std::vector<std::vector<std::pair<double, std::size_t>>> nb(n);
  for (std::size_t i = 0; i < n; ++i) {
    nb[i].reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) nb[i].emplace_back(d[i][j], j);
    std::sort(nb[i].begin(), nb[i].end());
  }
  std::vector<char> dead(n, 0);
  auto lex_cmp = [&](std::size_t a, std::size_t b) {
    std::size_t ia = 0, ib = 0;
    while (true) {
      while (ia < nb[a].size() && dead[nb[a][ia].second]) ++ia;
      while (ib < nb[b].size() && dead[nb[b][ib].second]) ++ib;
      if (ia >= nb[a].size() || ib >= nb[b].size()) return 0;
      if (nb[a][ia].first < nb[b][ib].first) return -1;
      if (nb[a][ia].first > nb[b][ib].first) return 1;
      ++ia;
      ++ib;
    }
  };
  std::size_t remaining = n;
  while (remaining > capacity) {
    std::size_t worst = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (dead[i]) continue;
      if (worst == n) {
        worst = i;
        continue;
      }
      const int c = lex_cmp(i, worst);
      if (c < 0 || (c == 0 && set[i]->eval_id > set[worst]->eval_id)) worst = i;
    }
    dead[worst] = 1;
    --remaining;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!dead[i]) kept.push_back(i);
  return kept;
}

/// Indices of `count` solutions with the smallest score; eval_id breaks ties.
inline std::vector<std::size_t> pick_best(const std::vector<const Solution*>& pool,
                                          const std::vector<double>& score,
                                          std::size_t count) {
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] < score[b];
    return pool[a]->eval_id < pool[b]->eval_id;
  });
  idx.resize(std::min(count, idx.size()));
  return idx;
}

/// Environmental selection under a view. Constrained views keep
/// view-feasible solutions first (by SPEA2 fitness on the projected keys),
/// then fill with view-infeasible ones by ascending violation. An
/// over-capacity non-dominated tier is thinned with SPEA2's iterative
/// nearest-neighbor truncation, which keeps the archive stable between
/// generations.
inline std::vector<Solution> environmental_selection(const std::vector<Solution>& pool,
                                                     std::size_t capacity,
                                                     const SelectionView& view) {
  if (capacity == 0)
    throw std::invalid_argument("environmental_selection: capacity must be >= 1");
  if (pool.size() <= capacity) return pool;

  std::vector<const Solution*> ptrs(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) ptrs[i] = &pool[i];

  auto project = [&](const std::vector<const Solution*>& set) {
    std::vector<std::vector<double>> keys(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) keys[i] = view.key(*set[i]);
    return keys;
  };

  std::vector<Solution> out;
  out.reserve(capacity);

  auto keep_by_fitness = [&](const std::vector<const Solution*>& set, std::size_t cap) {
    const auto keys = project(set);
    auto fit = spea2_fitness(keys);
    for (std::size_t i = 0; i < set.size(); ++i)
      if (set[i]->degenerate) fit[i] = kInf;
    std::vector<const Solution*> tier;
    std::vector<std::vector<double>> tier_keys;
    for (std::size_t i = 0; i < set.size(); ++i)
      if (fit[i] < 1.0) {
        tier.push_back(set[i]);
        tier_keys.push_back(keys[i]);
      }
    if (tier.size() > cap) {
      for (std::size_t i : spea2_truncate(tier, tier_keys, cap)) out.push_back(*tier[i]);
    } else {
      for (std::size_t i : pick_best(set, fit, cap)) out.push_back(*set[i]);
    }
  };

  if (view.constrained()) {
    std::vector<const Solution*> feas, infeas;
    for (const Solution* s : ptrs)
      (view.violation(*s) == 0.0 ? feas : infeas).push_back(s);
    if (feas.size() >= capacity) {
      keep_by_fitness(feas, capacity);
    } else {
      for (const Solution* s : feas) out.push_back(*s);
      std::vector<double> v(infeas.size());
      for (std::size_t i = 0; i < infeas.size(); ++i) v[i] = view.violation(*infeas[i]);
      for (std::size_t i : pick_best(infeas, v, capacity - feas.size()))
        out.push_back(*infeas[i]);
    }
  } else {
    keep_by_fitness(ptrs, capacity);
  }
  return out;
}

}  // namespace rccmo

#endif  // RCCMO_SELECTION_HPP
