#ifndef RCCMO_ENGINE_HPP
#define RCCMO_ENGINE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

#include "rccmo/problems.hpp"
#include "rccmo/selection.hpp"
#include "rccmo/types.hpp"
#include "rccmo/variation.hpp"

namespace rccmo {

enum class Direction : int { Positive = 0, Negative = 1 };

struct RunConfig {
  std::size_t n = 100;           // population size
  std::int64_t max_fe = 100000;  // evaluation budget
  int v = 30;                    // interval for inactive-population updates
  double beta = 0.7;             // budget threshold for entering Stage 3
  int stability_window = 20;     // W
  double stability_tol = 1e-3;
  std::int64_t per_target_fe_cap = 0;  // 0 -> max(2000, beta*max_fe/(2*Nc))
  VariationParams variation;
  double eq_tol = 1e-4;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 5) throw std::invalid_argument("RunConfig: n must be >= 5");
    if (beta <= 0.0 || beta > 1.0) throw std::invalid_argument("RunConfig: beta in (0,1]");
    if (v < 1) throw std::invalid_argument("RunConfig: v must be >= 1");
    if (stability_window < 2) throw std::invalid_argument("RunConfig: W must be >= 2");
  }
};

struct PriorityReport {
  std::vector<double> feas_rate;     // F[i], from the positive populations
  std::vector<double> probe_infeas;  // IF[i] after isolation
  std::vector<int> ranking;          // signed priority list R
  int target = 0;                    // pc; 0 means Stage 3
  Direction direction = Direction::Positive;
};

struct TraceRecord {
  std::int64_t gen = 0;
  std::int64_t fe = 0;
  int pc = 0;
  std::vector<int> dirs;      // 0 = positive, 1 = negative
  std::vector<int> priority;  // last computed R
  int feas_main = 0;
  double min_cv_main = kInf;
};

struct RunResult {
  std::vector<Solution> final_pop;
  std::vector<TraceRecord> trace;
  std::int64_t fe_used = 0;
  // Environmental selections performed on non-active dual populations while
  // in Stage 2; bounded by 2*Nc*ceil(G/V) under the asymmetric schedule.
  std::int64_t inactive_dual_selections = 0;
  std::int64_t stage2_generations = 0;
};

/// Live state of a single run.
struct AlgorithmState {
  int pc = 0;  // Nc+1 = Stage 1, 1..Nc = Stage 2 target, 0 = Stage 3
  std::vector<Direction> dirs;
  std::vector<int> priority;
  std::set<int> processed;
  std::int64_t fe_used = 0;
  std::int64_t generation = 0;
  std::vector<Solution> main_pop;   // P_0
  std::vector<Solution> probe_pop;  // Pb
  std::vector<Solution> upf_pop;    // P_{Nc+1}
  std::vector<std::vector<Solution>> pos_pops;  // per constraint
  std::vector<std::vector<Solution>> neg_pops;
};

/// True once the last W entries of the history move by less than tol in the
/// infinity norm between consecutive generations.
inline bool stability_check(const std::deque<std::vector<double>>& history, int window,
                            double tol) {
  if (static_cast<int>(history.size()) < window) return false;
  const std::size_t start = history.size() - static_cast<std::size_t>(window);
  for (std::size_t i = start + 1; i < history.size(); ++i) {
    double delta = 0.0;
    for (std::size_t k = 0; k < history[i].size(); ++k)
      delta = std::max(delta, std::fabs(history[i][k] - history[i - 1][k]));
    if (delta >= tol) return false;
  }
  return true;
}

/// Probe update: keep candidates that dominate at least one main-population
/// member without being dominated by any; when over capacity, truncate with
/// negated-objective sorting where feasible candidates carry an infinite
/// modified violation.
inline std::vector<Solution> update_probe(const std::vector<Solution>& probe,
                                          const std::vector<Solution>& offspring,
                                          const std::vector<Solution>& main_pop,
                                          std::size_t capacity) {
  std::vector<Solution> filtered;
  auto consider = [&](const Solution& x) {
    if (x.degenerate) return;
    bool dominates_some = false;
    for (const Solution& y : main_pop) {
      if (dominates(y.objectives, x.objectives)) return;
      if (!dominates_some && dominates(x.objectives, y.objectives)) dominates_some = true;
    }
    if (dominates_some) filtered.push_back(x);
  };
  for (const Solution& s : probe) consider(s);
  for (const Solution& s : offspring) consider(s);
  if (filtered.size() <= capacity) return filtered;

  const std::size_t n = filtered.size();
  std::vector<std::vector<double>> neg_keys(n), obj(n);
  std::vector<double> mod_viol(n);
  for (std::size_t i = 0; i < n; ++i) {
    obj[i] = filtered[i].objectives;
    neg_keys[i] = obj[i];
    for (double& v : neg_keys[i]) v = -v;
    mod_viol[i] = filtered[i].feasible() ? kInf : 0.0;
  }
  const auto fronts = nondominated_sort(neg_keys, mod_viol);
  const auto density = spea2_density(obj);
  std::vector<double> fitness(n);
  for (std::size_t i = 0; i < n; ++i) fitness[i] = fronts[i] + density[i];
  std::vector<const Solution*> ptrs(n);
  for (std::size_t i = 0; i < n; ++i) ptrs[i] = &filtered[i];
  std::vector<Solution> out;
  out.reserve(capacity);
  for (std::size_t i : pick_best(ptrs, fitness, capacity)) out.push_back(filtered[i]);
  return out;
}

/// Positive half of the dual update: selection driven solely by constraint
/// i's violation.
inline std::vector<Solution> update_dual_pos(const std::vector<Solution>& pos,
                                             const std::vector<Solution>& offspring,
                                             int i, std::size_t capacity) {
  std::vector<Solution> pool = pos;
  pool.insert(pool.end(), offspring.begin(), offspring.end());
  return environmental_selection(pool, capacity, SelectionView::single_constraint(i));
}

/// Negative half: violators of constraint i map its boundary. Scarce
/// violators are all kept and padded with penalized satisfiers; abundant
/// violators are ranked with total CV as an extra objective (regressed ones
/// penalized), and an overflowing top tier is truncated anti-evolutionarily
/// on negated objectives.
inline std::vector<Solution> update_dual_neg(const std::vector<Solution>& main_pop,
                                             const std::vector<Solution>& neg,
                                             const std::vector<Solution>& offspring,
                                             int i, std::size_t capacity) {
  std::vector<Solution> pool = neg;
  pool.insert(pool.end(), offspring.begin(), offspring.end());
  const auto view = SelectionView::augmented_cv();
  const std::size_t ci = static_cast<std::size_t>(i);

  std::vector<const Solution*> violators, satisfiers;
  for (const Solution& s : pool) {
    if (s.degenerate) continue;
    (s.con_viol[ci] > 0.0 ? violators : satisfiers).push_back(&s);
  }
  auto aug_keys = [&](const std::vector<const Solution*>& set) {
    std::vector<std::vector<double>> keys(set.size());
    for (std::size_t k = 0; k < set.size(); ++k) keys[k] = view.key(*set[k]);
    return keys;
  };

  std::vector<Solution> out;
  if (violators.size() <= capacity) {
    for (const Solution* s : violators) out.push_back(*s);
    const std::size_t slots = capacity - violators.size();
    if (slots > 0 && !satisfiers.empty()) {
      double max_vio_fit = 0.0;
      if (!violators.empty())
        for (double f : spea2_fitness(aug_keys(violators)))
          max_vio_fit = std::max(max_vio_fit, f);
      std::vector<double> fit = spea2_fitness(aug_keys(satisfiers));
      for (double& f : fit) f += max_vio_fit;
      for (std::size_t k : pick_best(satisfiers, fit, slots))
        out.push_back(*satisfiers[k]);
    }
    return out;
  }

  std::vector<double> fit = spea2_fitness(aug_keys(violators));
  double max_fit = 0.0;
  for (double f : fit) max_fit = std::max(max_fit, f);
  for (std::size_t k = 0; k < violators.size(); ++k) {
    for (const Solution& y : main_pop) {
      if (dominates(y.objectives, violators[k]->objectives)) {
        fit[k] += max_fit;
        break;
      }
    }
  }
  std::vector<const Solution*> top;
  for (std::size_t k = 0; k < violators.size(); ++k)
    if (fit[k] < 1.0) top.push_back(violators[k]);
  if (top.size() > capacity) {
    std::vector<std::vector<double>> neg_keys(top.size());
    for (std::size_t k = 0; k < top.size(); ++k) {
      neg_keys[k] = top[k]->objectives;
      for (double& v : neg_keys[k]) v = -v;
    }
    const auto anti_fit = spea2_fitness(neg_keys);
    for (std::size_t k : pick_best(top, anti_fit, capacity)) out.push_back(*top[k]);
  } else {
    for (std::size_t k : pick_best(violators, fit, capacity)) out.push_back(*violators[k]);
  }
  return out;
}

inline std::pair<std::vector<Solution>, std::vector<Solution>> update_dual(
    const std::vector<Solution>& main_pop, const std::vector<Solution>& pos,
    const std::vector<Solution>& neg, const std::vector<Solution>& offspring, int i,
    std::size_t capacity) {
  return {update_dual_pos(pos, offspring, i, capacity),
          update_dual_neg(main_pop, neg, offspring, i, capacity)};
}

/// Priority ranking from the raw feasibility and blockage rates. Constraints
/// already proven CPF-shaping (F > 0) have their obstructive rate cleared,
/// so each one is ranked by a single geometric role; constraints with both
/// rates at zero are dropped entirely.
inline PriorityReport priority_from_rates(std::vector<double> feas_rate,
                                          std::vector<double> probe_infeas,
                                          std::set<int>& processed, int nc) {
  PriorityReport rep;
  for (int i = 0; i < nc; ++i)
    if (feas_rate[static_cast<std::size_t>(i)] > 0.0)
      probe_infeas[static_cast<std::size_t>(i)] = 0.0;
  rep.feas_rate = feas_rate;
  rep.probe_infeas = probe_infeas;

  auto sorted_nonzero = [](const std::vector<double>& rates) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(rates.size()); ++i)
      if (rates[static_cast<std::size_t>(i)] > 0.0) idx.push_back(i + 1);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return rates[static_cast<std::size_t>(a - 1)] > rates[static_cast<std::size_t>(b - 1)];
    });
    return idx;
  };
  for (int i : sorted_nonzero(feas_rate)) rep.ranking.push_back(i);
  for (int i : sorted_nonzero(probe_infeas)) rep.ranking.push_back(-i);

  if (rep.ranking.empty()) {
    rep.target = 0;  // no active constraint: proceed to Stage 3
    return rep;
  }
  std::vector<int> remaining;
  for (int r : rep.ranking)
    if (!processed.count(std::abs(r))) remaining.push_back(r);
  if (remaining.empty()) {
    processed.clear();  // all active constraints handled: start a new round
    remaining = rep.ranking;
  }
  rep.target = std::abs(remaining.front());
  rep.direction = remaining.front() < 0 ? Direction::Negative : Direction::Positive;
  processed.insert(rep.target);
  return rep;
}

/// Gathers F/IF from the positive populations and the probe, then ranks.
inline PriorityReport determine_target(const std::vector<std::vector<Solution>>& pos_pops,
                                       const std::vector<Solution>& probe,
                                       std::set<int>& processed, int nc) {
  std::vector<double> feas(static_cast<std::size_t>(nc), 0.0);
  std::vector<double> infeas(static_cast<std::size_t>(nc), 0.0);
  for (int i = 0; i < nc; ++i) {
    const auto& pop = pos_pops[static_cast<std::size_t>(i)];
    if (!pop.empty()) {
      std::size_t f = 0;
      for (const auto& s : pop)
        if (s.feasible()) ++f;
      feas[static_cast<std::size_t>(i)] =
          static_cast<double>(f) / static_cast<double>(pop.size());
    }
    if (!probe.empty()) {
      std::size_t v = 0;
      for (const auto& s : probe)
        if (s.con_viol[static_cast<std::size_t>(i)] > 0.0) ++v;
      infeas[static_cast<std::size_t>(i)] =
          static_cast<double>(v) / static_cast<double>(probe.size());
    }
  }
  return priority_from_rates(std::move(feas), std::move(infeas), processed, nc);
}

/// Instant bi-directional flip driven by the feasibility of the active
/// positive population; empty optional means no change.
inline bool flip_check(Direction current, const std::vector<Solution>& pos_pop,
                       Direction& flipped) {
  if (pos_pop.empty()) return false;
  double min_cv = kInf;
  for (const auto& s : pos_pop) min_cv = std::min(min_cv, s.cv);
  if (current == Direction::Positive && min_cv > 0.0) {
    flipped = Direction::Negative;
    return true;
  }
  if (current == Direction::Negative && min_cv == 0.0) {
    flipped = Direction::Positive;
    return true;
  }
  return false;
}

namespace detail {

inline Solution evaluate_solution(const ProblemSpec& problem, std::vector<double> x,
                                  double eq_tol, std::int64_t& fe_counter) {
  Solution s;
  s.decision = std::move(x);
  std::vector<double> raw_h;
  problem.evaluate(s.decision, s.objectives, s.con_raw, raw_h);
  s.con_raw.insert(s.con_raw.end(), raw_h.begin(), raw_h.end());
  std::vector<double> raw_g(s.con_raw.begin(),
                            s.con_raw.begin() + static_cast<std::ptrdiff_t>(problem.p));
  auto [viol, cv] = compute_violations(raw_g, raw_h, eq_tol);
  s.con_viol = std::move(viol);
  s.cv = cv;
  for (double o : s.objectives)
    if (!std::isfinite(o)) s.degenerate = true;
  if (!std::isfinite(cv)) s.degenerate = true;
  s.eval_id = fe_counter++;
  return s;
}

/// Mean objective vector scaled by its own infinity norm (when above 1), so
/// stability deltas are comparable across objective magnitudes.
inline std::vector<double> normalized_mean_objectives(const std::vector<Solution>& pop) {
  if (pop.empty()) return {};
  std::vector<double> mean(pop[0].objectives.size(), 0.0);
  for (const auto& s : pop)
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += s.objectives[k];
  double scale = 1.0;
  for (double& v : mean) {
    v /= static_cast<double>(pop.size());
    scale = std::max(scale, std::fabs(v));
  }
  for (double& v : mean) v /= scale;
  return mean;
}

}  // namespace detail

/// Full RCCMO run: Stage 1 explores the unconstrained front, Stage 2
/// exploits one prioritized constraint at a time from its assigned
/// direction, Stage 3 refines the main population under constrained
/// dominance until the budget is spent.
inline RunResult run_rccmo(const ProblemSpec& problem, const RunConfig& config) {
  config.validate();
  const int nc = problem.num_constraints();
  const std::size_t n = config.n;
  const std::int64_t target_cap =
      config.per_target_fe_cap > 0
          ? config.per_target_fe_cap
          : std::max<std::int64_t>(
                2000, nc > 0 ? static_cast<std::int64_t>(config.beta * config.max_fe) /
                                   (2 * nc)
                             : 2000);

  Rng rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  AlgorithmState st;
  st.pc = nc + 1;
  st.dirs.assign(static_cast<std::size_t>(nc), Direction::Positive);

  for (std::size_t i = 0; i < n && st.fe_used + 1 <= config.max_fe; ++i) {
    std::vector<double> x(static_cast<std::size_t>(problem.d));
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double lo = problem.bounds.lower[j], hi = problem.bounds.upper[j];
      x[j] = lo + unit(rng) * (hi - lo);
    }
    st.main_pop.push_back(detail::evaluate_solution(problem, std::move(x), config.eq_tol,
                                                    st.fe_used));
  }
  st.probe_pop = st.main_pop;
  st.upf_pop = st.main_pop;
  st.pos_pops.assign(static_cast<std::size_t>(nc), st.main_pop);
  st.neg_pops.assign(static_cast<std::size_t>(nc), st.main_pop);

  RunResult result;
  std::deque<std::vector<double>> stage1_hist, active_hist;
  std::int64_t target_start_fe = st.fe_used;
  const std::int64_t stage3_fe =
      static_cast<std::int64_t>(config.beta * static_cast<double>(config.max_fe));

  auto refresh_all_duals = [&](const std::vector<Solution>& offspring) {
    for (int i = 0; i < nc; ++i) {
      auto [pos, neg] = update_dual(st.main_pop, st.pos_pops[static_cast<std::size_t>(i)],
                                    st.neg_pops[static_cast<std::size_t>(i)], offspring,
                                    i, n);
      st.pos_pops[static_cast<std::size_t>(i)] = std::move(pos);
      st.neg_pops[static_cast<std::size_t>(i)] = std::move(neg);
    }
  };

  auto switch_target = [&](const PriorityReport& rep) {
    st.priority = rep.ranking;
    st.pc = rep.target;
    if (rep.target > 0) st.dirs[static_cast<std::size_t>(rep.target - 1)] = rep.direction;
    target_start_fe = st.fe_used;
    active_hist.clear();
  };

  while (st.fe_used + static_cast<std::int64_t>(n) <= config.max_fe) {
    ++st.generation;

    // Active population for reproduction; empty auxiliaries fall back to P_0.
    const std::vector<Solution>* act = &st.main_pop;
    if (st.pc == nc + 1) {
      act = &st.upf_pop;
    } else if (st.pc >= 1 && st.pc <= nc) {
      const std::size_t ci = static_cast<std::size_t>(st.pc - 1);
      act = st.dirs[ci] == Direction::Positive ? &st.pos_pops[ci] : &st.neg_pops[ci];
    }
    if (act->empty()) act = &st.main_pop;

    std::vector<std::vector<double>> parents(act->size());
    for (std::size_t i = 0; i < act->size(); ++i) parents[i] = (*act)[i].decision;
    // Stage-2 generations add P_0 as donor material so the main population
    // keeps refining instead of starving on rejected offspring. Stage 1 is
    // left pure so the dual populations measure the constraints, not P_0.
    if (st.pc >= 1 && st.pc <= nc && act != &st.main_pop)
      for (const Solution& s : st.main_pop) parents.push_back(s.decision);
    std::vector<Solution> offspring;
    offspring.reserve(n);
    for (auto& x : de_offspring(parents, n, config.variation, problem.bounds, rng))
      offspring.push_back(
          detail::evaluate_solution(problem, std::move(x), config.eq_tol, st.fe_used));

    st.probe_pop = update_probe(st.probe_pop, offspring, st.main_pop, n);
    {
      std::vector<Solution> pool = st.main_pop;
      pool.insert(pool.end(), offspring.begin(), offspring.end());
      st.main_pop = environmental_selection(pool, n, SelectionView::cdp_total_cv());
    }

    if (st.pc == nc + 1) {
      // Stage 1: UPF exploration.
      std::vector<Solution> pool = st.upf_pop;
      pool.insert(pool.end(), offspring.begin(), offspring.end());
      st.upf_pop = environmental_selection(pool, n, SelectionView::objectives_only());
      if (config.v > 0 && st.generation % config.v == 0) refresh_all_duals(offspring);
      stage1_hist.push_back(detail::normalized_mean_objectives(st.upf_pop));
      // Exploration ends on stability, or once half of the pre-refinement
      // budget is spent, so exploitation is never starved when the noisy
      // stability signal fails to settle.
      if (stability_check(stage1_hist, config.stability_window, config.stability_tol) ||
          st.fe_used >= stage3_fe / 2) {
        switch_target(determine_target(st.pos_pops, st.probe_pop, st.processed, nc));
      }
    } else if (st.pc >= 1 && st.pc <= nc) {
      // Stage 2: targeted exploitation with the asymmetric update schedule.
      ++result.stage2_generations;
      const std::size_t ci = static_cast<std::size_t>(st.pc - 1);
      if (st.generation % config.v == 0) {
        const bool neg_active = st.dirs[ci] == Direction::Negative;
        refresh_all_duals(offspring);
        result.inactive_dual_selections += 2 * nc - 1 - (neg_active ? 1 : 0);
      } else {
        st.pos_pops[ci] = update_dual_pos(st.pos_pops[ci], offspring, st.pc - 1, n);
        if (st.dirs[ci] == Direction::Negative)
          st.neg_pops[ci] = update_dual_neg(st.main_pop, st.neg_pops[ci], offspring,
                                            st.pc - 1, n);
      }

      Direction flipped;
      if (flip_check(st.dirs[ci], st.pos_pops[ci], flipped)) st.dirs[ci] = flipped;

      const std::vector<Solution>& monitored =
          st.dirs[ci] == Direction::Positive ? st.pos_pops[ci] : st.neg_pops[ci];
      active_hist.push_back(detail::normalized_mean_objectives(
          monitored.empty() ? st.main_pop : monitored));
      if (stability_check(active_hist, config.stability_window, config.stability_tol) ||
          st.fe_used - target_start_fe >= target_cap) {
        switch_target(determine_target(st.pos_pops, st.probe_pop, st.processed, nc));
      }
      if (st.fe_used > stage3_fe) st.pc = 0;
    }
    // Stage 3 (pc == 0) needs nothing beyond the unconditional P_0 update.

    TraceRecord rec;
    rec.gen = st.generation;
    rec.fe = st.fe_used;
    rec.pc = st.pc;
    rec.dirs.reserve(st.dirs.size());
    for (Direction d : st.dirs) rec.dirs.push_back(static_cast<int>(d));
    rec.priority = st.priority;
    for (const auto& s : st.main_pop) {
      if (s.feasible()) ++rec.feas_main;
      rec.min_cv_main = std::min(rec.min_cv_main, s.cv);
    }
    result.trace.push_back(std::move(rec));
  }

  result.final_pop = std::move(st.main_pop);
  result.fe_used = st.fe_used;
  return result;
}

}  // namespace rccmo

#endif  // RCCMO_ENGINE_HPP
