#ifndef RCCMO_BASELINE_HPP
#define RCCMO_BASELINE_HPP

#include "rccmo/engine.hpp"

namespace rccmo {

/// Single-population baseline: DE variation plus constrained-dominance
/// environmental selection every generation. Shares the engine's FE
/// accounting, trace format and determinism contracts.
inline RunResult run_cdp_baseline(const ProblemSpec& problem, const RunConfig& config) {
  config.validate();
  const std::size_t n = config.n;
  Rng rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::int64_t fe = 0;
  std::vector<Solution> pop;
  for (std::size_t i = 0; i < n && fe + 1 <= config.max_fe; ++i) {
    std::vector<double> x(static_cast<std::size_t>(problem.d));
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double lo = problem.bounds.lower[j], hi = problem.bounds.upper[j];
      x[j] = lo + unit(rng) * (hi - lo);
    }
    pop.push_back(detail::evaluate_solution(problem, std::move(x), config.eq_tol, fe));
  }

  RunResult result;
  std::int64_t gen = 0;
  while (fe + static_cast<std::int64_t>(n) <= config.max_fe) {
    ++gen;
    std::vector<std::vector<double>> parents(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) parents[i] = pop[i].decision;
    std::vector<Solution> pool = pop;
    for (auto& x : de_offspring(parents, n, config.variation, problem.bounds, rng))
      pool.push_back(detail::evaluate_solution(problem, std::move(x), config.eq_tol, fe));
    pop = environmental_selection(pool, n, SelectionView::cdp_total_cv());

    TraceRecord rec;
    rec.gen = gen;
    rec.fe = fe;
    rec.pc = 0;
    for (const auto& s : pop) {
      if (s.feasible()) ++rec.feas_main;
      rec.min_cv_main = std::min(rec.min_cv_main, s.cv);
    }
    result.trace.push_back(std::move(rec));
  }
  result.final_pop = std::move(pop);
  result.fe_used = fe;
  return result;
}

}  // namespace rccmo

#endif  // RCCMO_BASELINE_HPP
