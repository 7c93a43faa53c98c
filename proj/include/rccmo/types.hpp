#ifndef RCCMO_TYPES_HPP
#define RCCMO_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace rccmo {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Box constraint on the decision space.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t size() const { return lower.size(); }

  double clamp(std::size_t j, double v) const {
    if (v < lower[j]) return lower[j];
    if (v > upper[j]) return upper[j];
    return v;
  }

  static Bounds unit(std::size_t d) {
    return Bounds{std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)};
  }
};

/// One evaluated individual. Objectives and violations are set once at
/// evaluation time and never mutated afterwards.
struct Solution {
  std::vector<double> decision;
  std::vector<double> objectives;
  std::vector<double> con_raw;   // raw g_i / h_j values
  std::vector<double> con_viol;  // per-constraint violation, >= 0
  double cv = 0.0;               // sum of con_viol
  std::int64_t eval_id = 0;      // evaluation order, used as a deterministic tiebreak
  bool degenerate = false;       // non-finite evaluation; dominated by everything

  bool feasible() const { return !degenerate && cv == 0.0; }
};

/// Per-constraint violations and their aggregate. Inequalities first, then
/// equalities relaxed by eq_tol.
inline std::pair<std::vector<double>, double> compute_violations(
    const std::vector<double>& raw_g, const std::vector<double>& raw_h,
    double eq_tol) {
  if (eq_tol < 0.0) throw std::invalid_argument("compute_violations: eq_tol < 0");
  std::vector<double> viol;
  viol.reserve(raw_g.size() + raw_h.size());
  bool bad = false;
  for (double g : raw_g) {
    if (!std::isfinite(g)) bad = true;
    viol.push_back(std::max(0.0, g));
  }
  for (double h : raw_h) {
    if (!std::isfinite(h)) bad = true;
    viol.push_back(std::max(0.0, std::fabs(h) - eq_tol));
  }
  if (bad) {
    for (double& v : viol) v = kInf;
    return {viol, kInf};
  }
  double cv = 0.0;
  for (double v : viol) cv += v;
  return {viol, cv};
}

enum class Role { Main, Probe, Upf, Pos, Neg };

/// Bounded multiset of solutions with a fixed role tag.
struct Population {
  std::vector<Solution> members;
  std::size_t capacity = 0;
  Role role = Role::Main;
  int constraint = -1;  // for Pos/Neg roles

  Population() = default;
  Population(std::size_t cap, Role r, int con = -1)
      : capacity(cap), role(r), constraint(con) {}

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
};

enum class ViewKind {
  ObjectivesOnly,
  CdpTotalCv,
  AugmentedCv,
  SingleConstraint,
  NegatedObjectives,
};

/// Projection of a Solution to the comparison vector (and the violation
/// scalar, for constrained kinds) used by sorting, fitness and selection.
struct SelectionView {
  ViewKind kind = ViewKind::ObjectivesOnly;
  int constraint = -1;

  static SelectionView objectives_only() { return {ViewKind::ObjectivesOnly, -1}; }
  static SelectionView cdp_total_cv() { return {ViewKind::CdpTotalCv, -1}; }
  static SelectionView augmented_cv() { return {ViewKind::AugmentedCv, -1}; }
  static SelectionView single_constraint(int j) { return {ViewKind::SingleConstraint, j}; }
  static SelectionView negated_objectives() { return {ViewKind::NegatedObjectives, -1}; }

  bool constrained() const {
    return kind == ViewKind::CdpTotalCv || kind == ViewKind::SingleConstraint;
  }

  std::vector<double> key(const Solution& s) const {
    switch (kind) {
      case ViewKind::AugmentedCv: {
        std::vector<double> k = s.objectives;
        k.push_back(s.cv);
        return k;
      }
      case ViewKind::NegatedObjectives: {
        std::vector<double> k = s.objectives;
        for (double& v : k) v = -v;
        return k;
      }
      default:
        return s.objectives;
    }
  }

  double violation(const Solution& s) const {
    if (s.degenerate) return kInf;
    switch (kind) {
      case ViewKind::CdpTotalCv:
        return s.cv;
      case ViewKind::SingleConstraint:
        return s.con_viol.at(static_cast<std::size_t>(constraint));
      default:
        return 0.0;
    }
  }
};

}  // namespace rccmo

#endif  // RCCMO_TYPES_HPP
