#ifndef RCCMO_PROBLEMS_HPP
#define RCCMO_PROBLEMS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rccmo/types.hpp"

namespace rccmo {

/// A constrained multi-objective problem: pure evaluators plus dimensions
/// and box bounds.
struct ProblemSpec {
  std::string name;
  int m = 2;  // objectives
  int d = 0;  // decision variables
  int p = 0;  // inequality constraints
  int q = 0;  // equality constraints
  Bounds bounds;
  // decision -> (objectives, raw_g, raw_h)
  std::function<void(const std::vector<double>&, std::vector<double>&,
                     std::vector<double>&, std::vector<double>&)>
      evaluate;

  int num_constraints() const { return p + q; }
};

enum class TriVariant { Tri1, Tri2, Tri3, TriM };

inline int tri_num_constraints(TriVariant v) {
  return v == TriVariant::TriM ? 10 : 3;
}

/// Bi-objective core shared by the whole TRI family:
///   g  = sum_{i>=2} (x_i - 0.5)^2
///   f1 = x1 + g,  f2 = 1 - x1 + g
/// Constraints are linear in objective space (feasible iff raw <= 0), which
/// keeps each variant's front geometry exact.
inline void evaluate_tri(TriVariant variant, const std::vector<double>& x,
                         std::vector<double>& obj, std::vector<double>& raw_g) {
  for (double v : x)
    if (v < 0.0 || v > 1.0)
      throw std::invalid_argument("evaluate_tri: decision outside [0,1] box");
  double dist = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) dist += (x[i] - 0.5) * (x[i] - 0.5);
  const double f1 = x[0] + dist;
  const double f2 = 1.0 - x[0] + dist;
  obj = {f1, f2};
  switch (variant) {
    case TriVariant::Tri1:
      raw_g = {1.5 - f1 - 2.0 * f2, 1.5 - 2.0 * f1 - f2, -1.0};
      break;
    case TriVariant::Tri2:
      raw_g = {1.2 - f1 - f2, 0.5 - f1, -1.0};
      break;
    case TriVariant::Tri3:
      raw_g = {0.65 - f2, 0.65 - f1, -1.0};
      break;
    case TriVariant::TriM:
      raw_g.assign(10, 0.0);
      raw_g[0] = 1.2 - f1 - f2;
      raw_g[1] = 0.5 - f1;
      for (int k = 3; k <= 10; ++k) raw_g[static_cast<std::size_t>(k - 1)] = -k;
      break;
  }
}

/// Constraint values of a TRI variant at a point of objective space.
inline std::vector<double> tri_constraints_at(TriVariant variant, double f1, double f2) {
  switch (variant) {
    case TriVariant::Tri1:
      return {1.5 - f1 - 2.0 * f2, 1.5 - 2.0 * f1 - f2, -1.0};
    case TriVariant::Tri2:
      return {1.2 - f1 - f2, 0.5 - f1, -1.0};
    case TriVariant::Tri3:
      return {0.65 - f2, 0.65 - f1, -1.0};
    case TriVariant::TriM: {
      std::vector<double> g(10, 0.0);
      g[0] = 1.2 - f1 - f2;
      g[1] = 0.5 - f1;
      for (int k = 3; k <= 10; ++k) g[static_cast<std::size_t>(k - 1)] = -k;
      return g;
    }
  }
  return {};
}

inline ProblemSpec make_tri(TriVariant variant, int d) {
  if (d < 2) throw std::invalid_argument("make_tri: d must be >= 2");
  ProblemSpec ps;
  switch (variant) {
    case TriVariant::Tri1: ps.name = "TRI1"; break;
    case TriVariant::Tri2: ps.name = "TRI2"; break;
    case TriVariant::Tri3: ps.name = "TRI3"; break;
    case TriVariant::TriM: ps.name = "TRIM"; break;
  }
  ps.m = 2;
  ps.d = d;
  ps.p = tri_num_constraints(variant);
  ps.q = 0;
  ps.bounds = Bounds::unit(static_cast<std::size_t>(d));
  ps.evaluate = [variant](const std::vector<double>& x, std::vector<double>& obj,
                          std::vector<double>& g, std::vector<double>& h) {
    evaluate_tri(variant, x, obj, g);
    h.clear();
  };
  return ps;
}

/// Parses the "NAME[:d=INT]" grammar, e.g. "TRI1:d=15".
inline ProblemSpec problem_from_name(const std::string& spec) {
  std::string name = spec;
  int d = -1;
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    name = spec.substr(0, colon);
    const std::string opt = spec.substr(colon + 1);
    if (opt.rfind("d=", 0) != 0)
      throw std::invalid_argument("problem_from_name: bad option '" + opt + "'");
    d = std::stoi(opt.substr(2));
  }
  TriVariant v;
  if (name == "TRI1") v = TriVariant::Tri1;
  else if (name == "TRI2") v = TriVariant::Tri2;
  else if (name == "TRI3") v = TriVariant::Tri3;
  else if (name == "TRIM") v = TriVariant::TriM;
  else throw std::invalid_argument("problem_from_name: unknown problem '" + name + "'");
  if (d < 0) d = (v == TriVariant::TriM) ? 30 : 15;
  return make_tri(v, d);
}

inline TriVariant tri_variant_from_name(const std::string& spec) {
  const std::string name = spec.substr(0, spec.find(':'));
  if (name == "TRI1") return TriVariant::Tri1;
  if (name == "TRI2") return TriVariant::Tri2;
  if (name == "TRI3") return TriVariant::Tri3;
  if (name == "TRIM") return TriVariant::TriM;
  throw std::invalid_argument("tri_variant_from_name: unknown problem '" + spec + "'");
}

/// Brute-force reference front. Objectives depend on x only through
/// (x1, dist) with x1 in [0,1] and dist in [0, 0.25*(d-1)], so a dense grid
/// over that rectangle followed by a feasibility filter and non-dominated
/// filtering yields the CPF to grid accuracy.
inline std::vector<std::array<double, 2>> reference_front(TriVariant variant,
                                                          int resolution, int d) {
  if (resolution < 100)
    throw std::invalid_argument("reference_front: resolution must be >= 100");
  const double gmax = 0.25 * static_cast<double>(d - 1);
  std::vector<std::array<double, 2>> feasible;
  for (int i = 0; i < resolution; ++i) {
    const double x1 = static_cast<double>(i) / (resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      const double dist = gmax * static_cast<double>(j) / (resolution - 1);
      const double f1 = x1 + dist;
      const double f2 = 1.0 - x1 + dist;
      bool ok = true;
      for (double g : tri_constraints_at(variant, f1, f2))
        if (g > 0.0) { ok = false; break; }
      if (ok) feasible.push_back({f1, f2});
    }
  }
  // 2-D non-dominated filtering by a sort-and-sweep.
  std::sort(feasible.begin(), feasible.end(), [](const auto& a, const auto& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    return a[1] < b[1];
  });
  std::vector<std::array<double, 2>> front;
  double best_f2 = kInf;
  for (const auto& pt : feasible) {
    if (pt[1] < best_f2) {
      front.push_back(pt);
      best_f2 = pt[1];
    }
  }
  return front;
}

}  // namespace rccmo

#endif  // RCCMO_PROBLEMS_HPP
