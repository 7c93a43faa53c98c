#include <doctest.h>

#include <cmath>
#include <random>

#include "rccmo/metrics.hpp"
#include "rccmo/problems.hpp"

using namespace rccmo;

TEST_CASE("TRI2 midpoint evaluation") {
  const std::vector<double> x(15, 0.5);
  std::vector<double> obj, g;
  evaluate_tri(TriVariant::Tri2, x, obj, g);
  CHECK(obj[0] == doctest::Approx(0.5));
  CHECK(obj[1] == doctest::Approx(0.5));
  CHECK(g[0] == doctest::Approx(0.2));   // violated
  CHECK(g[1] == doctest::Approx(0.0));   // on the boundary
  CHECK(g[2] == doctest::Approx(-1.0));  // satisfied
}

TEST_CASE("TRI1 corner point sits on both boundaries") {
  const std::vector<double> x(15, 0.5);
  std::vector<double> obj, g;
  evaluate_tri(TriVariant::Tri1, x, obj, g);
  CHECK(g[0] == doctest::Approx(0.0));
  CHECK(g[1] == doctest::Approx(0.0));
}

TEST_CASE("TRI3 optimum (0.65, 0.65) is feasible and undominated") {
  // x1 = 0.5 with distance term 0.15 reaches f = (0.65, 0.65).
  std::vector<double> x(15, 0.5);
  // spread 0.15 over the distance variables: (x_i - 0.5)^2 summed = 0.15
  const double delta = std::sqrt(0.15 / 14.0);
  for (std::size_t i = 1; i < x.size(); ++i) x[i] = 0.5 + delta;
  std::vector<double> obj, g;
  evaluate_tri(TriVariant::Tri3, x, obj, g);
  CHECK(obj[0] == doctest::Approx(0.65));
  CHECK(obj[1] == doctest::Approx(0.65));
  CHECK(g[0] <= 1e-12);
  CHECK(g[1] <= 1e-12);

  // Grid oracle: no feasible (x1, dist) combination dominates it.
  const int res = 400;
  for (int i = 0; i < res; ++i) {
    const double x1 = static_cast<double>(i) / (res - 1);
    for (int j = 0; j < res; ++j) {
      const double dist = 0.25 * 14.0 * static_cast<double>(j) / (res - 1);
      const double f1 = x1 + dist, f2 = 1.0 - x1 + dist;
      bool feasible = true;
      for (double c : tri_constraints_at(TriVariant::Tri3, f1, f2))
        if (c > 0.0) { feasible = false; break; }
      if (!feasible) continue;
      const bool dominates_opt = f1 <= 0.65 && f2 <= 0.65 && (f1 < 0.65 || f2 < 0.65);
      CHECK_FALSE(dominates_opt);
    }
  }
}

TEST_CASE("TRI objective identity f1 + f2 == 1 + 2g") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> x(10);
    for (double& v : x) v = unit(rng);
    double dist = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) dist += (x[i] - 0.5) * (x[i] - 0.5);
    std::vector<double> obj, g;
    evaluate_tri(TriVariant::Tri1, x, obj, g);
    CHECK(std::fabs(obj[0] + obj[1] - (1.0 + 2.0 * dist)) <= 1e-12);
  }
}

TEST_CASE("evaluate_tri rejects out-of-box input") {
  std::vector<double> obj, g;
  CHECK_THROWS_AS(evaluate_tri(TriVariant::Tri1, {1.2, 0.5}, obj, g),
                  std::invalid_argument);
}

TEST_CASE("TRIM has ten constraints, eight always satisfied") {
  const std::vector<double> x(30, 0.25);
  std::vector<double> obj, g;
  evaluate_tri(TriVariant::TriM, x, obj, g);
  REQUIRE(g.size() == 10);
  for (int k = 3; k <= 10; ++k) CHECK(g[static_cast<std::size_t>(k - 1)] == -k);
}

TEST_CASE("reference front: TRI3 collapses to (0.65, 0.65)") {
  const auto front = reference_front(TriVariant::Tri3, 1000, 15);
  REQUIRE_FALSE(front.empty());
  for (const auto& pt : front) {
    CHECK(std::fabs(pt[0] - 0.65) <= 2.0 / 1000);
    CHECK(std::fabs(pt[1] - 0.65) <= 2.0 / 1000);
  }
}

TEST_CASE("reference front: TRI1 survivors lie on the two boundary lines") {
  const int res = 1000;
  const auto front = reference_front(TriVariant::Tri1, res, 15);
  REQUIRE_FALSE(front.empty());
  const double step = std::max(1.0 / (res - 1), 0.25 * 14.0 / (res - 1));
  for (const auto& pt : front) {
    const double r1 = std::fabs(pt[0] + 2.0 * pt[1] - 1.5);
    const double r2 = std::fabs(2.0 * pt[0] + pt[1] - 1.5);
    CHECK(std::min(r1, r2) <= 3.0 * step);
  }
}

TEST_CASE("reference front is stable under refinement") {
  for (TriVariant v : {TriVariant::Tri1, TriVariant::Tri2}) {
    const auto coarse = reference_front(v, 500, 15);
    const auto fine = reference_front(v, 1000, 15);
    std::vector<std::vector<double>> p, q;
    for (const auto& pt : coarse) p.push_back({pt[0], pt[1]});
    for (const auto& pt : fine) q.push_back({pt[0], pt[1]});
    CHECK(igd(p, q).value < 4.0 / 500);
  }
}

TEST_CASE("scenario classification oracle matches the intended topology") {
  // Constraint i is CPF-shaping iff its single-constraint front intersects
  // the globally feasible set; obstructing iff instead its infeasible region
  // intersects the region dominating the global CPF; irrelevant otherwise.
  auto classify = [](TriVariant variant, int res) {
    const int nc = tri_num_constraints(variant);
    const double gmax = 0.25 * 14.0;
    // collect the attainable (f1, f2) grid
    std::vector<std::array<double, 2>> pts;
    for (int i = 0; i < res; ++i)
      for (int j = 0; j < res; ++j) {
        const double x1 = static_cast<double>(i) / (res - 1);
        const double dist = gmax * static_cast<double>(j) / (res - 1);
        pts.push_back({x1 + dist, 1.0 - x1 + dist});
      }
    auto feasible_all = [&](const std::array<double, 2>& p) {
      for (double c : tri_constraints_at(variant, p[0], p[1]))
        if (c > 0.0) return false;
      return true;
    };
    // global CPF via sweep
    std::vector<std::array<double, 2>> feas;
    for (const auto& p : pts)
      if (feasible_all(p)) feas.push_back(p);
    std::sort(feas.begin(), feas.end());
    std::vector<std::array<double, 2>> cpf;
    double best = kInf;
    for (const auto& p : feas)
      if (p[1] < best) { cpf.push_back(p); best = p[1]; }

    std::vector<int> kind(static_cast<std::size_t>(nc));  // 0 shaping, 1 obstructing, 2 irrelevant
    const double tol = 3.0 * std::max(1.0 / (res - 1), gmax / (res - 1));
    for (int c = 0; c < nc; ++c) {
      // single-constraint front
      std::vector<std::array<double, 2>> sc;
      for (const auto& p : pts)
        if (tri_constraints_at(variant, p[0], p[1])[static_cast<std::size_t>(c)] <= 0.0)
          sc.push_back(p);
      std::sort(sc.begin(), sc.end());
      std::vector<std::array<double, 2>> scpf;
      double b2 = kInf;
      for (const auto& p : sc)
        if (p[1] < b2) { scpf.push_back(p); b2 = p[1]; }
      bool shaping = false;
      for (const auto& p : scpf)
        if (feasible_all(p)) { shaping = true; break; }
      if (shaping) { kind[static_cast<std::size_t>(c)] = 0; continue; }
      // does the infeasible region of c intersect the set dominating the CPF?
      bool obstructing = false;
      for (const auto& p : pts) {
        if (tri_constraints_at(variant, p[0], p[1])[static_cast<std::size_t>(c)] <= 0.0)
          continue;
        for (const auto& v : cpf)
          if (p[0] <= v[0] + tol && p[1] <= v[1] + tol) { obstructing = true; break; }
        if (obstructing) break;
      }
      kind[static_cast<std::size_t>(c)] = obstructing ? 1 : 2;
    }
    return kind;
  };

  CHECK(classify(TriVariant::Tri1, 250) == std::vector<int>{0, 0, 2});
  CHECK(classify(TriVariant::Tri2, 250) == std::vector<int>{0, 1, 2});
  CHECK(classify(TriVariant::Tri3, 250) == std::vector<int>{1, 1, 2});
}

TEST_CASE("problem_from_name grammar") {
  const ProblemSpec p = problem_from_name("TRI2:d=7");
  CHECK(p.name == "TRI2");
  CHECK(p.d == 7);
  CHECK(p.p == 3);
  CHECK(problem_from_name("TRIM").d == 30);
  CHECK(problem_from_name("TRI1").d == 15);
  CHECK_THROWS_AS(problem_from_name("NOPE"), std::invalid_argument);
  CHECK_THROWS_AS(problem_from_name("TRI1:x=3"), std::invalid_argument);
}
