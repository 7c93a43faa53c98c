#include <doctest.h>

#include <cmath>

#include "rccmo/variation.hpp"

using namespace rccmo;

TEST_CASE("identical parents give identical pre-mutation offspring") {
  VariationParams params;
  params.pm = 0.0;  // isolate the DE step
  const Bounds bounds = Bounds::unit(4);
  const std::vector<std::vector<double>> parents(6, {0.3, 0.3, 0.3, 0.3});
  Rng rng(5);
  for (const auto& child : de_offspring(parents, 12, params, bounds, rng))
    for (double v : child) CHECK(v == doctest::Approx(0.3));
}

TEST_CASE("offspring streams are deterministic under a fixed seed") {
  VariationParams params;
  const Bounds bounds = Bounds::unit(5);
  std::vector<std::vector<double>> parents;
  Rng init(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 8; ++i) {
    std::vector<double> p(5);
    for (double& v : p) v = unit(init);
    parents.push_back(p);
  }
  Rng a(123), b(123);
  const auto oa = de_offspring(parents, 20, params, bounds, a);
  const auto ob = de_offspring(parents, 20, params, bounds, b);
  CHECK(oa == ob);  // byte-identical
}

TEST_CASE("DE/rand/1 arithmetic over all admissible base triples") {
  // Parents 0..3 in 1-D with de_f = 0.5, crossover forced, mutation off:
  // each offspring must equal x_r1 + 0.5 * (x_r2 - x_r3) for some distinct
  // r1, r2, r3 different from its target. In particular (1, 2, 3) gives 0.5.
  VariationParams params;
  params.de_f = 0.5;
  params.de_cr = 1.0;
  params.pm = 0.0;
  Bounds bounds;
  bounds.lower = {-5.0};
  bounds.upper = {8.0};
  const std::vector<std::vector<double>> parents = {{0.0}, {1.0}, {2.0}, {3.0}};
  Rng rng(29);
  const auto offspring = de_offspring(parents, 40, params, bounds, rng);
  for (std::size_t t = 0; t < offspring.size(); ++t) {
    const std::size_t target = t % 4;
    bool matched = false;
    for (std::size_t r1 = 0; r1 < 4 && !matched; ++r1)
      for (std::size_t r2 = 0; r2 < 4 && !matched; ++r2)
        for (std::size_t r3 = 0; r3 < 4 && !matched; ++r3) {
          if (r1 == target || r2 == target || r3 == target) continue;
          if (r1 == r2 || r1 == r3 || r2 == r3) continue;
          const double mutant =
              parents[r1][0] + 0.5 * (parents[r2][0] - parents[r3][0]);
          if (offspring[t][0] == doctest::Approx(mutant).epsilon(1e-15))
            matched = true;
        }
    CHECK(matched);
  }
}

TEST_CASE("offspring always lie inside the bounds") {
  VariationParams params;
  Bounds bounds;
  bounds.lower = {-1.0, 0.0, 2.0};
  bounds.upper = {1.0, 0.5, 5.0};
  std::vector<std::vector<double>> parents;
  Rng init(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    std::vector<double> p(3);
    for (std::size_t j = 0; j < 3; ++j)
      p[j] = bounds.lower[j] + unit(init) * (bounds.upper[j] - bounds.lower[j]);
    parents.push_back(p);
  }
  Rng rng(17);
  for (const auto& child : de_offspring(parents, 500, params, bounds, rng))
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(child[j] >= bounds.lower[j]);
      CHECK(child[j] <= bounds.upper[j]);
    }
}

TEST_CASE("polynomial mutation with pm = 0 is the identity") {
  VariationParams params;
  params.pm = 0.0;
  Rng rng(3);
  const std::vector<double> x = {0.1, 0.4, 0.9};
  CHECK(polynomial_mutation(x, params, Bounds::unit(3), rng) == x);
}

TEST_CASE("polynomial mutation stays in the box over many draws") {
  VariationParams params;
  params.pm = 1.0;
  Rng rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Bounds bounds = Bounds::unit(2);
  for (int t = 0; t < 100000; ++t) {
    const std::vector<double> x = {unit(rng), unit(rng)};
    for (double v : polynomial_mutation(x, params, bounds, rng)) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("larger eta_m concentrates mutations near the parent") {
  // Monte Carlo: the mean perturbation should shrink as eta_m doubles.
  auto mean_shift = [](double eta) {
    VariationParams params;
    params.pm = 1.0;
    params.eta_m = eta;
    Rng rng(77);
    const Bounds bounds = Bounds::unit(1);
    double total = 0.0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
      const auto y = polynomial_mutation({0.5}, params, bounds, rng);
      total += std::fabs(y[0] - 0.5);
    }
    return total / trials;
  };
  const double m20 = mean_shift(20.0);
  const double m40 = mean_shift(40.0);
  const double m80 = mean_shift(80.0);
  CHECK(m40 < m20);
  CHECK(m80 < m40);
}

TEST_CASE("tiny parent pools recycle indices instead of failing") {
  VariationParams params;
  Rng rng(1);
  const auto out = de_offspring({{0.5, 0.5}}, 5, params, Bounds::unit(2), rng);
  CHECK(out.size() == 5);
  CHECK_THROWS_AS(de_offspring({}, 1, params, Bounds::unit(2), rng),
                  std::invalid_argument);
}
