// Copyright 2026 The C3 Clustering Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "c3/lp.hpp"
#include "c3/oracle.hpp"
#include "c3/rng.hpp"
#include "c3/simplex.hpp"
#include "c3/synth.hpp"
#include "helpers.hpp"

using namespace c3;

namespace {

DenseMatrix<double> random_x(std::size_t n, Rng& rng) {
  DenseMatrix<double> x(n, n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) x(u, v) = x(v, u) = rng.uniform();
  }
  return x;
}

// Every violated (u < v, z) by a plain triple loop.
std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, double>> scan(
    const DenseMatrix<double>& x, double tol) {
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, double>> out;
  const std::size_t n = x.rows();
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      for (std::uint32_t z = 0; z < n; ++z) {
        if (z == u || z == v) continue;
        double viol = x(u, v) - x(u, z) - x(z, v);
        if (viol > tol) out.emplace_back(u, v, z, viol);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("two genes") {
  auto join = solve_lp(test::uniform_weights(2, 1.0, 0.0));
  CHECK(join.x(0, 1) == doctest::Approx(0.0));
  CHECK(join.objective == doctest::Approx(0.0));
  auto split = solve_lp(test::uniform_weights(2, 0.0, 1.0));
  CHECK(split.x(0, 1) == doctest::Approx(1.0));
  CHECK(split.objective == doctest::Approx(0.0));
}

TEST_CASE("three genes against a grid search") {
  // uv = (1, 0), vz = (1, 0), uz = (0, 1) with u, v, z = 0, 1, 2.
  EdgeWeights w(test::named("v", 3));
  w.set(0, 1, 1.0, 0.0);
  w.set(1, 2, 1.0, 0.0);
  w.set(0, 2, 0.0, 1.0);
  auto sol = solve_lp(w);

  // Grid of step 1e-3 in integer units so feasibility is exact. The
  // objective is linear in x_uz, so for each (x_uv, x_vz) only the two ends
  // of the feasible x_uz interval need evaluating; a coarse full 3-D grid
  // backs that up.
  const int steps = 1000;
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b <= steps; ++b) {
      const int lo = std::abs(a - b);
      const int hi = std::min(steps, a + b);
      for (int c : {lo, hi}) {
        const double f = a * 1e-3 * 1.0 + b * 1e-3 * 1.0 + (1.0 - c * 1e-3) * 1.0;
        best = std::min(best, f);
      }
    }
  }
  double coarse = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= 50; ++a) {
    for (int b = 0; b <= 50; ++b) {
      for (int c = 0; c <= 50; ++c) {
        if (a > b + c || b > a + c || c > a + b) continue;
        coarse = std::min(coarse, a / 50.0 + b / 50.0 + (1.0 - c / 50.0));
      }
    }
  }
  CHECK(best == doctest::Approx(1.0));
  CHECK(coarse == doctest::Approx(best));
  CHECK(sol.objective == doctest::Approx(best).epsilon(1e-9));
  // Hand sum of the objective at the returned point.
  const double hand = sol.x(0, 1) + sol.x(1, 2) + (1.0 - sol.x(0, 2));
  CHECK(objective(sol.x, w) == doctest::Approx(hand));
  CHECK(max_triangle_violation(sol.x) <= 1e-6);
}

TEST_CASE("separation") {
  DenseMatrix<double> zero(4, 4, 0.0);
  CHECK(separate_triangles(zero, 100, 1e-9).empty());

  DenseMatrix<double> x(3, 3, 0.0);
  x(0, 1) = x(1, 0) = 1.0;
  auto t = separate_triangles(x, 10, 1e-9);
  REQUIRE(t.size() == 1);
  CHECK(t[0].u == 0);
  CHECK(t[0].v == 1);
  CHECK(t[0].z == 2);
  CHECK(t[0].violation == doctest::Approx(1.0));
  CHECK(max_triangle_violation(x) == doctest::Approx(1.0));

  Rng rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 3 + rng.below(10);
    auto r = random_x(n, rng);
    auto brute = scan(r, 1e-6);
    std::sort(brute.begin(), brute.end(), [](const auto& a, const auto& b) {
      if (std::get<3>(a) != std::get<3>(b)) return std::get<3>(a) > std::get<3>(b);
      return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
             std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
    });
    auto all = separate_triangles(r, brute.size() + 5, 1e-6);
    REQUIRE(all.size() == brute.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(all[i].u == std::get<0>(brute[i]));
      CHECK(all[i].v == std::get<1>(brute[i]));
      CHECK(all[i].z == std::get<2>(brute[i]));
      CHECK(all[i].violation == std::get<3>(brute[i]));
    }
    auto few = separate_triangles(r, 3, 1e-6);
    CHECK(few.size() == std::min<std::size_t>(3, brute.size()));
    double worst = 0.0;
    for (const auto& b : brute) worst = std::max(worst, std::get<3>(b));
    if (!brute.empty()) CHECK(max_triangle_violation(r) == worst);
  }
}

TEST_CASE("objective at the extremes") {
  auto w = make_random(7, parse_levels("0.5:0.2,0.5:0.7"), 4);
  double sum_plus = 0.0, sum_minus = 0.0;
  for (std::size_t u = 0; u < 7; ++u) {
    for (std::size_t v = u + 1; v < 7; ++v) {
      sum_plus += w.plus(u, v);
      sum_minus += w.minus(u, v);
    }
  }
  DenseMatrix<double> zeros(7, 7, 0.0);
  DenseMatrix<double> ones(7, 7, 1.0);
  for (std::size_t i = 0; i < 7; ++i) ones(i, i) = 0.0;
  CHECK(objective(zeros, w) == doctest::Approx(sum_minus));
  CHECK(objective(ones, w) == doctest::Approx(sum_plus));
}

TEST_CASE("solve_lp post-conditions on random instances") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 5 + seed;
    auto w = make_random(n, test::nine_levels(), seed);
    auto sol = solve_lp(w);
    CHECK(sol.size() == n);
    CHECK(scan(sol.x, 1e-6).empty());
    CHECK(sol.max_violation <= 1e-6);
    CHECK(sol.relative_gap() <= 1e-6);
    CHECK(sol.lower_bound <= sol.objective + 1e-9);
    for (std::size_t u = 0; u < n; ++u) {
      CHECK(sol.x(u, u) == 0.0);
      for (std::size_t v = 0; v < n; ++v) {
        CHECK(sol.x(u, v) == sol.x(v, u));
        CHECK(sol.x(u, v) >= 0.0);
        CHECK(sol.x(u, v) <= 1.0);
      }
    }
    CHECK(objective(sol.x, w) == doctest::Approx(sol.objective));
    if (n <= 9) {
      auto exact = solve_exact(w, n);  // unbounded size: LP is a relaxation
      CHECK(sol.objective <= exact.cost + 1e-6);
    }
  }
}

TEST_CASE("planted instance solves to the truth") {
  const std::vector<std::size_t> sizes{5, 5, 4};
  auto inst = make_planted(sizes, 0.9, 0, 1);
  auto sol = solve_lp(inst.weights);
  for (std::size_t u = 0; u < 14; ++u) {
    for (std::size_t v = u + 1; v < 14; ++v) {
      const double want = inst.truth.together(u, v) ? 0.0 : 1.0;
      CHECK(sol.x(u, v) == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("dual simplex on a small bounded LP") {
  // min -x0 - x1 s.t. x0 + x1 <= 1.5, x0 - x1 <= 0.5, 0 <= x <= 1.
  DualSimplex lp({-1.0, -1.0}, {1.0, 1.0}, SimplexOptions{.perturbation = 0.0});
  const DualSimplex::Term r0[] = {{0, 1.0}, {1, 1.0}};
  const DualSimplex::Term r1[] = {{0, 1.0}, {1, -1.0}};
  lp.add_row(r0, 1.5);
  lp.add_row(r1, 0.5);
  REQUIRE(lp.reoptimize(100) == DualSimplex::Status::kOptimal);
  REQUIRE(lp.polish(100) == DualSimplex::Status::kOptimal);
  CHECK(lp.objective() == doctest::Approx(-1.5));
  CHECK(lp.value(0) + lp.value(1) == doctest::Approx(1.5));
  CHECK(lp.row_dual(0) == doctest::Approx(1.0));
}
