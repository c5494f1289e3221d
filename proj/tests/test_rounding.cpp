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
#include <array>
#include <cmath>

#include "c3/error.hpp"
#include "c3/lp.hpp"
#include "c3/rng.hpp"
#include "c3/rounding.hpp"
#include "helpers.hpp"

using namespace c3;

namespace {

using Block = Clustering::Block;

// Euclidean distances of random points around a few centres, capped at 1.
DenseMatrix<double> metric_x(std::size_t n, Rng& rng) {
  const std::size_t centres = 1 + rng.below(4);
  std::vector<std::array<double, 2>> c(centres), p(n);
  for (auto& q : c) q = {rng.uniform(), rng.uniform()};
  for (auto& q : p) {
    const auto& base = c[rng.below(centres)];
    q = {base[0] + 0.15 * (rng.uniform() - 0.5), base[1] + 0.15 * (rng.uniform() - 0.5)};
  }
  DenseMatrix<double> x(n, n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      double d = std::hypot(p[u][0] - p[v][0], p[u][1] - p[v][1]);
      x(u, v) = x(v, u) = std::min(1.0, d);
    }
  }
  return x;
}

void check_partition(const Clustering& c, std::size_t n, std::size_t K) {
  CHECK(c.vertex_count() == n);
  std::vector<int> seen(n, 0);
  for (const auto& b : c.blocks()) {
    CHECK_FALSE(b.empty());
    CHECK(b.size() <= K + 1);
    for (auto v : b) ++seen[v];
  }
  for (int s : seen) CHECK(s == 1);
}

}  // namespace

TEST_CASE("Clustering basics") {
  Clustering c(4, {{2, 0}, {1}, {3}});
  CHECK(c.block_count() == 3);
  CHECK(c.together(0, 2));
  CHECK_FALSE(c.together(0, 1));
  CHECK(c.max_block_size() == 2);
  CHECK(c.same_partition(Clustering(4, {{3}, {0, 2}, {1}})));
  CHECK_FALSE(c.same_partition(Clustering(4, {{0, 1}, {2}, {3}})));
  auto l = Clustering::from_labels({5, 7, 5, 9});
  CHECK(l.same_partition(c));
  CHECK_THROWS_AS(Clustering(3, {{0, 1}, {1, 2}}), InputError);
  CHECK_THROWS_AS(Clustering(3, {{0, 1}}), InputError);
  CHECK_THROWS_AS(Clustering(2, {{0, 1}, {}}), InputError);
}

TEST_CASE("rounding parameters") {
  RoundingParams p;
  p.alpha = 0.5;
  CHECK_THROWS_AS(p.validate(), InputError);
  p.alpha = 0.0;
  CHECK_THROWS_AS(p.validate(), InputError);
  p.alpha = 2.0 / 7.0;
  p.K = 0;
  CHECK_THROWS_AS(p.validate(), InputError);
  CHECK(parse_pivot_rule("seeded-random") == PivotRule::kSeededRandom);
  CHECK(pivot_rule_name(PivotRule::kLargestNeighborhood) == "largest-neighborhood");
  CHECK_THROWS_AS(parse_pivot_rule("first"), InputError);
}

TEST_CASE("far points become singletons") {
  DenseMatrix<double> x(5, 5, 0.9);
  for (std::size_t i = 0; i < 5; ++i) x(i, i) = 0.0;
  auto c = pivot_round(x, RoundingParams{.K = 3});
  CHECK(c.block_count() == 5);
}

TEST_CASE("close pair joins the pivot") {
  DenseMatrix<double> x(3, 3, 0.0);
  auto c = pivot_round(x, RoundingParams{.K = 5});
  REQUIRE(c.block_count() == 1);
  CHECK(c.block(0) == Block{0, 1, 2});
}

TEST_CASE("mean distance at alpha/2 makes a singleton") {
  // T = {1, 2} with x = alpha/2 each: sum equals alpha |T| / 2.
  const double a = 2.0 / 7.0;
  DenseMatrix<double> x(3, 3, 0.0);
  x(0, 1) = x(1, 0) = a / 2;
  x(0, 2) = x(2, 0) = a / 2;
  x(1, 2) = x(2, 1) = 0.9;
  auto c = pivot_round(x, RoundingParams{.alpha = a, .K = 5});
  CHECK(c.block(0) == Block{0});
}

TEST_CASE("oversized close set is cut into groups") {
  // Pivot 0 with seven close vertices at increasing distance, K = 3.
  DenseMatrix<double> x(8, 8, 0.0);
  for (std::uint32_t v = 1; v < 8; ++v) x(0, v) = x(v, 0) = 0.01 * (8 - v);
  auto c = pivot_round(x, RoundingParams{.K = 3});
  REQUIRE(c.block_count() == 2);
  CHECK(c.block(0) == Block{0, 7, 6, 5});
  CHECK(c.block(1) == Block{4, 3, 2, 1});

  SUBCASE("uneven remainder") {
    DenseMatrix<double> y(10, 10, 0.0);
    auto d = pivot_round(y, RoundingParams{.K = 3});
    // |T| = 9: {0,1,2,3}, {4,5,6,7}, {8,9}.
    REQUIRE(d.block_count() == 3);
    CHECK(d.block(0) == Block{0, 1, 2, 3});
    CHECK(d.block(1) == Block{4, 5, 6, 7});
    CHECK(d.block(2) == Block{8, 9});
  }
}

TEST_CASE("pivot rules") {
  // Vertex 3 has the largest close set.
  DenseMatrix<double> x(5, 5, 1.0);
  for (std::size_t i = 0; i < 5; ++i) x(i, i) = 0.0;
  for (std::size_t v : {0, 1, 4}) x(3, v) = x(v, 3) = 0.05;
  auto largest = pivot_round(x, RoundingParams{.K = 4, .rule = PivotRule::kLargestNeighborhood});
  CHECK(largest.block(0) == Block{3, 0, 1, 4});
  auto lowest = pivot_round(x, RoundingParams{.K = 4});
  CHECK(lowest.block(0) == Block{0, 3});

  Rng rng(3);
  auto y = metric_x(20, rng);
  RoundingParams p{.K = 3, .rule = PivotRule::kSeededRandom, .seed = 17};
  auto a = pivot_round(y, p);
  auto b = pivot_round(y, p);
  CHECK(a.blocks() == b.blocks());
  check_partition(a, 20, 3);
}

TEST_CASE("rounding output is a bounded partition") {
  Rng rng(2024);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng.below(30);
    const std::size_t K = 1 + rng.below(5);
    auto x = metric_x(n, rng);
    REQUIRE(max_triangle_violation(x) <= 1e-12);
    for (auto rule : {PivotRule::kLowestIndex, PivotRule::kLargestNeighborhood,
                      PivotRule::kSeededRandom}) {
      auto c = pivot_round(x, RoundingParams{.K = K, .rule = rule, .seed = 5});
      check_partition(c, n, K);
    }
  }
}

TEST_CASE("clustering cost") {
  EdgeWeights w(test::named("v", 4));
  w.set(0, 1, 0.9, 0.1);
  w.set(2, 3, 0.8, 0.2);
  w.set(0, 2, 0.3, 0.7);
  w.set(0, 3, 0.1, 0.9);
  w.set(1, 2, 0.4, 0.6);
  w.set(1, 3, 0.2, 0.8);
  // Pair by pair: 0.1 + 0.2 inside, 0.3 + 0.1 + 0.4 + 0.2 across.
  CHECK(clustering_cost(Clustering(4, {{0, 1}, {2, 3}}), w) == doctest::Approx(1.3));
  CHECK(clustering_cost(Clustering(4, {{0}, {1}, {2}, {3}}), w) ==
        doctest::Approx(0.9 + 0.8 + 0.3 + 0.1 + 0.4 + 0.2));
  CHECK(clustering_cost(Clustering(4, {{0, 1, 2, 3}}), w) ==
        doctest::Approx(0.1 + 0.2 + 0.7 + 0.9 + 0.6 + 0.8));
  auto d = clustering_distances(Clustering(4, {{0, 1}, {2, 3}}));
  CHECK(objective(d, w) == doctest::Approx(1.3));
}

TEST_CASE("excess weight") {
  EdgeWeights w(test::named("v", 4));
  w.set(0, 1, 0.1, 0.9);
  w.set(0, 2, 0.5, 0.5);
  w.set(0, 3, 0.9, 0.1);
  w.set(1, 2, 1.0, 0.0);
  w.set(1, 3, 1.0, 0.0);
  w.set(2, 3, 1.0, 0.0);
  CHECK(excess_weight(w, 0, 1) == doctest::Approx(0.6));
  CHECK(excess_weight(w, 0, 3) == 0.0);
  CHECK(excess_weight(w, 0, 5) == 0.0);

  auto ones = test::uniform_weights(5, 1.0, 0.0);
  CHECK(excess_weight(ones, 2, 2) == doctest::Approx(2.0));

  // Sort-and-sum oracle on random weights.
  Rng rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rng.below(9);
    const std::size_t K = 1 + rng.below(n);
    EdgeWeights r(test::named("v", n));
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        double p = rng.uniform();
        r.set(u, v, p, 1 - p);
      }
    }
    double total = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<double> inc;
      for (std::size_t u = 0; u < n; ++u) {
        if (u != v) inc.push_back(r.plus(u, v));
      }
      std::sort(inc.begin(), inc.end());
      double want = 0.0;
      for (std::size_t i = 0; i + K < inc.size(); ++i) want += inc[i];
      CHECK(excess_weight(r, v, K) == doctest::Approx(want));
      total += want;
    }
    CHECK(total_excess_weight(r, K) == doctest::Approx(total));
  }
}
