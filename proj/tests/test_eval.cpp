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
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "c3/error.hpp"
#include "c3/eval.hpp"
#include "c3/rng.hpp"
#include "helpers.hpp"

using namespace c3;
namespace mp = boost::multiprecision;

namespace {

mp::cpp_int choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  mp::cpp_int r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Exact tail as a rational, converted once at the end.
double exact_tail(const ContingencyTable& t, Tail tail) {
  const std::uint64_t row = t.a + t.b, col = t.a + t.c, n = t.n();
  const std::uint64_t lo = row + col > n ? row + col - n : 0;
  const std::uint64_t hi = std::min(row, col);
  mp::cpp_int num = 0;
  const std::uint64_t from = tail == Tail::kLeft ? lo : t.a;
  const std::uint64_t to = tail == Tail::kLeft ? t.a : hi;
  for (std::uint64_t x = from; x <= to; ++x) num += choose(row, x) * choose(n - row, col - x);
  mp::cpp_rational q(num, choose(n, col));
  return q.convert_to<double>();
}

}  // namespace

TEST_CASE("Fisher point probability") {
  CHECK(fisher_point({1, 1, 1, 1}) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(fisher_point({0, 0, 0, 9}) == doctest::Approx(1.0));
  // Normalization over a' with margins row 7, col 5, n 20.
  double sum = 0.0;
  for (std::uint64_t a = 0; a <= 5; ++a) sum += fisher_point({a, 7 - a, 5 - a, 8 + a});
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("Fisher tails") {
  CHECK(fisher_exclusivity_p({3, 0, 2, 5}) == doctest::Approx(1.0));
  CHECK(fisher_exclusivity_p({0, 4, 3, 5}) == doctest::Approx(fisher_point({0, 4, 3, 5})));
  CHECK(fisher_exclusivity_p({0, 4, 3, 5}, Tail::kRight) == doctest::Approx(1.0));
  CHECK(parse_tail("right") == Tail::kRight);
  CHECK(tail_name(Tail::kLeft) == "left");
  CHECK_THROWS_AS(parse_tail("both"), InputError);

  Rng rng(12);
  for (int rep = 0; rep < 300; ++rep) {
    ContingencyTable t{rng.below(40), rng.below(40), rng.below(40), rng.below(40)};
    for (Tail tail : {Tail::kLeft, Tail::kRight}) {
      const double want = exact_tail(t, tail);
      const double got = fisher_exclusivity_p(t, tail);
      CHECK(std::abs(got - want) <= 1e-10 * want);
      CHECK(got > 0.0);
      CHECK(got <= 1.0);
    }
  }

  SUBCASE("monotone in a with margins fixed") {
    double prev = 0.0;
    for (std::uint64_t a = 0; a <= 6; ++a) {
      double p = fisher_exclusivity_p({a, 10 - a, 6 - a, 14 + a});
      CHECK(p >= prev);
      prev = p;
    }
  }
}

TEST_CASE("median") {
  CHECK(median({3.0}) == 3.0);
  CHECK(median({4.0, 1.0}) == 2.5);
  CHECK(median({5.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK_THROWS(median({}));
}

TEST_CASE("cluster exclusivity and coverage") {
  // Three genes with disjoint pairs of samples out of six.
  auto m = test::from_sets({{0, 1}, {2, 3}, {4, 5}, {0, 1, 2, 3, 4, 5}}, 6);
  const std::uint32_t pair[] = {0, 1};
  const std::uint32_t trio[] = {0, 1, 2};
  const std::uint32_t one[] = {2};
  const double p01 = fisher_exclusivity_p(contingency(m, 0, 1));
  CHECK(*cluster_exclusivity(pair, m) == p01);
  CHECK(*cluster_exclusivity(trio, m) == doctest::Approx(p01));
  CHECK_FALSE(cluster_exclusivity(one, m).has_value());
  auto t = contingency(m, 0, 1);
  CHECK(t.a == 0);
  CHECK(t.b == 2);
  CHECK(t.c == 2);
  CHECK(t.d == 2);

  CHECK(cluster_coverage(trio, m) == 1.0);
  auto m2 = test::from_sets({{0, 1, 2}, {2, 3}, {0, 1, 2}}, 10);
  const std::uint32_t first[] = {0, 1};
  const std::uint32_t twins[] = {0, 2};
  CHECK(cluster_coverage(first, m2) == doctest::Approx(0.4));
  CHECK(cluster_coverage(twins, m2) == doctest::Approx(0.3));
}

TEST_CASE("shortest hops and pairwise distances") {
  auto path = test::graph(4, {{0, 1}, {1, 2}});  // g3 isolated
  auto hops = shortest_hops(path, 0);
  CHECK(hops == std::vector<std::uint32_t>{0, 1, 2, kUnreachable});
  std::vector<std::string> ac{"g0", "g2"};
  CHECK(*pairwise_distances(ac, path).mean == 2.0);
  std::vector<std::string> adj{"g1", "g2"};
  CHECK(*pairwise_distances(adj, path).mean == 1.0);
  std::vector<std::string> mixed{"g0", "g3", "nowhere", "g1"};
  auto d = pairwise_distances(mixed, path);
  CHECK(d.pairs == 1);
  CHECK(d.excluded == 5);
  CHECK(*d.mean == 1.0);
  std::vector<std::string> lost{"g3", "nowhere"};
  CHECK_FALSE(pairwise_distances(lost, path).mean.has_value());

  // Floyd-Warshall on random graphs.
  Rng rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 5 + rng.below(25);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (rng.uniform() < 0.15) edges.emplace_back(u, v);
      }
    }
    auto net = test::graph(n, edges);
    const std::uint64_t inf = 1u << 30;
    std::vector<std::vector<std::uint64_t>> fw(n, std::vector<std::uint64_t>(n, inf));
    for (std::size_t v = 0; v < n; ++v) fw[v][v] = 0;
    for (auto [u, v] : edges) fw[u][v] = fw[v][u] = 1;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) fw[i][j] = std::min(fw[i][j], fw[i][k] + fw[k][j]);
      }
    }
    for (std::size_t s = 0; s < n; ++s) {
      auto h = shortest_hops(net, s);
      for (std::size_t v = 0; v < n; ++v) {
        CHECK(h[v] == (fw[s][v] >= inf ? kUnreachable : fw[s][v]));
      }
    }
  }
}

TEST_CASE("driver proportion") {
  std::vector<std::vector<std::string>> blocks(4);
  for (int i = 0; i < 20; ++i) blocks[i % 4].push_back("g" + std::to_string(i));
  CHECK(driver_proportion(blocks, {"g1", "g7", "g19", "other"}) == doctest::Approx(0.15));
  CHECK(driver_proportion(blocks, {}) == 0.0);
  std::set<std::string> all;
  for (const auto& b : blocks) all.insert(b.begin(), b.end());
  CHECK(driver_proportion(blocks, all) == 1.0);
  CHECK(driver_proportion(std::vector<std::vector<std::string>>{}, all) == 0.0);
}

namespace {

struct PathCohort {
  MutationMatrix m;
  InteractionNetwork net;
  std::set<std::string> drivers;
};

// Six genes on a path g0 - ... - g5, each mutated in its own two samples.
PathCohort path_cohort() {
  std::vector<std::vector<std::uint32_t>> sets;
  for (std::uint32_t g = 0; g < 6; ++g) sets.push_back({2 * g, 2 * g + 1});
  return {test::from_sets(sets, 12),
          test::graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}),
          {"g0", "g3"}};
}

}  // namespace

TEST_CASE("evaluator scores and top clusters") {
  auto c = path_cohort();
  Evaluator ev(c.m, &c.net, &c.drivers);
  const std::uint32_t b0[] = {0, 2};
  auto s = ev.score(3, b0);
  CHECK(s.id == 3);
  CHECK(s.size == 2);
  CHECK(*s.median_p == doctest::Approx(fisher_exclusivity_p(contingency(c.m, 0, 2))));
  CHECK(s.coverage == doctest::Approx(4.0 / 12.0));
  CHECK(*s.distance->mean == 2.0);
  CHECK(*s.driver_proportion == 0.5);

  std::vector<ClusterScore> scores(3);
  scores[0] = {0, 2, 0.5, 0.0, std::nullopt, std::nullopt};
  scores[1] = {1, 1, std::nullopt, 0.0, std::nullopt, std::nullopt};
  scores[2] = {2, 3, 0.1, 0.0, std::nullopt, std::nullopt};
  CHECK(Evaluator::top_clusters(scores, 10) == std::vector<std::size_t>{2, 0});
  CHECK(Evaluator::top_clusters(scores, 1) == std::vector<std::size_t>{2});
}

TEST_CASE("permutation baselines") {
  auto c = path_cohort();
  Evaluator ev(c.m, &c.net, &c.drivers);

  SUBCASE("constant statistic gives p = 1") {
    const std::vector<Clustering::Block> whole{{0, 1, 2, 3, 4, 5}};
    for (Statistic s : {Statistic::kExclusivity, Statistic::kCoverage, Statistic::kDistance,
                        Statistic::kDriverProportion}) {
      auto b = ev.permutation_baseline(s, whole, 10, 50, 1);
      CHECK(b.p_value == 1.0);
      CHECK(b.trials == 50);
      CHECK(b.mean == doctest::Approx(b.observed));
    }
  }

  SUBCASE("trials = 0 is rejected") {
    const std::vector<Clustering::Block> blocks{{0, 1}, {2, 3}, {4, 5}};
    CHECK_THROWS_AS(ev.permutation_baseline(Statistic::kCoverage, blocks, 10, 0, 1), InputError);
  }

  SUBCASE("distance baseline matches the all-pairs expectation") {
    // Mean path distance over the 15 pairs: (5*1 + 4*2 + 3*3 + 2*4 + 1*5) / 15.
    const double expected = 35.0 / 15.0;
    const std::vector<Clustering::Block> blocks{{0, 1}, {2, 3}, {4, 5}};
    auto b = ev.permutation_baseline(Statistic::kDistance, blocks, 10, 4000, 99);
    CHECK(b.observed == 1.0);
    CHECK(std::abs(b.mean - expected) < 0.05);
    CHECK(b.p_value > 0.0);
    CHECK(b.p_value <= 1.0);
    auto again = ev.permutation_baseline(Statistic::kDistance, blocks, 10, 4000, 99);
    CHECK(again.mean == b.mean);
    CHECK(again.p_value == b.p_value);
  }
}

TEST_CASE("evaluate and report output") {
  auto c = path_cohort();
  Clustering cl(6, {{0, 1, 2}, {3, 4}, {5}});
  EvalOptions opts;
  opts.trials = 20;
  opts.seed = 3;
  auto r = evaluate(cl, c.m, &c.net, &c.drivers, opts);
  CHECK(r.clusters.size() == 3);
  CHECK(r.top.size() == 2);
  CHECK(r.sample_count == 12);
  CHECK(r.baselines.size() == 4);
  for (const auto& sc : r.clusters) {
    CHECK(sc.coverage >= 0.0);
    CHECK(sc.coverage <= 1.0);
    if (sc.median_p) CHECK(*sc.median_p > 0.0);
  }

  std::ostringstream js;
  write_report_json(js, r, cl, c.m.genes());
  auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["sample_count"] == 12);
  CHECK(doc["clusters"].size() == 3);
  CHECK(doc["clusters"][2]["median_exclusivity_p"].is_null());
  CHECK(doc["clusters"][0]["genes"][0] == "g0");
  CHECK(doc["top_by_exclusivity"].size() == 2);
  CHECK(doc["permutation_baselines"].size() == 4);

  std::ostringstream tsv;
  write_report_tsv(tsv, r, cl, c.m.genes());
  std::istringstream lines(tsv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header.rfind("cluster\tsize\tmedian_exclusivity_p", 0) == 0);
  std::size_t rows = 0;
  for (std::string l; std::getline(lines, l);) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("driver distance study") {
  auto net = test::graph(4, {{0, 1}, {1, 2}, {2, 3}});
  auto r = driver_distance_study(net, {"g0", "g3", "absent"}, 100, 50, 1);
  CHECK(r.random_exhaustive);
  CHECK(r.random_pairs == 6);
  CHECK(r.random_histogram == std::map<std::uint32_t, std::size_t>{{1, 3}, {2, 2}, {3, 1}});
  CHECK(r.driver_histogram == std::map<std::uint32_t, std::size_t>{{3, 1}});
  CHECK(r.drivers_listed == 3);
  CHECK(r.drivers_in_network == 2);
  CHECK(*r.driver_mean == 3.0);
  CHECK(*r.random_mean == doctest::Approx(10.0 / 6.0));

  auto all = driver_distance_study(net, {"g0", "g1", "g2", "g3"}, 100, 50, 1);
  CHECK(all.random_histogram == all.driver_histogram);
  CHECK(all.p_value == 1.0);

  auto sampled = driver_distance_study(net, {"g0", "g3"}, 4, 10, 2);
  CHECK_FALSE(sampled.random_exhaustive);
  CHECK(sampled.random_pairs == 4);
  CHECK(sampled.random_pairs_requested == 4);
}
