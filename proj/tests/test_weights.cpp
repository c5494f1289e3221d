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

#include "c3/error.hpp"
#include "c3/percentile.hpp"
#include "c3/rng.hpp"
#include "c3/weights.hpp"
#include "helpers.hpp"

using namespace c3;

TEST_CASE("exclusivity weight") {
  // Samples 1..4 mapped to indices 0..3.
  auto m = test::from_sets({{0, 1, 2}, {2, 3}, {4, 5}, {0, 1, 2, 3, 4}}, 6);
  CHECK(exclusivity_weight(m, 0, 1, 3.0) == doctest::Approx(1.5));
  CHECK(exclusivity_weight(m, 0, 2, 2.0) == 0.0);
  CHECK(exclusivity_weight(m, 0, 3, 0.7) == doctest::Approx(0.7));
  CHECK(exclusivity_weight(m, 1, 0, 3.0) == exclusivity_weight(m, 0, 1, 3.0));
}

TEST_CASE("coverage raw") {
  auto m = test::from_sets({{0, 1, 2}, {2, 3}, {0, 1, 2}, {4, 5, 6, 7}}, 8);
  CHECK(coverage_raw(m, 0, 1) == 3);
  CHECK(coverage_raw(m, 0, 2) == 0);
  CHECK(coverage_raw(m, 0, 3) == 7);
}

TEST_CASE("percentile cap") {
  std::vector<double> values;
  for (int i = 1; i <= 100; ++i) values.push_back(i);
  const double t = nearest_rank_percentile(values, 95);
  CHECK(t == 95.0);
  CHECK(percentile_cap(19, t) == doctest::Approx(0.2));
  CHECK(percentile_cap(96, t) == 1.0);
  CHECK(percentile_cap(t / 2, t) == doctest::Approx(0.5));
  CHECK(percentile_cap(0, 0) == 0.0);
  CHECK(percentile_cap(3, 0) == 1.0);
}

TEST_CASE("network affinity") {
  // 0-1, 0-2; 3 isolated; 4 isolated.
  auto net = test::graph(5, {{0, 1}, {0, 2}});
  CHECK(network_affinity(net, 0, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(network_affinity(net, 3, 4) == 0.0);
  CHECK(network_affinity(net, 1, 2) == doctest::Approx(1.0 / 3.0));
  auto twins = test::graph(2, {{0, 1}});
  CHECK(network_affinity(twins, 0, 1) == 1.0);
  CHECK(network_affinity(net, "g0", "g1") == doctest::Approx(2.0 / 3.0));
  CHECK(network_affinity(net, "g0", "missing") == 0.0);
}

TEST_CASE("expression affinity") {
  ExpressionMatrix z{test::named("g", 4), test::samples(3), DenseMatrix<double>(4, 3),
                     {true, true, true, false}, {0, 0, 0, 0}};
  const double rows[4][3] = {{1, -1, 0}, {-2, 2, 0}, {1, 1, 0}, {1, -1, 0}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) z.z(i, j) = rows[i][j];
  }
  CHECK(expression_affinity(z, 0, 0) == doctest::Approx(1.0));
  CHECK(expression_affinity(z, 0, 1) == doctest::Approx(1.0));
  CHECK(expression_affinity(z, 0, 2) == doctest::Approx(0.0));
  CHECK(expression_affinity(z, 0, 3) == 0.0);
  CHECK(expression_affinity(z, "g0", "nope") == 0.0);
}

TEST_CASE("pair normalization") {
  auto a = normalize_pair(0.2, 0.3);
  CHECK(a.plus == doctest::Approx(0.4));
  CHECK(a.minus == doctest::Approx(0.6));
  CHECK(a.rescaled);
  auto b = normalize_pair(0.7, 0.5);
  CHECK(b.plus == 0.7);
  CHECK(b.minus == 0.5);
  CHECK_FALSE(b.rescaled);
  auto c = normalize_pair(0.0, 0.0);
  CHECK(c.plus == 1.0);
  CHECK(c.minus == 0.0);
  CHECK(c.zero_sum);
}

TEST_CASE("share validation") {
  auto cfg = WeightConfig::for_scheme(Scheme::Full);
  cfg.w1 = 0.167;
  cfg.w2 = 0.333;
  cfg.w3 = 0.333;
  auto v = cfg.validated();
  CHECK(v.w1 + v.w2 + v.w3 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.w2 == doctest::Approx(0.333 / 0.833));

  auto me = WeightConfig::for_scheme(Scheme::MeCo);
  me.w2 = 0.5;
  CHECK_THROWS_AS(me.validated(), InputError);
  auto neg = WeightConfig::for_scheme(Scheme::NiMeCo);
  neg.w2 = -0.1;
  CHECK_THROWS_AS(neg.validated(), InputError);
  CHECK(parse_scheme("NI-ME-CO") == Scheme::NiMeCo);
  CHECK(scheme_name(Scheme::ExMeCo) == "EX-ME-CO");
  CHECK_THROWS_AS(parse_scheme("XX"), InputError);
}

namespace {

struct RandomInputs {
  MutationMatrix m;
  InteractionNetwork net;
  ExpressionMatrix z;
};

RandomInputs random_inputs(std::uint64_t seed, std::size_t genes, std::size_t samples) {
  Rng rng(seed);
  std::vector<std::vector<std::uint32_t>> sets(genes);
  for (auto& s : sets) {
    for (std::uint32_t j = 0; j < samples; ++j) {
      if (rng.uniform() < 0.3) s.push_back(j);
    }
    if (s.empty()) s.push_back(static_cast<std::uint32_t>(rng.below(samples)));
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < genes; ++u) {
    for (std::size_t v = u + 1; v < genes; ++v) {
      if (rng.uniform() < 0.2) edges.emplace_back(u, v);
    }
  }
  RawExpression raw{test::named("g", genes), test::samples(samples),
                    DenseMatrix<double>(genes, samples)};
  for (std::size_t i = 0; i < genes; ++i) {
    for (std::size_t j = 0; j < samples; ++j) raw.values(i, j) = rng.uniform() * 4 - 2;
  }
  return {test::from_sets(sets, samples), test::graph(genes, edges), zscore(raw)};
}

}  // namespace

TEST_CASE("build_weights invariants and degeneracy") {
  auto in = random_inputs(11, 15, 30);
  for (Scheme s : {Scheme::MeCo, Scheme::NiMeCo, Scheme::ExMeCo, Scheme::Full}) {
    auto cfg = WeightConfig::for_scheme(s);
    cfg.a = 2.5;
    cfg.j_coverage = 80;
    auto w = build_weights(in.m, &in.net, &in.z, cfg);
    CHECK_FALSE(w.check().has_value());
    for (std::size_t u = 0; u < w.size(); ++u) {
      for (std::size_t v = u + 1; v < w.size(); ++v) {
        CHECK(w.plus(u, v) >= 0.0);
        CHECK(w.plus(u, v) <= 1.0);
        CHECK(w.plus(u, v) + w.minus(u, v) >= 1.0 - 1e-12);
        CHECK(w.plus(u, v) == w.plus(v, u));
        CHECK(w.minus(u, v) == w.minus(v, u));
      }
    }
    CHECK(build_weights(in.m, &in.net, &in.z, cfg) == w);
  }

  auto base = build_weights(in.m, nullptr, nullptr, WeightConfig::for_scheme(Scheme::MeCo));
  auto ni = WeightConfig::for_scheme(Scheme::NiMeCo);
  ni.w1 = 1.0;
  ni.w2 = 0.0;
  CHECK(build_weights(in.m, &in.net, nullptr, ni) == base);
  auto ex = WeightConfig::for_scheme(Scheme::ExMeCo);
  ex.w1 = 1.0;
  ex.w3 = 0.0;
  CHECK(build_weights(in.m, nullptr, &in.z, ex) == base);

  CHECK_THROWS_AS(build_weights(in.m, nullptr, nullptr, WeightConfig::for_scheme(Scheme::NiMeCo)),
                  InputError);
}

TEST_CASE("build_weights on a hand-checked cohort") {
  // Two exclusive genes and a third overlapping both; ME-CO with a = 1.
  auto m = test::from_sets({{0, 1}, {2, 3}, {1, 2}}, 4);
  WeightConfig cfg = WeightConfig::for_scheme(Scheme::MeCo);
  cfg.j_coverage = 100;
  WeightBuildStats st;
  auto w = build_weights(m, nullptr, nullptr, cfg, &st);
  // D = {4, 2, 2}; T = 4.
  CHECK(st.coverage_threshold == 4.0);
  CHECK(w.plus(0, 1) == 1.0);
  CHECK(w.minus(0, 1) == 0.0);
  // Pair (0, 2): w+ = 2/4, w- = 1/2, sum 1, unchanged.
  CHECK(w.plus(0, 2) == doctest::Approx(0.5));
  CHECK(w.minus(0, 2) == doctest::Approx(0.5));
  CHECK(st.rescaled_pairs == 0);
}

TEST_CASE("weights TSV round trip") {
  auto in = random_inputs(5, 6, 12);
  auto w = build_weights(in.m, nullptr, nullptr, WeightConfig::for_scheme(Scheme::MeCo));
  std::ostringstream out;
  write_weights_tsv(out, w);
  std::istringstream back(out.str());
  auto r = read_weights_tsv(back, "w.tsv");
  REQUIRE(r.size() == w.size());
  for (std::size_t u = 0; u < w.size(); ++u) {
    for (std::size_t v = u + 1; v < w.size(); ++v) {
      CHECK(r.plus(u, v) == doctest::Approx(w.plus(u, v)).epsilon(1e-8));
      CHECK(r.minus(u, v) == doctest::Approx(w.minus(u, v)).epsilon(1e-8));
    }
  }
  std::istringstream bad("gene_u\tgene_v\tw_plus\tw_minus\na\tb\t1.5\t0\n");
  CHECK_THROWS_AS(read_weights_tsv(bad, "bad.tsv"), InputError);
}

TEST_CASE("EdgeWeights::check reports violations") {
  EdgeWeights w(test::named("v", 3));
  w.set(0, 1, 1.0, 0.0);
  w.set(0, 2, 0.5, 0.5);
  w.set(1, 2, 0.3, 0.3);
  CHECK(w.check().has_value());
  w.set(1, 2, 0.3, 0.7);
  CHECK_FALSE(w.check().has_value());
}
