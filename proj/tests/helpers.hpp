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

#ifndef C3_TESTS_HELPERS_HPP_
#define C3_TESTS_HELPERS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "c3/catalog.hpp"
#include "c3/ingest.hpp"
#include "c3/matrix.hpp"
#include "c3/synth.hpp"
#include "c3/weights.hpp"

namespace c3::test {

inline GeneCatalog named(const std::string& prefix, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return GeneCatalog(std::move(names));
}

inline SampleCatalog samples(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
  return SampleCatalog(std::move(names));
}

// Gene i is mutated in the samples listed in sets[i].
inline MutationMatrix from_sets(const std::vector<std::vector<std::uint32_t>>& sets,
                                std::size_t n_samples) {
  DenseMatrix<std::uint8_t> e(sets.size(), n_samples, 0);
  for (std::size_t g = 0; g < sets.size(); ++g) {
    for (auto s : sets[g]) e(g, s) = 1;
  }
  return MutationMatrix(named("g", sets.size()), samples(n_samples), std::move(e));
}

inline InteractionNetwork graph(std::size_t n,
                                const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                const std::string& prefix = "g") {
  return InteractionNetwork::from_edges(named(prefix, n), edges);
}

// Two-valued weights on every pair.
inline EdgeWeights uniform_weights(std::size_t n, double plus, double minus) {
  EdgeWeights w(named("v", n));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) w.set(u, v, plus, minus);
  }
  return w;
}

// w+ uniform over 0.1, 0.2, ..., 0.9.
inline std::vector<WeightLevel> nine_levels() {
  std::vector<WeightLevel> out;
  for (int i = 1; i <= 9; ++i) out.push_back({1.0 / 9.0, i / 10.0});
  return out;
}

}  // namespace c3::test

#endif  // C3_TESTS_HELPERS_HPP_
