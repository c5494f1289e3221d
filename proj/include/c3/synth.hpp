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

// Synthetic instances with planted clusters or random weights, and a
// label-invariant comparison of two clusterings.

#ifndef C3_SYNTH_HPP_
#define C3_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "c3/matrix.hpp"
#include "c3/rounding.hpp"
#include "c3/weights.hpp"

namespace c3 {

struct PlantedInstance {
  EdgeWeights weights;
  Clustering truth;
  double gamma = 0.0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> flips;
  std::uint64_t seed = 0;
};

// Vertices v0, v1, ... laid out block by block. w+ = gamma inside blocks and
// 1 - gamma across, w- = 1 - w+; then `n_flips` distinct pairs drawn
// uniformly from `seed` get w+ and w- swapped.
PlantedInstance make_planted(std::span<const std::size_t> sizes, double gamma,
                             std::size_t n_flips, std::uint64_t seed);

// Swaps w+ and w- of one pair. Applying it twice is the identity.
void flip_pair(EdgeWeights& w, std::size_t u, std::size_t v);

struct WeightLevel {
  double probability;
  double value;  // w+ for pairs drawing this level
};

// "p:v,p:v,..." as used on the command line.
std::vector<WeightLevel> parse_levels(const std::string& text);
std::string format_levels(std::span<const WeightLevel> levels);

// Every pair draws w+ independently from the discrete distribution `levels`;
// w- = 1 - w+.
EdgeWeights make_random(std::size_t n, std::span<const WeightLevel> levels,
                        std::uint64_t seed);

// Maximum total weight of a one-to-one row/column assignment (rectangular
// allowed; unmatched rows or columns contribute nothing).
double max_assignment_weight(const DenseMatrix<double>& weights);

struct ClusteringComparison {
  bool exact_match = false;
  // Fraction of vertices in matched blocks under the best one-to-one block
  // matching of the intersection-size matrix.
  double overlap = 0.0;
};

ClusteringComparison compare_clusterings(const Clustering& a,
                                         const Clustering& b);

}  // namespace c3

#endif  // C3_SYNTH_HPP_
