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

#ifndef C3_ROUNDING_HPP_
#define C3_ROUNDING_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "c3/matrix.hpp"
#include "c3/weights.hpp"

namespace c3 {

// Partition of {0, ..., n-1} into nonempty blocks.
class Clustering {
 public:
  using Block = std::vector<std::uint32_t>;

  Clustering() = default;
  // Blocks must be disjoint, nonempty and cover 0..n-1. Block order and
  // member order are kept as given.
  Clustering(std::size_t n, std::vector<Block> blocks);

  // Block ids taken from `labels[v]`, renumbered by first appearance.
  static Clustering from_labels(const std::vector<std::size_t>& labels);

  std::size_t vertex_count() const { return block_of_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::size_t b) const { return blocks_.at(b); }
  std::size_t block_of(std::size_t v) const { return block_of_.at(v); }
  bool together(std::size_t u, std::size_t v) const {
    return block_of_.at(u) == block_of_.at(v);
  }
  std::size_t max_block_size() const;

  // Same partition regardless of block or member order.
  bool same_partition(const Clustering& other) const;

 private:
  std::vector<Block> blocks_;
  std::vector<std::size_t> block_of_;
};

enum class PivotRule {
  kLowestIndex,         // smallest surviving vertex index
  kLargestNeighborhood, // most surviving vertices within alpha; ties lowest
  kSeededRandom,        // uniform over survivors from `seed`
};

std::string_view pivot_rule_name(PivotRule rule);
PivotRule parse_pivot_rule(std::string_view text);

struct RoundingParams {
  double alpha = 2.0 / 7.0;
  std::size_t K = 1;  // clusters hold at most K + 1 vertices
  PivotRule rule = PivotRule::kLowestIndex;
  std::uint64_t seed = 0;

  // Throws InputError unless 0 < alpha < 1/2 and K >= 1.
  void validate() const;
};

// Size-bounded pivot rounding of a fractional distance matrix.
//
// Repeatedly take a pivot u from the surviving set S and its close set
// T = {w in S - u : x_uw <= alpha}. If the mean of x_uw over T is at least
// alpha/2 (or T is empty), u becomes a singleton. Otherwise, if |T| <= K,
// {u} + T is a cluster; if not, T is ordered by (x_uw, index) and cut into
// u's cluster (u plus the first K) and further clusters of K + 1, the last
// possibly smaller.
Clustering pivot_round(const DenseMatrix<double>& x, const RoundingParams& p);

// sum of w+ over separated pairs plus w- over co-clustered pairs.
double clustering_cost(const Clustering& c, const EdgeWeights& w);

// Excess weight at v: the sum of the (n - 1 - K) smallest w+ incident to v,
// or 0 when v has at most K neighbours.
double excess_weight(const EdgeWeights& w, std::size_t v, std::size_t K);
double total_excess_weight(const EdgeWeights& w, std::size_t K);

// Distance matrix of a clustering: 0 within blocks, 1 across.
DenseMatrix<double> clustering_distances(const Clustering& c);

}  // namespace c3

#endif  // C3_ROUNDING_HPP_
