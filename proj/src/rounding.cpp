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

#include "c3/rounding.hpp"

#include <algorithm>
#include <numeric>

#include "c3/error.hpp"
#include "c3/rng.hpp"

namespace c3 {

namespace {

constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

}  // namespace

Clustering::Clustering(std::size_t n, std::vector<Block> blocks)
    : blocks_(std::move(blocks)), block_of_(n, kUnassigned) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].empty()) throw InputError("clustering has an empty block");
    for (std::uint32_t v : blocks_[b]) {
      if (v >= n) throw InputError("clustering references an unknown vertex");
      if (block_of_[v] != kUnassigned) {
        throw InputError("vertex " + std::to_string(v) +
                         " appears in two blocks");
      }
      block_of_[v] = b;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (block_of_[v] == kUnassigned) {
      throw InputError("vertex " + std::to_string(v) + " is not clustered");
    }
  }
}

Clustering Clustering::from_labels(const std::vector<std::size_t>& labels) {
  std::vector<Block> blocks;
  std::vector<std::pair<std::size_t, std::size_t>> seen;  // label -> block
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](const auto& p) { return p.first == labels[v]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[v], blocks.size());
      blocks.push_back({static_cast<std::uint32_t>(v)});
    } else {
      blocks[it->second].push_back(static_cast<std::uint32_t>(v));
    }
  }
  return Clustering(labels.size(), std::move(blocks));
}

std::size_t Clustering::max_block_size() const {
  std::size_t m = 0;
  for (const auto& b : blocks_) m = std::max(m, b.size());
  return m;
}

bool Clustering::same_partition(const Clustering& other) const {
  if (vertex_count() != other.vertex_count() ||
      block_count() != other.block_count()) {
    return false;
  }
  // Map our block ids onto theirs; a consistent bijection means equality.
  std::vector<std::size_t> mapping(block_count(), kUnassigned);
  for (std::size_t v = 0; v < vertex_count(); ++v) {
    std::size_t ours = block_of_[v];
    std::size_t theirs = other.block_of_[v];
    if (mapping[ours] == kUnassigned) {
      mapping[ours] = theirs;
    } else if (mapping[ours] != theirs) {
      return false;
    }
  }
  std::vector<std::size_t> image = mapping;
  std::sort(image.begin(), image.end());
  return std::adjacent_find(image.begin(), image.end()) == image.end();
}

std::string_view pivot_rule_name(PivotRule rule) {
  switch (rule) {
    case PivotRule::kLowestIndex:
      return "lowest-index";
    case PivotRule::kLargestNeighborhood:
      return "largest-neighborhood";
    case PivotRule::kSeededRandom:
      return "seeded-random";
  }
  return "?";
}

PivotRule parse_pivot_rule(std::string_view text) {
  for (PivotRule r : {PivotRule::kLowestIndex, PivotRule::kLargestNeighborhood,
                      PivotRule::kSeededRandom}) {
    if (text == pivot_rule_name(r)) return r;
  }
  throw InputError("unknown pivot rule '" + std::string(text) + "'");
}

void RoundingParams::validate() const {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw InputError("alpha must lie in (0, 1/2)");
  }
  if (K < 1) throw InputError("cluster size bound K must be >= 1");
}

Clustering pivot_round(const DenseMatrix<double>& x, const RoundingParams& p) {
  p.validate();
  const std::size_t n = x.rows();
  if (x.cols() != n) throw InputError("distance matrix must be square");

  // Survivors kept sorted so "lowest index" is the front.
  std::vector<std::uint32_t> survivors(n);
  std::iota(survivors.begin(), survivors.end(), 0u);
  std::vector<bool> removed(n, false);
  std::vector<Clustering::Block> blocks;
  Rng rng(p.seed);

  auto close_set = [&](std::uint32_t u) {
    std::vector<std::uint32_t> t;
    for (std::uint32_t w : survivors) {
      if (w != u && x(u, w) <= p.alpha) t.push_back(w);
    }
    return t;
  };

  while (!survivors.empty()) {
    std::uint32_t u = survivors.front();
    if (p.rule == PivotRule::kSeededRandom) {
      u = survivors[static_cast<std::size_t>(rng.below(survivors.size()))];
    } else if (p.rule == PivotRule::kLargestNeighborhood) {
      std::size_t best = 0;
      for (std::uint32_t cand : survivors) {
        std::size_t size = close_set(cand).size();
        if (size > best) {
          best = size;
          u = cand;
        }
      }
    }

    std::vector<std::uint32_t> t = close_set(u);
    double sum = 0.0;
    for (std::uint32_t w : t) sum += x(u, w);

    std::vector<Clustering::Block> emitted;
    if (sum >= p.alpha * static_cast<double>(t.size()) / 2.0) {
      emitted.push_back({u});
    } else if (t.size() <= p.K) {
      Clustering::Block b{u};
      b.insert(b.end(), t.begin(), t.end());
      emitted.push_back(std::move(b));
    } else {
      std::stable_sort(t.begin(), t.end(),
                       [&](std::uint32_t a, std::uint32_t b) {
                         if (x(u, a) != x(u, b)) return x(u, a) < x(u, b);
                         return a < b;
                       });
      Clustering::Block first{u};
      first.insert(first.end(), t.begin(), t.begin() + static_cast<long>(p.K));
      emitted.push_back(std::move(first));
      for (std::size_t i = p.K; i < t.size(); i += p.K + 1) {
        std::size_t end = std::min(t.size(), i + p.K + 1);
        emitted.emplace_back(t.begin() + static_cast<long>(i),
                             t.begin() + static_cast<long>(end));
      }
    }

    for (const auto& b : emitted) {
      for (std::uint32_t v : b) removed[v] = true;
    }
    std::erase_if(survivors, [&](std::uint32_t v) { return removed[v]; });
    for (auto& b : emitted) blocks.push_back(std::move(b));
  }
  return Clustering(n, std::move(blocks));
}

double clustering_cost(const Clustering& c, const EdgeWeights& w) {
  const std::size_t n = w.size();
  if (c.vertex_count() != n) {
    throw InputError("clustering and weights cover different vertex counts");
  }
  double cost = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      cost += c.together(u, v) ? w.minus(u, v) : w.plus(u, v);
    }
  }
  return cost;
}

double excess_weight(const EdgeWeights& w, std::size_t v, std::size_t K) {
  const std::size_t n = w.size();
  if (n == 0 || n - 1 <= K) return 0.0;
  std::vector<double> incident;
  incident.reserve(n - 1);
  for (std::size_t z = 0; z < n; ++z) {
    if (z != v) incident.push_back(w.plus(v, z));
  }
  const std::size_t take = n - 1 - K;
  std::partial_sort(incident.begin(), incident.begin() + static_cast<long>(take),
                    incident.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < take; ++i) sum += incident[i];
  return sum;
}

double total_excess_weight(const EdgeWeights& w, std::size_t K) {
  double total = 0.0;
  for (std::size_t v = 0; v < w.size(); ++v) total += excess_weight(w, v, K);
  return total;
}

DenseMatrix<double> clustering_distances(const Clustering& c) {
  const std::size_t n = c.vertex_count();
  DenseMatrix<double> x(n, n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && !c.together(u, v)) x(u, v) = 1.0;
    }
  }
  return x;
}

}  // namespace c3
