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

#include "c3/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "c3/error.hpp"
#include "c3/rng.hpp"

namespace c3 {

namespace {

GeneCatalog vertex_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  return GeneCatalog(std::move(names));
}

double parse_number(std::string_view text, const std::string& what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw InputError("bad " + what + " '" + std::string(text) + "'");
  }
  return value;
}

void check_levels(std::span<const WeightLevel> levels) {
  if (levels.empty()) throw InputError("weight distribution has no levels");
  double total = 0.0;
  for (const auto& l : levels) {
    if (!(l.probability >= 0.0)) {
      throw InputError("level probabilities must be nonnegative");
    }
    if (!(l.value >= 0.0 && l.value <= 1.0)) {
      throw InputError("level values must lie in [0, 1]");
    }
    total += l.probability;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InputError("level probabilities must sum to 1");
  }
}

}  // namespace

void flip_pair(EdgeWeights& w, std::size_t u, std::size_t v) {
  const double p = w.plus(u, v);
  const double m = w.minus(u, v);
  w.set(u, v, m, p);
}

PlantedInstance make_planted(std::span<const std::size_t> sizes, double gamma,
                             std::size_t n_flips, std::uint64_t seed) {
  if (!(gamma > 0.5 && gamma < 1.0)) {
    throw InputError("gamma must lie in (1/2, 1)");
  }
  std::vector<Clustering::Block> blocks;
  std::uint32_t next = 0;
  for (std::size_t s : sizes) {
    if (s == 0) throw InputError("planted block sizes must be positive");
    Clustering::Block b(s);
    std::iota(b.begin(), b.end(), next);
    next += static_cast<std::uint32_t>(s);
    blocks.push_back(std::move(b));
  }
  const std::size_t n = next;
  if (n < 2) throw InputError("planted instance needs at least two vertices");

  PlantedInstance inst{EdgeWeights(vertex_names(n)),
                       Clustering(n, std::move(blocks)), gamma, {}, seed};
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double plus = inst.truth.together(u, v) ? gamma : 1.0 - gamma;
      inst.weights.set(u, v, plus, 1.0 - plus);
    }
  }

  const std::size_t pairs = pair_count(n);
  if (n_flips > pairs) {
    throw InputError("cannot flip " + std::to_string(n_flips) + " of " +
                     std::to_string(pairs) + " pairs");
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> all;
  all.reserve(pairs);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) all.emplace_back(u, v);
  }
  // Partial Fisher-Yates: the first n_flips slots are a uniform sample.
  Rng rng(seed);
  for (std::size_t i = 0; i < n_flips; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(pairs - i));
    std::swap(all[i], all[j]);
    flip_pair(inst.weights, all[i].first, all[i].second);
    inst.flips.push_back(all[i]);
  }
  return inst;
}

std::vector<WeightLevel> parse_levels(const std::string& text) {
  std::vector<WeightLevel> levels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InputError("weight level '" + item + "' is not probability:value");
    }
    std::string_view sv(item);
    levels.push_back({parse_number(sv.substr(0, colon), "level probability"),
                      parse_number(sv.substr(colon + 1), "level value")});
  }
  check_levels(levels);
  return levels;
}

std::string format_levels(std::span<const WeightLevel> levels) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i) out << ',';
    out << levels[i].probability << ':' << levels[i].value;
  }
  return out.str();
}

EdgeWeights make_random(std::size_t n, std::span<const WeightLevel> levels,
                        std::uint64_t seed) {
  check_levels(levels);
  if (n < 2) throw InputError("random instance needs at least two vertices");
  EdgeWeights w(vertex_names(n));
  Rng rng(seed);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double r = rng.uniform();
      double acc = 0.0;
      double value = levels.back().value;
      for (const auto& l : levels) {
        acc += l.probability;
        if (r < acc) {
          value = l.value;
          break;
        }
      }
      w.set(u, v, value, 1.0 - value);
    }
  }
  return w;
}

double max_assignment_weight(const DenseMatrix<double>& weights) {
  const std::size_t k = std::max(weights.rows(), weights.cols());
  if (k == 0) return 0.0;
  double top = 0.0;
  for (std::size_t i = 0; i < weights.rows(); ++i) {
    for (std::size_t j = 0; j < weights.cols(); ++j) {
      top = std::max(top, weights(i, j));
    }
  }
  // Minimise top - w on the zero-padded square matrix (Hungarian method with
  // potentials, 1-based with a virtual column 0).
  auto cost = [&](std::size_t i, std::size_t j) {
    const double w = (i < weights.rows() && j < weights.cols()) ? weights(i, j)
                                                                : 0.0;
    return top - w;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
  std::vector<std::size_t> match(k + 1, 0), way(k + 1, 0);
  for (std::size_t i = 1; i <= k; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(k + 1, inf);
    std::vector<bool> used(k + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= k; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    const std::size_t i = match[j] - 1;
    if (i < weights.rows() && j - 1 < weights.cols()) total += weights(i, j - 1);
  }
  return total;
}

ClusteringComparison compare_clusterings(const Clustering& a,
                                         const Clustering& b) {
  const std::size_t n = a.vertex_count();
  if (b.vertex_count() != n) {
    throw InputError("clusterings cover different vertex counts");
  }
  ClusteringComparison out;
  if (n == 0) {
    out.exact_match = true;
    out.overlap = 1.0;
    return out;
  }
  out.exact_match = a.same_partition(b);
  DenseMatrix<double> inter(a.block_count(), b.block_count(), 0.0);
  for (std::size_t v = 0; v < n; ++v) inter(a.block_of(v), b.block_of(v)) += 1.0;
  out.overlap = max_assignment_weight(inter) / static_cast<double>(n);
  return out;
}

}  // namespace c3
