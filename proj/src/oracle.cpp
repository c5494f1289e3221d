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

#include "c3/oracle.hpp"

#include <limits>
#include <vector>

#include "c3/error.hpp"

namespace c3 {

namespace {

constexpr double kTieEps = 1e-12;

class Enumerator {
 public:
  Enumerator(const EdgeWeights& w, std::size_t K, bool prune)
      : w_(w),
        n_(w.size()),
        cap_(K + 1),
        prune_(prune),
        labels_(n_, 0),
        members_(n_),
        plus_before_(n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < i; ++j) plus_before_[i] += w_.plus(i, j);
    }
  }

  void run() { descend(0, 0, 0.0); }

  double best_cost() const { return best_cost_; }
  const std::vector<std::size_t>& best_labels() const { return best_labels_; }
  std::uint64_t leaves() const { return leaves_; }

 private:
  void descend(std::size_t i, std::size_t blocks, double cost) {
    if (i == n_) {
      ++leaves_;
      if (cost < best_cost_ - kTieEps) {
        best_cost_ = cost;
        best_labels_ = labels_;
      }
      return;
    }
    for (std::size_t b = 0; b <= blocks && b < n_; ++b) {
      if (members_[b].size() >= cap_) continue;
      // Joining b: pay w- to its members, w+ to every other earlier vertex.
      double delta = plus_before_[i];
      for (std::size_t j : members_[b]) {
        delta += w_.minus(i, j) - w_.plus(i, j);
      }
      const double next = cost + delta;
      if (prune_ && next >= best_cost_ - kTieEps) continue;
      labels_[i] = b;
      members_[b].push_back(i);
      descend(i + 1, b == blocks ? blocks + 1 : blocks, next);
      members_[b].pop_back();
    }
  }

  const EdgeWeights& w_;
  std::size_t n_;
  std::size_t cap_;
  bool prune_;
  std::vector<std::size_t> labels_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<double> plus_before_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_labels_;
  std::uint64_t leaves_ = 0;
};

}  // namespace

ExactResult solve_exact(const EdgeWeights& w, std::size_t K,
                        const ExactOptions& opts) {
  if (w.size() > opts.max_n) {
    throw InputError("exact solver refuses n = " + std::to_string(w.size()) +
                     " > max_n = " + std::to_string(opts.max_n));
  }
  if (K < 1) throw InputError("cluster size bound K must be >= 1");
  ExactResult result;
  if (w.size() == 0) return result;
  Enumerator e(w, K, opts.prune);
  e.run();
  result.best = Clustering::from_labels(e.best_labels());
  result.cost = clustering_cost(result.best, w);
  result.partitions_examined = e.leaves();
  return result;
}

}  // namespace c3
