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

#ifndef C3_ORACLE_HPP_
#define C3_ORACLE_HPP_

#include <cstddef>
#include <cstdint>

#include "c3/rounding.hpp"
#include "c3/weights.hpp"

namespace c3 {

struct ExactOptions {
  std::size_t max_n = 12;
  // Cut off partial assignments that already cost at least the incumbent.
  // Without pruning every admissible partition is visited.
  bool prune = true;
};

struct ExactResult {
  Clustering best;
  double cost = 0.0;
  std::uint64_t partitions_examined = 0;  // complete partitions visited
};

// Minimum-cost partition with every block of size <= K + 1, by depth-first
// enumeration of restricted-growth strings. Among equal costs the
// lexicographically smallest string wins. Refuses n > max_n.
ExactResult solve_exact(const EdgeWeights& w, std::size_t K,
                        const ExactOptions& opts = {});

}  // namespace c3

#endif  // C3_ORACLE_HPP_
