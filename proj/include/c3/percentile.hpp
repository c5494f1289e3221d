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

#ifndef C3_PERCENTILE_HPP_
#define C3_PERCENTILE_HPP_

#include <cstddef>
#include <vector>

namespace c3 {

// 1-based nearest rank ceil(p/100 * n), clamped to [1, n]. p in (0, 100].
std::size_t nearest_rank(double percentile, std::size_t n);

// Nearest-rank percentile: the value at rank ceil(p/100 * n) of the ascending
// order. `values` is taken by value and partially reordered.
double nearest_rank_percentile(std::vector<double> values, double percentile);

// Throws InputError unless 0 < p <= 100.
void check_percentile(double percentile, const char* what);

}  // namespace c3

#endif  // C3_PERCENTILE_HPP_
