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

#include "c3/percentile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "c3/error.hpp"

namespace c3 {

std::size_t nearest_rank(double percentile, std::size_t n) {
  // p*n first keeps integer-valued products exact (95 * 100 / 100 == 95).
  double rank = std::ceil(percentile * static_cast<double>(n) / 100.0 - 1e-9);
  if (rank < 1.0) return 1;
  if (rank > static_cast<double>(n)) return n;
  return static_cast<std::size_t>(rank);
}

double nearest_rank_percentile(std::vector<double> values, double percentile) {
  if (values.empty()) {
    throw InputError("percentile of an empty value set");
  }
  check_percentile(percentile, "percentile");
  std::size_t k = nearest_rank(percentile, values.size()) - 1;
  std::nth_element(values.begin(), values.begin() + static_cast<long>(k),
                   values.end());
  return values[k];
}

void check_percentile(double percentile, const char* what) {
  if (!(percentile > 0.0 && percentile <= 100.0)) {
    throw InputError(std::string(what) + " must lie in (0, 100], got " +
                     std::to_string(percentile));
  }
}

}  // namespace c3
