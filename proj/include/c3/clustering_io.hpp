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

#ifndef C3_CLUSTERING_IO_HPP_
#define C3_CLUSTERING_IO_HPP_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "c3/catalog.hpp"
#include "c3/rounding.hpp"

namespace c3 {

using ParamList = std::vector<std::pair<std::string, std::string>>;

// {"params": {...}, "cost": c, "blocks": [["g1", "g2"], ...]}. Params are
// written in the given order so equal runs give equal bytes.
void write_clustering_json(std::ostream& out, const Clustering& c,
                           const GeneCatalog& genes, double cost,
                           const ParamList& params);

// One block per line, genes tab-separated.
void write_clustering_txt(std::ostream& out, const Clustering& c,
                          const GeneCatalog& genes);

struct ClusteringFile {
  GeneCatalog genes;  // in order of first appearance
  Clustering clustering;
  double cost = 0.0;
};

// Reads the "blocks" of a clustering JSON; a gene listed twice is an error.
ClusteringFile read_clustering_json(std::istream& in, const std::string& source);

}  // namespace c3

#endif  // C3_CLUSTERING_IO_HPP_
