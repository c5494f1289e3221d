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

#include "c3/clustering_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "c3/error.hpp"

namespace c3 {

void write_clustering_json(std::ostream& out, const Clustering& c,
                           const GeneCatalog& genes, double cost,
                           const ParamList& params) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = std::move(p);
  j["gene_count"] = c.vertex_count();
  j["block_count"] = c.block_count();
  j["cost"] = cost;
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  for (const auto& b : c.blocks()) {
    nlohmann::ordered_json names = nlohmann::ordered_json::array();
    for (std::uint32_t g : b) names.push_back(genes.name(g));
    blocks.push_back(std::move(names));
  }
  j["blocks"] = std::move(blocks);
  out << j.dump(2) << '\n';
}

void write_clustering_txt(std::ostream& out, const Clustering& c,
                          const GeneCatalog& genes) {
  for (const auto& b : c.blocks()) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      out << (i ? "\t" : "") << genes.name(b[i]);
    }
    out << '\n';
  }
}

ClusteringFile read_clustering_json(std::istream& in,
                                    const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array()) {
    throw InputError(source + ": no \"blocks\" array");
  }
  std::vector<std::string> names;
  std::vector<Clustering::Block> blocks;
  for (const auto& jb : j["blocks"]) {
    if (!jb.is_array()) throw InputError(source + ": block is not an array");
    Clustering::Block b;
    for (const auto& name : jb) {
      if (!name.is_string()) {
        throw InputError(source + ": gene names must be strings");
      }
      b.push_back(static_cast<std::uint32_t>(names.size()));
      names.push_back(name.get<std::string>());
    }
    blocks.push_back(std::move(b));
  }
  ClusteringFile f;
  try {
    f.genes = GeneCatalog(std::move(names));
    f.clustering = Clustering(f.genes.size(), std::move(blocks));
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
  if (j.contains("cost") && j["cost"].is_number()) f.cost = j["cost"].get<double>();
  return f;
}

}  // namespace c3
