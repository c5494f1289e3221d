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

#ifndef C3_CATALOG_HPP_
#define C3_CATALOG_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "c3/error.hpp"

namespace c3 {

// Ordered list of unique, non-empty identifiers with a name -> position index.
// The tag keeps gene and sample catalogs from being mixed up.
template <class Tag>
class Catalog {
 public:
  Catalog() = default;

  explicit Catalog(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) {
        throw InputError(std::string(Tag::kind) + " identifier at position " +
                         std::to_string(i) + " is empty");
      }
      auto [it, inserted] = index_.emplace(names_[i], i);
      if (!inserted) {
        throw InputError("duplicate " + std::string(Tag::kind) +
                         " identifier '" + names_[i] + "'");
      }
    }
  }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(std::string_view name) const { return find(name).has_value(); }

  bool operator==(const Catalog& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct GeneTag {
  static constexpr const char* kind = "gene";
};
struct SampleTag {
  static constexpr const char* kind = "sample";
};

using GeneCatalog = Catalog<GeneTag>;
using SampleCatalog = Catalog<SampleTag>;

}  // namespace c3

#endif  // C3_CATALOG_HPP_
