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

// Positive/negative clustering weights built from mutual exclusivity,
// coverage, network neighbourhood overlap and co-expression.
//
// For a gene pair (u, v), w_plus is the price of separating u and v and
// w_minus the price of clustering them together. Every weight set handed to
// the LP and the rounding satisfies w_plus <= 1 and w_plus + w_minus >= 1.

#ifndef C3_WEIGHTS_HPP_
#define C3_WEIGHTS_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "c3/catalog.hpp"
#include "c3/ingest.hpp"
#include "c3/matrix.hpp"

namespace c3 {

class EdgeWeights {
 public:
  EdgeWeights() = default;
  explicit EdgeWeights(GeneCatalog genes);

  std::size_t size() const { return genes_.size(); }
  const GeneCatalog& genes() const { return genes_; }

  double plus(std::size_t u, std::size_t v) const { return plus_(u, v); }
  double minus(std::size_t u, std::size_t v) const { return minus_(u, v); }
  void set(std::size_t u, std::size_t v, double plus, double minus);

  const DenseMatrix<double>& plus_matrix() const { return plus_; }
  const DenseMatrix<double>& minus_matrix() const { return minus_; }

  // First violated invariant (w_plus in [0,1], w_minus >= 0,
  // w_plus + w_minus >= 1 - tol, symmetry), or nullopt.
  std::optional<std::string> check(double tol = 1e-12) const;

  bool operator==(const EdgeWeights&) const = default;

 private:
  GeneCatalog genes_;
  DenseMatrix<double> plus_;
  DenseMatrix<double> minus_;
};

enum class Scheme { MeCo, NiMeCo, ExMeCo, Full };

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view text);
bool scheme_uses_network(Scheme s);
bool scheme_uses_expression(Scheme s);

// Mixing shares: w1 coverage, w2 network, w3 expression.
struct WeightConfig {
  Scheme scheme = Scheme::MeCo;
  double a = 1.0;                // exclusivity scale
  double j_coverage = 95.0;      // J
  double j_network = 95.0;       // J'
  double j_expression = 95.0;    // J''
  double w1 = 1.0;
  double w2 = 0.0;
  double w3 = 0.0;

  // Config with the scheme's default shares (1 | 1/2,1/2 | 1/2,1/2 | thirds).
  static WeightConfig for_scheme(Scheme scheme);

  // Checks ranges and that shares unused by the scheme are zero, then
  // rescales the shares to sum to exactly 1 (logging any adjustment).
  WeightConfig validated() const;
};

// a * |S(u) & S(v)| / min(|S(u)|, |S(v)|). Both genes must be mutated.
double exclusivity_weight(const MutationMatrix& m, std::size_t u,
                          std::size_t v, double a);

// |S(u) ^ S(v)|.
std::size_t coverage_raw(const MutationMatrix& m, std::size_t u,
                         std::size_t v);

// 1 if x > threshold, x / threshold otherwise; indicator(x > 0) when the
// threshold is zero.
double percentile_cap(double x, double threshold);

// Jaccard overlap of closed neighbourhoods, by network vertex index.
double network_affinity(const InteractionNetwork& net, std::size_t u,
                        std::size_t v);
// By gene name; genes missing from the network act as isolated vertices.
double network_affinity(const InteractionNetwork& net, std::string_view u,
                        std::string_view v);

// |<z(u), z(v)>| / (|z(u)| |z(v)|), 0 if either row is absent.
double expression_affinity(const ExpressionMatrix& z, std::size_t u,
                           std::size_t v);
double expression_affinity(const ExpressionMatrix& z, std::string_view u,
                           std::string_view v);

struct NormalizedPair {
  double plus;
  double minus;
  bool rescaled;
  bool zero_sum;
};

// Rescales a pair with plus + minus < 1 onto plus + minus = 1 keeping the
// ratio; a 0/0 pair becomes (1, 0).
NormalizedPair normalize_pair(double plus, double minus);

struct WeightBuildStats {
  double coverage_threshold = 0.0;    // T(J)
  double network_threshold = 0.0;     // T'(J')
  double expression_threshold = 0.0;  // T''(J'')
  std::size_t rescaled_pairs = 0;
  std::size_t zero_sum_pairs = 0;
  std::size_t genes_missing_from_network = 0;
  std::size_t genes_missing_from_expression = 0;
};

// Builds weights over the genes of `m`. `net` and `expression` may be null
// unless the scheme needs them. Thresholds are nearest-rank percentiles over
// all unordered gene pairs.
EdgeWeights build_weights(const MutationMatrix& m, const InteractionNetwork* net,
                          const ExpressionMatrix* expression,
                          const WeightConfig& cfg,
                          WeightBuildStats* stats = nullptr);

// TSV "gene_u gene_v w_plus w_minus", one row per unordered pair, 9
// significant digits.
void write_weights_tsv(std::ostream& out, const EdgeWeights& w);
EdgeWeights read_weights_tsv(std::istream& in, const std::string& source);

}  // namespace c3

#endif  // C3_WEIGHTS_HPP_
