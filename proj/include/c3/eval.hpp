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

// Cluster scoring: pairwise Fisher exclusivity, patient coverage, network
// distance and driver content, with permutation baselines.

#ifndef C3_EVAL_HPP_
#define C3_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "c3/ingest.hpp"
#include "c3/matrix.hpp"
#include "c3/rounding.hpp"

namespace c3 {

// 2x2 table for a gene pair: a both mutated, b only the first, c only the
// second, d neither.
struct ContingencyTable {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t d = 0;

  std::uint64_t n() const { return a + b + c + d; }
};

ContingencyTable contingency(const MutationMatrix& m, std::size_t u,
                             std::size_t v);

// Hypergeometric probability of the table given its margins.
double fisher_point(const ContingencyTable& t);

// kLeft sums tables with a' <= a (depleted co-mutation, the exclusivity
// direction); kRight sums a' >= a.
enum class Tail { kLeft, kRight };

std::string_view tail_name(Tail t);
Tail parse_tail(std::string_view text);

double fisher_exclusivity_p(const ContingencyTable& t, Tail tail = Tail::kLeft);

// Median; an even count averages the two central values. Throws on empty.
double median(std::vector<double> values);

// Median pairwise p over the block; nullopt for fewer than two genes.
std::optional<double> cluster_exclusivity(std::span<const std::uint32_t> block,
                                          const MutationMatrix& m,
                                          Tail tail = Tail::kLeft);

// Fraction of samples with at least one mutated gene of the block.
double cluster_coverage(std::span<const std::uint32_t> block,
                        const MutationMatrix& m);

inline constexpr std::uint32_t kUnreachable = 0xffffffffu;

// Hop counts from `source` (Dijkstra with unit edge weights).
std::vector<std::uint32_t> shortest_hops(const InteractionNetwork& net,
                                         std::size_t source);

struct DistanceSummary {
  std::optional<double> mean;  // nullopt when no pair is usable
  std::size_t pairs = 0;       // pairs averaged
  std::size_t excluded = 0;    // unreachable or involving an absent gene
};

// Mean shortest-path distance over unordered pairs of `genes`, looked up by
// name. Absent genes and disconnected pairs are excluded and counted.
DistanceSummary pairwise_distances(std::span<const std::string> genes,
                                   const InteractionNetwork& net);

// |union of blocks intersect drivers| / |union of blocks|; 0 for an empty
// union.
double driver_proportion(std::span<const std::vector<std::string>> blocks,
                         const std::set<std::string>& drivers);

enum class Statistic { kExclusivity, kCoverage, kDistance, kDriverProportion };

std::string_view statistic_name(Statistic s);

struct ClusterScore {
  std::size_t id = 0;
  std::size_t size = 0;
  std::optional<double> median_p;
  double coverage = 0.0;
  std::optional<DistanceSummary> distance;     // with a network only
  std::optional<double> driver_proportion;     // with a driver list only
};

struct Baseline {
  Statistic statistic = Statistic::kExclusivity;
  double observed = 0.0;
  double mean = 0.0;     // over trials where the statistic is defined
  double p_value = 1.0;  // (r + 1) / (valid + 1)
  std::size_t trials = 0;
  std::size_t undefined = 0;  // trials where the statistic had no value
};

struct EvalOptions {
  Tail tail = Tail::kLeft;
  std::size_t top = 10;
  std::size_t trials = 0;  // permutation trials; 0 skips baselines
  std::uint64_t seed = 0;
};

struct ClusterReport {
  std::vector<ClusterScore> clusters;
  std::vector<std::size_t> top;  // ids, most exclusive first
  // Cohort statistics over the top clusters; see Evaluator::statistic.
  std::map<Statistic, double> summary;
  std::vector<Baseline> baselines;
  EvalOptions options;
  std::size_t sample_count = 0;
};

// Scores clusterings over the genes of one mutation matrix. The network and
// driver list are optional and matched by gene name.
class Evaluator {
 public:
  Evaluator(const MutationMatrix& m, const InteractionNetwork* net,
            const std::set<std::string>* drivers, Tail tail = Tail::kLeft);

  ClusterScore score(std::size_t id, std::span<const std::uint32_t> block) const;

  // Ids of up to `count` clusters with at least two genes, by median p then
  // id.
  static std::vector<std::size_t> top_clusters(
      std::span<const ClusterScore> scores, std::size_t count);

  // Cohort statistic over the top clusters of `blocks`: median of median p,
  // median coverage, mean of the defined mean distances, or the driver
  // proportion of their union. nullopt when undefined (for example no
  // network, or no eligible cluster).
  std::optional<double> statistic(Statistic s,
                                  const std::vector<Clustering::Block>& blocks,
                                  std::size_t top) const;

  // Random partitions of the same genes with the block-size profile of
  // `blocks`. Extreme means <= observed for exclusivity and distance, >= for
  // coverage and driver proportion. Throws InputError for trials == 0.
  Baseline permutation_baseline(Statistic s,
                                const std::vector<Clustering::Block>& blocks,
                                std::size_t top, std::size_t trials,
                                std::uint64_t seed) const;

  bool has_network() const { return net_ != nullptr; }
  bool has_drivers() const { return drivers_ != nullptr; }

 private:
  std::optional<double> block_exclusivity(
      std::span<const std::uint32_t> block) const;
  DistanceSummary block_distance(std::span<const std::uint32_t> block) const;

  const MutationMatrix& m_;
  const InteractionNetwork* net_;
  const std::set<std::string>* drivers_;
  Tail tail_;
  DenseMatrix<double> pair_p_;  // pairwise exclusivity p
  // Network vertex of each matrix gene, or -1.
  std::vector<std::int64_t> net_index_;
  // Hop table between matrix genes present in the network.
  std::vector<std::vector<std::uint32_t>> hops_;
};

ClusterReport evaluate(const Clustering& c, const MutationMatrix& m,
                       const InteractionNetwork* net,
                       const std::set<std::string>* drivers,
                       const EvalOptions& opts);

void write_report_json(std::ostream& out, const ClusterReport& r,
                       const Clustering& c, const GeneCatalog& genes);
void write_report_tsv(std::ostream& out, const ClusterReport& r,
                      const Clustering& c, const GeneCatalog& genes);

// Shortest-path distances among sampled random gene pairs versus all pairs
// of listed drivers present in the network.
struct DriverDistanceResult {
  std::map<std::uint32_t, std::size_t> random_histogram;  // hops -> pairs
  std::map<std::uint32_t, std::size_t> driver_histogram;
  std::size_t random_pairs_requested = 0;
  std::size_t random_pairs = 0;  // sampled pairs, reachable or not
  std::size_t random_unreachable = 0;
  bool random_exhaustive = false;  // every pair enumerated
  std::size_t drivers_listed = 0;
  std::size_t drivers_in_network = 0;
  std::size_t driver_pairs = 0;
  std::size_t driver_unreachable = 0;
  std::optional<double> random_mean;
  std::optional<double> driver_mean;
  // Permutation test on the mean driver distance against random gene sets of
  // the same size; lower is more extreme.
  double p_value = 1.0;
  std::size_t trials = 0;
};

DriverDistanceResult driver_distance_study(const InteractionNetwork& net,
                                           const std::set<std::string>& drivers,
                                           std::size_t sample_pairs,
                                           std::size_t trials,
                                           std::uint64_t seed);

}  // namespace c3

#endif  // C3_EVAL_HPP_
