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

#include "c3/eval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <queue>
#include <unordered_map>
#include <utility>

#include <json.hpp>

#include "c3/error.hpp"
#include "c3/rng.hpp"

namespace c3 {

namespace {

double log_choose(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Relative slack when comparing permuted statistics with the observed one,
// so that exact ties are not lost to rounding.
bool at_least_as_extreme(Statistic s, double value, double observed) {
  const double slack = 1e-12 * std::max(1.0, std::abs(observed));
  switch (s) {
    case Statistic::kExclusivity:
    case Statistic::kDistance:
      return value <= observed + slack;
    case Statistic::kCoverage:
    case Statistic::kDriverProportion:
      return value >= observed - slack;
  }
  return false;
}

nlohmann::ordered_json to_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json();
}

}  // namespace

ContingencyTable contingency(const MutationMatrix& m, std::size_t u,
                             std::size_t v) {
  const auto& su = m.patients(u);
  const auto& sv = m.patients(v);
  std::vector<std::uint32_t> both;
  std::set_intersection(su.begin(), su.end(), sv.begin(), sv.end(),
                        std::back_inserter(both));
  ContingencyTable t;
  t.a = both.size();
  t.b = su.size() - t.a;
  t.c = sv.size() - t.a;
  t.d = m.sample_count() - t.a - t.b - t.c;
  return t;
}

double fisher_point(const ContingencyTable& t) {
  const std::uint64_t n = t.n();
  const double lp = log_choose(t.a + t.b, t.a) + log_choose(t.c + t.d, t.c) -
                    log_choose(n, t.a + t.c);
  return std::exp(lp);
}

std::string_view tail_name(Tail t) {
  return t == Tail::kLeft ? "left" : "right";
}

Tail parse_tail(std::string_view text) {
  if (text == "left") return Tail::kLeft;
  if (text == "right") return Tail::kRight;
  throw InputError("unknown tail '" + std::string(text) + "'");
}

double fisher_exclusivity_p(const ContingencyTable& t, Tail tail) {
  const std::uint64_t n = t.n();
  const std::uint64_t row = t.a + t.b;
  const std::uint64_t col = t.a + t.c;
  const std::uint64_t lo = row + col > n ? row + col - n : 0;
  const std::uint64_t hi = std::min(row, col);
  const std::uint64_t from = tail == Tail::kLeft ? lo : t.a;
  const std::uint64_t to = tail == Tail::kLeft ? t.a : hi;
  double sum = 0.0;
  for (std::uint64_t a = from; a <= to; ++a) {
    ContingencyTable s{a, row - a, col - a, n - row - col + a};
    sum += fisher_point(s);
  }
  return std::min(1.0, sum);
}

double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median of an empty list");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<long>(mid),
                   values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<long>(mid));
  return (lower + upper) / 2.0;
}

std::optional<double> cluster_exclusivity(std::span<const std::uint32_t> block,
                                          const MutationMatrix& m, Tail tail) {
  if (block.size() < 2) return std::nullopt;
  std::vector<double> ps;
  for (std::size_t i = 0; i < block.size(); ++i) {
    for (std::size_t j = i + 1; j < block.size(); ++j) {
      ps.push_back(fisher_exclusivity_p(contingency(m, block[i], block[j]), tail));
    }
  }
  return median(std::move(ps));
}

double cluster_coverage(std::span<const std::uint32_t> block,
                        const MutationMatrix& m) {
  if (m.sample_count() == 0) return 0.0;
  std::vector<bool> hit(m.sample_count(), false);
  std::size_t covered = 0;
  for (std::uint32_t g : block) {
    for (std::uint32_t s : m.patients(g)) {
      if (!hit[s]) {
        hit[s] = true;
        ++covered;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(m.sample_count());
}

std::vector<std::uint32_t> shortest_hops(const InteractionNetwork& net,
                                         std::size_t source) {
  const std::size_t n = net.vertex_count();
  if (source >= n) throw InputError("shortest-path source out of range");
  std::vector<std::uint32_t> dist(n, kUnreachable);
  using Entry = std::pair<std::uint32_t, std::uint32_t>;  // (distance, vertex)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[source] = 0;
  queue.emplace(0, static_cast<std::uint32_t>(source));
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d != dist[v]) continue;
    for (std::uint32_t w : net.neighbors(v)) {
      const std::uint32_t nd = d + 1;  // unit edge weight
      if (nd < dist[w]) {
        dist[w] = nd;
        queue.emplace(nd, w);
      }
    }
  }
  return dist;
}

DistanceSummary pairwise_distances(std::span<const std::string> genes,
                                   const InteractionNetwork& net) {
  std::vector<std::optional<std::size_t>> ids;
  ids.reserve(genes.size());
  for (const auto& g : genes) ids.push_back(net.genes().find(g));
  DistanceSummary out;
  double total = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::vector<std::uint32_t> hops;
    if (ids[i]) hops = shortest_hops(net, *ids[i]);
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (!ids[i] || !ids[j] || hops[*ids[j]] == kUnreachable) {
        ++out.excluded;
        continue;
      }
      total += hops[*ids[j]];
      ++out.pairs;
    }
  }
  if (out.pairs > 0) out.mean = total / static_cast<double>(out.pairs);
  return out;
}

double driver_proportion(std::span<const std::vector<std::string>> blocks,
                         const std::set<std::string>& drivers) {
  std::set<std::string> genes;
  for (const auto& b : blocks) genes.insert(b.begin(), b.end());
  if (genes.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& g : genes) hits += drivers.count(g);
  return static_cast<double>(hits) / static_cast<double>(genes.size());
}

std::string_view statistic_name(Statistic s) {
  switch (s) {
    case Statistic::kExclusivity:
      return "exclusivity";
    case Statistic::kCoverage:
      return "coverage";
    case Statistic::kDistance:
      return "distance";
    case Statistic::kDriverProportion:
      return "driver_proportion";
  }
  return "?";
}

Evaluator::Evaluator(const MutationMatrix& m, const InteractionNetwork* net,
                     const std::set<std::string>* drivers, Tail tail)
    : m_(m), net_(net), drivers_(drivers), tail_(tail) {
  const std::size_t genes = m_.gene_count();
  pair_p_ = DenseMatrix<double>(genes, genes, 1.0);
  for (std::size_t u = 0; u < genes; ++u) {
    for (std::size_t v = u + 1; v < genes; ++v) {
      const double p = fisher_exclusivity_p(contingency(m_, u, v), tail_);
      pair_p_(u, v) = p;
      pair_p_(v, u) = p;
    }
  }
  if (!net_) return;
  const std::size_t n = m_.gene_count();
  net_index_.assign(n, -1);
  for (std::size_t g = 0; g < n; ++g) {
    if (auto id = net_->genes().find(m_.genes().name(g))) {
      net_index_[g] = static_cast<std::int64_t>(*id);
    }
  }
  hops_.assign(n, std::vector<std::uint32_t>(n, kUnreachable));
  for (std::size_t g = 0; g < n; ++g) {
    if (net_index_[g] < 0) continue;
    auto dist = shortest_hops(*net_, static_cast<std::size_t>(net_index_[g]));
    for (std::size_t h = 0; h < n; ++h) {
      if (net_index_[h] >= 0) hops_[g][h] = dist[net_index_[h]];
    }
  }
}

std::optional<double> Evaluator::block_exclusivity(
    std::span<const std::uint32_t> block) const {
  if (block.size() < 2) return std::nullopt;
  std::vector<double> ps;
  for (std::size_t i = 0; i < block.size(); ++i) {
    for (std::size_t j = i + 1; j < block.size(); ++j) {
      ps.push_back(pair_p_(block[i], block[j]));
    }
  }
  return median(std::move(ps));
}

DistanceSummary Evaluator::block_distance(
    std::span<const std::uint32_t> block) const {
  DistanceSummary out;
  double total = 0.0;
  for (std::size_t i = 0; i < block.size(); ++i) {
    for (std::size_t j = i + 1; j < block.size(); ++j) {
      const std::uint32_t h = hops_[block[i]][block[j]];
      if (h == kUnreachable) {
        ++out.excluded;
      } else {
        total += h;
        ++out.pairs;
      }
    }
  }
  if (out.pairs > 0) out.mean = total / static_cast<double>(out.pairs);
  return out;
}

ClusterScore Evaluator::score(std::size_t id,
                              std::span<const std::uint32_t> block) const {
  ClusterScore s;
  s.id = id;
  s.size = block.size();
  s.median_p = block_exclusivity(block);
  s.coverage = cluster_coverage(block, m_);
  if (net_) s.distance = block_distance(block);
  if (drivers_ && !block.empty()) {
    std::size_t hits = 0;
    for (std::uint32_t g : block) hits += drivers_->count(m_.genes().name(g));
    s.driver_proportion =
        static_cast<double>(hits) / static_cast<double>(block.size());
  }
  return s;
}

std::vector<std::size_t> Evaluator::top_clusters(
    std::span<const ClusterScore> scores, std::size_t count) {
  std::vector<const ClusterScore*> eligible;
  for (const auto& s : scores) {
    if (s.size >= 2 && s.median_p) eligible.push_back(&s);
  }
  std::sort(eligible.begin(), eligible.end(),
            [](const ClusterScore* x, const ClusterScore* y) {
              if (*x->median_p != *y->median_p) {
                return *x->median_p < *y->median_p;
              }
              return x->id < y->id;
            });
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < eligible.size() && i < count; ++i) {
    ids.push_back(eligible[i]->id);
  }
  return ids;
}

std::optional<double> Evaluator::statistic(
    Statistic s, const std::vector<Clustering::Block>& blocks,
    std::size_t top) const {
  if (s == Statistic::kDistance && !net_) return std::nullopt;
  if (s == Statistic::kDriverProportion && !drivers_) return std::nullopt;

  // Exclusivity decides which clusters count, so it is always needed.
  std::vector<ClusterScore> scores;
  scores.reserve(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    ClusterScore cs;
    cs.id = b;
    cs.size = blocks[b].size();
    cs.median_p = block_exclusivity(blocks[b]);
    scores.push_back(cs);
  }
  const auto ids = top_clusters(scores, top);
  if (ids.empty()) return std::nullopt;

  std::vector<double> values;
  switch (s) {
    case Statistic::kExclusivity:
      for (std::size_t id : ids) values.push_back(*scores[id].median_p);
      return median(std::move(values));
    case Statistic::kCoverage:
      for (std::size_t id : ids) {
        values.push_back(cluster_coverage(blocks[id], m_));
      }
      return median(std::move(values));
    case Statistic::kDistance: {
      for (std::size_t id : ids) {
        if (auto d = block_distance(blocks[id]).mean) values.push_back(*d);
      }
      if (values.empty()) return std::nullopt;
      return std::accumulate(values.begin(), values.end(), 0.0) /
             static_cast<double>(values.size());
    }
    case Statistic::kDriverProportion: {
      std::vector<std::vector<std::string>> named;
      for (std::size_t id : ids) {
        std::vector<std::string> names;
        for (std::uint32_t g : blocks[id]) names.push_back(m_.genes().name(g));
        named.push_back(std::move(names));
      }
      return driver_proportion(named, *drivers_);
    }
  }
  return std::nullopt;
}

Baseline Evaluator::permutation_baseline(
    Statistic s, const std::vector<Clustering::Block>& blocks, std::size_t top,
    std::size_t trials, std::uint64_t seed) const {
  if (trials == 0) throw InputError("permutation baseline needs trials >= 1");
  auto observed = statistic(s, blocks, top);
  if (!observed) {
    throw InputError("statistic '" + std::string(statistic_name(s)) +
                     "' is undefined for this clustering");
  }
  std::vector<std::uint32_t> universe;
  for (const auto& b : blocks) universe.insert(universe.end(), b.begin(), b.end());
  std::sort(universe.begin(), universe.end());

  Baseline out;
  out.statistic = s;
  out.observed = *observed;
  out.trials = trials;
  const Rng root(seed);
  std::size_t extreme = 0;
  std::size_t valid = 0;
  double total = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = root.split(t);
    std::vector<std::uint32_t> order = universe;
    rng.shuffle(std::span<std::uint32_t>(order));
    std::vector<Clustering::Block> permuted;
    std::size_t at = 0;
    for (const auto& b : blocks) {
      permuted.emplace_back(order.begin() + static_cast<long>(at),
                            order.begin() + static_cast<long>(at + b.size()));
      at += b.size();
    }
    auto value = statistic(s, permuted, top);
    if (!value) {
      ++out.undefined;
      continue;
    }
    ++valid;
    total += *value;
    if (at_least_as_extreme(s, *value, *observed)) ++extreme;
  }
  out.mean = valid > 0 ? total / static_cast<double>(valid) : 0.0;
  out.p_value = static_cast<double>(extreme + 1) / static_cast<double>(valid + 1);
  return out;
}

ClusterReport evaluate(const Clustering& c, const MutationMatrix& m,
                       const InteractionNetwork* net,
                       const std::set<std::string>* drivers,
                       const EvalOptions& opts) {
  if (c.vertex_count() != m.gene_count()) {
    throw InputError("clustering covers " + std::to_string(c.vertex_count()) +
                     " genes but the cohort has " +
                     std::to_string(m.gene_count()));
  }
  Evaluator ev(m, net, drivers, opts.tail);
  ClusterReport r;
  r.options = opts;
  r.sample_count = m.sample_count();
  for (std::size_t b = 0; b < c.block_count(); ++b) {
    r.clusters.push_back(ev.score(b, c.block(b)));
  }
  r.top = Evaluator::top_clusters(r.clusters, opts.top);

  std::vector<Statistic> stats{Statistic::kExclusivity, Statistic::kCoverage};
  if (net) stats.push_back(Statistic::kDistance);
  if (drivers) stats.push_back(Statistic::kDriverProportion);
  for (Statistic s : stats) {
    auto v = ev.statistic(s, c.blocks(), opts.top);
    if (!v) continue;
    r.summary[s] = *v;
    if (opts.trials > 0) {
      r.baselines.push_back(ev.permutation_baseline(
          s, c.blocks(), opts.top, opts.trials,
          Rng::mix(opts.seed ^ static_cast<std::uint64_t>(s))));
    }
  }
  return r;
}

void write_report_json(std::ostream& out, const ClusterReport& r,
                       const Clustering& c, const GeneCatalog& genes) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["sample_count"] = r.sample_count;
  j["tail"] = tail_name(r.options.tail);
  j["top"] = r.options.top;
  j["seed"] = r.options.seed;
  j["trials"] = r.options.trials;
  ordered_json clusters = ordered_json::array();
  for (const auto& s : r.clusters) {
    ordered_json cj;
    cj["id"] = s.id;
    ordered_json names = ordered_json::array();
    for (std::uint32_t g : c.block(s.id)) names.push_back(genes.name(g));
    cj["genes"] = std::move(names);
    cj["size"] = s.size;
    cj["median_exclusivity_p"] = to_json(s.median_p);
    cj["coverage"] = s.coverage;
    if (s.distance) {
      cj["mean_pairwise_distance"] = to_json(s.distance->mean);
      cj["distance_pairs"] = s.distance->pairs;
      cj["distance_excluded_pairs"] = s.distance->excluded;
    } else {
      cj["mean_pairwise_distance"] = nullptr;
    }
    cj["driver_proportion"] = to_json(s.driver_proportion);
    clusters.push_back(std::move(cj));
  }
  j["clusters"] = std::move(clusters);
  j["top_by_exclusivity"] = r.top;
  ordered_json summary = ordered_json::object();
  for (const auto& [s, v] : r.summary) summary[std::string(statistic_name(s))] = v;
  j["summary"] = std::move(summary);
  ordered_json baselines = ordered_json::array();
  for (const auto& b : r.baselines) {
    baselines.push_back({{"statistic", statistic_name(b.statistic)},
                         {"observed", b.observed},
                         {"mean", b.mean},
                         {"p_value", b.p_value},
                         {"trials", b.trials},
                         {"undefined_trials", b.undefined}});
  }
  j["permutation_baselines"] = std::move(baselines);
  out << j.dump(2) << '\n';
}

void write_report_tsv(std::ostream& out, const ClusterReport& r,
                      const Clustering& c, const GeneCatalog& genes) {
  auto cell = [&](const std::optional<double>& v) {
    if (v) {
      out << *v;
    } else {
      out << "NA";
    }
  };
  const auto old_precision = out.precision(10);
  out << "cluster\tsize\tmedian_exclusivity_p\tcoverage\t"
         "mean_pairwise_distance\tdriver_proportion\ttop_rank\tgenes\n";
  for (const auto& s : r.clusters) {
    out << s.id << '\t' << s.size << '\t';
    cell(s.median_p);
    out << '\t' << s.coverage << '\t';
    cell(s.distance ? s.distance->mean : std::nullopt);
    out << '\t';
    cell(s.driver_proportion);
    out << '\t';
    auto it = std::find(r.top.begin(), r.top.end(), s.id);
    if (it == r.top.end()) {
      out << "NA";
    } else {
      out << (it - r.top.begin() + 1);
    }
    out << '\t';
    const auto& block = c.block(s.id);
    for (std::size_t i = 0; i < block.size(); ++i) {
      out << (i ? "," : "") << genes.name(block[i]);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

DriverDistanceResult driver_distance_study(const InteractionNetwork& net,
                                           const std::set<std::string>& drivers,
                                           std::size_t sample_pairs,
                                           std::size_t trials,
                                           std::uint64_t seed) {
  const std::size_t n = net.vertex_count();
  if (n < 2) throw InputError("network needs at least two genes");
  DriverDistanceResult out;
  out.random_pairs_requested = sample_pairs;
  out.drivers_listed = drivers.size();
  out.trials = trials;

  // Source rows are reused across the random pairs and permutation trials.
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> cache;
  auto hops = [&](std::uint32_t u, std::uint32_t v) {
    auto it = cache.find(u);
    if (it == cache.end()) it = cache.emplace(u, shortest_hops(net, u)).first;
    return it->second[v];
  };
  auto mean_of_set = [&](const std::vector<std::uint32_t>& set,
                         std::map<std::uint32_t, std::size_t>* hist,
                         std::size_t* pairs, std::size_t* unreachable) {
    double total = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (std::size_t j = i + 1; j < set.size(); ++j) {
        const std::uint32_t h = hops(set[i], set[j]);
        if (pairs) ++*pairs;
        if (h == kUnreachable) {
          if (unreachable) ++*unreachable;
          continue;
        }
        if (hist) ++(*hist)[h];
        total += h;
        ++used;
      }
    }
    return used > 0 ? std::optional<double>(total / static_cast<double>(used))
                    : std::nullopt;
  };

  Rng root(seed);
  const std::uint64_t total_pairs =
      static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sampled;
  if (sample_pairs >= total_pairs) {
    out.random_exhaustive = true;
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = u + 1; v < n; ++v) sampled.emplace_back(u, v);
    }
  } else {
    Rng rng = root.split(0);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    while (sampled.size() < sample_pairs) {
      auto u = static_cast<std::uint32_t>(rng.below(n));
      auto v = static_cast<std::uint32_t>(rng.below(n));
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (seen.emplace(u, v).second) sampled.emplace_back(u, v);
    }
    // Group by source so each shortest-path tree is built once.
    std::sort(sampled.begin(), sampled.end());
  }
  double random_total = 0.0;
  std::size_t random_used = 0;
  for (auto [u, v] : sampled) {
    ++out.random_pairs;
    const std::uint32_t h = hops(u, v);
    if (h == kUnreachable) {
      ++out.random_unreachable;
      continue;
    }
    ++out.random_histogram[h];
    random_total += h;
    ++random_used;
  }
  if (random_used > 0) {
    out.random_mean = random_total / static_cast<double>(random_used);
  }
  if (!out.random_exhaustive) cache.clear();

  std::vector<std::uint32_t> present;
  for (const auto& d : drivers) {
    if (auto id = net.genes().find(d)) {
      present.push_back(static_cast<std::uint32_t>(*id));
    }
  }
  std::sort(present.begin(), present.end());
  out.drivers_in_network = present.size();
  out.driver_mean = mean_of_set(present, &out.driver_histogram,
                                &out.driver_pairs, &out.driver_unreachable);

  if (trials > 0 && out.driver_mean) {
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    std::size_t extreme = 0;
    std::size_t valid = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng = root.split(t + 1);
      // Partial shuffle: the first |present| slots are a uniform subset.
      for (std::size_t i = 0; i < present.size(); ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(all[i], all[j]);
      }
      std::vector<std::uint32_t> pick(all.begin(),
                                      all.begin() + static_cast<long>(present.size()));
      std::sort(pick.begin(), pick.end());
      auto value = mean_of_set(pick, nullptr, nullptr, nullptr);
      if (!value) continue;
      ++valid;
      if (at_least_as_extreme(Statistic::kDistance, *value, *out.driver_mean)) {
        ++extreme;
      }
    }
    out.p_value =
        static_cast<double>(extreme + 1) / static_cast<double>(valid + 1);
  }
  return out;
}

}  // namespace c3
