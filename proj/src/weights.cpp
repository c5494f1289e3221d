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

#include "c3/weights.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "c3/error.hpp"
#include "c3/percentile.hpp"

namespace c3 {

namespace {

std::size_t intersection_size(const std::vector<std::uint32_t>& a,
                              const std::vector<std::uint32_t>& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) {
      ++count;
      ++ia;
      ++ib;
    } else if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return count;
}

std::vector<std::uint32_t> closed_neighborhood(const InteractionNetwork& net,
                                               std::size_t v) {
  std::vector<std::uint32_t> out = net.neighbors(v);
  out.insert(std::upper_bound(out.begin(), out.end(),
                              static_cast<std::uint32_t>(v)),
             static_cast<std::uint32_t>(v));
  return out;
}

double jaccard(const std::vector<std::uint32_t>& a,
               const std::vector<std::uint32_t>& b) {
  std::size_t common = intersection_size(a, b);
  std::size_t all = a.size() + b.size() - common;
  return all == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(all);
}

double cosine_magnitude(std::span<const double> x, std::span<const double> y) {
  double dot = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    dot += x[j] * y[j];
    xx += x[j] * x[j];
    yy += y[j] * y[j];
  }
  if (xx == 0.0 || yy == 0.0) return 0.0;
  return std::min(1.0, std::abs(dot) / (std::sqrt(xx) * std::sqrt(yy)));
}

}  // namespace

EdgeWeights::EdgeWeights(GeneCatalog genes)
    : genes_(std::move(genes)),
      plus_(genes_.size(), genes_.size(), 0.0),
      minus_(genes_.size(), genes_.size(), 0.0) {}

void EdgeWeights::set(std::size_t u, std::size_t v, double plus,
                      double minus) {
  if (u == v) throw InputError("edge weights are undefined on the diagonal");
  plus_(u, v) = plus_(v, u) = plus;
  minus_(u, v) = minus_(v, u) = minus;
}

std::optional<std::string> EdgeWeights::check(double tol) const {
  const std::size_t n = size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      double p = plus_(u, v);
      double m = minus_(u, v);
      std::string where = genes_.name(u) + "-" + genes_.name(v);
      if (p != plus_(v, u) || m != minus_(v, u)) {
        return "asymmetric weights at " + where;
      }
      if (!(p >= 0.0 && p <= 1.0)) {
        return "w_plus outside [0,1] at " + where;
      }
      if (!(m >= 0.0) || !std::isfinite(m)) {
        return "w_minus negative or non-finite at " + where;
      }
      if (p + m < 1.0 - tol) {
        return "w_plus + w_minus < 1 at " + where;
      }
    }
  }
  return std::nullopt;
}

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::MeCo:
      return "ME-CO";
    case Scheme::NiMeCo:
      return "NI-ME-CO";
    case Scheme::ExMeCo:
      return "EX-ME-CO";
    case Scheme::Full:
      return "FULL";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  for (Scheme s : {Scheme::MeCo, Scheme::NiMeCo, Scheme::ExMeCo, Scheme::Full}) {
    if (text == scheme_name(s)) return s;
  }
  throw InputError("unknown weight scheme '" + std::string(text) +
                   "' (expected ME-CO, NI-ME-CO, EX-ME-CO or FULL)");
}

bool scheme_uses_network(Scheme s) {
  return s == Scheme::NiMeCo || s == Scheme::Full;
}

bool scheme_uses_expression(Scheme s) {
  return s == Scheme::ExMeCo || s == Scheme::Full;
}

WeightConfig WeightConfig::for_scheme(Scheme scheme) {
  WeightConfig cfg;
  cfg.scheme = scheme;
  switch (scheme) {
    case Scheme::MeCo:
      cfg.w1 = 1.0, cfg.w2 = 0.0, cfg.w3 = 0.0;
      break;
    case Scheme::NiMeCo:
      cfg.w1 = 0.5, cfg.w2 = 0.5, cfg.w3 = 0.0;
      break;
    case Scheme::ExMeCo:
      cfg.w1 = 0.5, cfg.w2 = 0.0, cfg.w3 = 0.5;
      break;
    case Scheme::Full:
      cfg.w1 = cfg.w2 = cfg.w3 = 1.0 / 3.0;
      break;
  }
  return cfg;
}

WeightConfig WeightConfig::validated() const {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw InputError("exclusivity scale a must be a finite value >= 0");
  }
  check_percentile(j_coverage, "J");
  check_percentile(j_network, "J'");
  check_percentile(j_expression, "J''");
  for (double w : {w1, w2, w3}) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InputError("mixing shares w1, w2, w3 must be finite and >= 0");
    }
  }
  if (!scheme_uses_network(scheme) && w2 != 0.0) {
    throw InputError("scheme " + std::string(scheme_name(scheme)) +
                     " takes no network share; w2 must be 0");
  }
  if (!scheme_uses_expression(scheme) && w3 != 0.0) {
    throw InputError("scheme " + std::string(scheme_name(scheme)) +
                     " takes no expression share; w3 must be 0");
  }
  const double sum = w1 + w2 + w3;
  if (!(sum > 0.0)) throw InputError("mixing shares sum to zero");
  WeightConfig out = *this;
  if (std::abs(sum - 1.0) > 1e-12) {
    out.w1 = w1 / sum;
    out.w2 = w2 / sum;
    out.w3 = w3 / sum;
    spdlog::warn("weights: shares ({}, {}, {}) sum to {}; rescaled to ({}, {}, "
                 "{})",
                 w1, w2, w3, sum, out.w1, out.w2, out.w3);
  }
  return out;
}

double exclusivity_weight(const MutationMatrix& m, std::size_t u,
                          std::size_t v, double a) {
  const auto& su = m.patients(u);
  const auto& sv = m.patients(v);
  std::size_t smaller = std::min(su.size(), sv.size());
  if (smaller == 0) {
    throw InputError("exclusivity weight needs genes mutated in >= 1 sample");
  }
  return a * static_cast<double>(intersection_size(su, sv)) /
         static_cast<double>(smaller);
}

std::size_t coverage_raw(const MutationMatrix& m, std::size_t u,
                         std::size_t v) {
  const auto& su = m.patients(u);
  const auto& sv = m.patients(v);
  return su.size() + sv.size() - 2 * intersection_size(su, sv);
}

double percentile_cap(double x, double threshold) {
  if (threshold <= 0.0) return x > 0.0 ? 1.0 : 0.0;
  if (x > threshold) return 1.0;
  return x / threshold;
}

double network_affinity(const InteractionNetwork& net, std::size_t u,
                        std::size_t v) {
  return jaccard(closed_neighborhood(net, u), closed_neighborhood(net, v));
}

double network_affinity(const InteractionNetwork& net, std::string_view u,
                        std::string_view v) {
  auto iu = net.genes().find(u);
  auto iv = net.genes().find(v);
  if (iu && iv) return network_affinity(net, *iu, *iv);
  // An absent gene's closed neighbourhood is {itself}, which no network
  // vertex neighbourhood contains.
  return u == v ? 1.0 : 0.0;
}

double expression_affinity(const ExpressionMatrix& z, std::size_t u,
                           std::size_t v) {
  if (!z.is_present(u) || !z.is_present(v)) return 0.0;
  return cosine_magnitude(z.z.row(u), z.z.row(v));
}

double expression_affinity(const ExpressionMatrix& z, std::string_view u,
                           std::string_view v) {
  auto iu = z.genes.find(u);
  auto iv = z.genes.find(v);
  if (!iu || !iv) return 0.0;
  return expression_affinity(z, *iu, *iv);
}

NormalizedPair normalize_pair(double plus, double minus) {
  const double sum = plus + minus;
  if (sum >= 1.0) return {plus, minus, false, false};
  if (sum <= 0.0) return {1.0, 0.0, true, true};
  double m = minus / sum;
  return {1.0 - m, m, true, false};
}

EdgeWeights build_weights(const MutationMatrix& m, const InteractionNetwork* net,
                          const ExpressionMatrix* expression,
                          const WeightConfig& raw_cfg, WeightBuildStats* stats) {
  const WeightConfig cfg = raw_cfg.validated();
  const bool use_net = scheme_uses_network(cfg.scheme);
  const bool use_expr = scheme_uses_expression(cfg.scheme);
  if (use_net && net == nullptr) {
    throw InputError("scheme " + std::string(scheme_name(cfg.scheme)) +
                     " requires an interaction network");
  }
  if (use_expr && expression == nullptr) {
    throw InputError("scheme " + std::string(scheme_name(cfg.scheme)) +
                     " requires expression data");
  }
  const std::size_t n = m.gene_count();
  for (std::size_t g = 0; g < n; ++g) {
    if (m.mutated_count(g) == 0) {
      throw InputError("gene '" + m.genes().name(g) +
                       "' is never mutated; filter the matrix first");
    }
  }

  WeightBuildStats local;
  WeightBuildStats& st = stats ? *stats : local;
  st = WeightBuildStats{};

  EdgeWeights out(m.genes());
  if (n < 2) return out;
  const std::size_t pairs = pair_count(n);

  std::vector<double> coverage(pairs);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      coverage[pair_index(n, u, v)] =
          static_cast<double>(coverage_raw(m, u, v));
    }
  }
  st.coverage_threshold = nearest_rank_percentile(coverage, cfg.j_coverage);

  std::vector<double> network;
  if (use_net) {
    std::vector<std::optional<std::vector<std::uint32_t>>> hoods(n);
    for (std::size_t g = 0; g < n; ++g) {
      if (auto idx = net->genes().find(m.genes().name(g))) {
        hoods[g] = closed_neighborhood(*net, *idx);
      } else {
        ++st.genes_missing_from_network;
      }
    }
    network.resize(pairs, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      if (!hoods[u]) continue;
      for (std::size_t v = u + 1; v < n; ++v) {
        if (!hoods[v]) continue;
        network[pair_index(n, u, v)] = jaccard(*hoods[u], *hoods[v]);
      }
    }
    st.network_threshold = nearest_rank_percentile(network, cfg.j_network);
  }

  std::vector<double> coexpression;
  if (use_expr) {
    std::vector<std::optional<std::size_t>> rows(n);
    for (std::size_t g = 0; g < n; ++g) {
      auto idx = expression->genes.find(m.genes().name(g));
      if (idx && expression->is_present(*idx)) {
        rows[g] = idx;
      } else {
        ++st.genes_missing_from_expression;
      }
    }
    coexpression.resize(pairs, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      if (!rows[u]) continue;
      for (std::size_t v = u + 1; v < n; ++v) {
        if (!rows[v]) continue;
        coexpression[pair_index(n, u, v)] =
            expression_affinity(*expression, *rows[u], *rows[v]);
      }
    }
    st.expression_threshold =
        nearest_rank_percentile(coexpression, cfg.j_expression);
  }

  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const std::size_t e = pair_index(n, u, v);
      double plus = cfg.w1 * percentile_cap(coverage[e], st.coverage_threshold);
      if (use_net) {
        plus += cfg.w2 * percentile_cap(network[e], st.network_threshold);
      }
      if (use_expr) {
        plus += cfg.w3 *
                percentile_cap(coexpression[e], st.expression_threshold);
      }
      plus = std::min(plus, 1.0);
      const double minus = exclusivity_weight(m, u, v, cfg.a);
      NormalizedPair np = normalize_pair(plus, minus);
      if (np.rescaled) ++st.rescaled_pairs;
      if (np.zero_sum) {
        ++st.zero_sum_pairs;
        spdlog::debug("weights: pair {}-{} has no signal; set to (1, 0)",
                      m.genes().name(u), m.genes().name(v));
      }
      out.set(u, v, np.plus, np.minus);
    }
  }
  if (st.zero_sum_pairs > 0) {
    spdlog::warn("weights: {} pair(s) had w+ = w- = 0 and were set to (1, 0)",
                 st.zero_sum_pairs);
  }
  if (st.genes_missing_from_network > 0) {
    spdlog::warn("weights: {} gene(s) absent from the network are treated as "
                 "isolated",
                 st.genes_missing_from_network);
  }
  if (st.genes_missing_from_expression > 0) {
    spdlog::warn("weights: {} gene(s) lack usable expression data",
                 st.genes_missing_from_expression);
  }
  return out;
}

void write_weights_tsv(std::ostream& out, const EdgeWeights& w) {
  out << "gene_u\tgene_v\tw_plus\tw_minus\n";
  char buf[64];
  for (std::size_t u = 0; u < w.size(); ++u) {
    for (std::size_t v = u + 1; v < w.size(); ++v) {
      out << w.genes().name(u) << '\t' << w.genes().name(v);
      std::snprintf(buf, sizeof buf, "\t%.9g\t%.9g\n", w.plus(u, v),
                    w.minus(u, v));
      out << buf;
    }
  }
}

EdgeWeights read_weights_tsv(std::istream& in, const std::string& source) {
  struct Row {
    std::size_t u, v;
    double plus, minus;
    std::size_t line;
  };
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, names.size());
    if (inserted) names.push_back(name);
    return it->second;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("gene_u", 0) == 0) continue;
    }
    std::istringstream fields(line);
    std::string u, v, extra;
    double plus = 0.0, minus = 0.0;
    if (!(fields >> u >> v >> plus >> minus)) {
      throw ParseError(source, line_no,
                       "expected 'gene_u gene_v w_plus w_minus'");
    }
    if (fields >> extra) throw ParseError(source, line_no, "extra columns");
    if (u == v) throw ParseError(source, line_no, "pair of identical genes");
    rows.push_back({intern(u), intern(v), plus, minus, line_no});
  }
  EdgeWeights w{GeneCatalog(names)};
  const std::size_t n = names.size();
  std::vector<bool> seen(pair_count(n), false);
  for (const Row& r : rows) {
    std::size_t e = pair_index(n, r.u, r.v);
    if (seen[e]) throw ParseError(source, r.line, "duplicate pair");
    seen[e] = true;
    w.set(r.u, r.v, r.plus, r.minus);
  }
  if (std::count(seen.begin(), seen.end(), false) > 0) {
    throw InputError(source + ": weight table does not cover every gene pair");
  }
  // Values carry 9 significant digits, so w+ + w- may fall short of 1 by ~1e-9.
  if (auto bad = w.check(1e-8)) throw InputError(source + ": " + *bad);
  return w;
}

}  // namespace c3
