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

#include "c3/pipeline.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "c3/error.hpp"
#include "c3/eval.hpp"
#include "c3/ingest.hpp"
#include "c3/lp.hpp"
#include "c3/oracle.hpp"
#include "c3/percentile.hpp"
#include "c3/rounding.hpp"
#include "c3/synth.hpp"
#include "c3/weights.hpp"

namespace c3 {

namespace fs = std::filesystem;

namespace {

// Shortest text that reads back to the same double.
std::string num(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

template <typename T>
std::string num(T v) requires std::is_integral_v<T> {
  return std::to_string(v);
}

std::string opt_num(const std::optional<double>& v) {
  return v ? num(*v) : "NA";
}

std::string flag_bool(bool b) { return b ? "true" : "false"; }

void require_file(const std::string& flag, const std::string& path,
                  const std::string& why) {
  if (path.empty()) throw InputError("--" + flag + " is required " + why);
  if (!fs::is_regular_file(path)) {
    throw InputError("--" + flag + ": file '" + path + "' does not exist");
  }
}

void check_optional_file(const std::string& flag, const std::string& path) {
  if (!path.empty() && !fs::is_regular_file(path)) {
    throw InputError("--" + flag + ": file '" + path + "' does not exist");
  }
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  body(f);
  f.flush();
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

void ensure_dir(const std::string& dir) {
  if (dir.empty()) throw InputError("--out is required");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw InputError("--out: cannot create directory '" + dir + "'");
  }
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || v == 0) {
      throw InputError("--sizes: bad block size '" + item + "'");
    }
    sizes.push_back(v);
  }
  if (sizes.empty()) throw InputError("--sizes: no block sizes given");
  return sizes;
}

std::vector<WeightLevel> resolve_levels(const std::string& text) {
  if (!text.empty()) return parse_levels(text);
  std::vector<WeightLevel> levels;
  for (int i = 1; i <= 9; ++i) levels.push_back({1.0 / 9.0, i / 10.0});
  return levels;
}

MutationMatrix load_cohort(const std::string& alterations,
                           const std::string& cnv, int l_cnv, int h_cnv) {
  AlterationMatrix alt = load_alterations(alterations);
  if (cnv.empty()) return mutation_from_alterations(alt);
  std::vector<std::string> missing;
  CnvMatrix aligned = align_cnv(load_cnv(cnv), alt.genes, alt.samples, &missing);
  if (!missing.empty()) {
    spdlog::warn("{} gene(s) absent from the CNV file use baseline copy number",
                 missing.size());
  }
  return merge_cnv(alt, aligned, l_cnv, h_cnv);
}

// Rows of `m` for the genes of `genes`, in that order.
MutationMatrix restrict_genes(const MutationMatrix& m, const GeneCatalog& genes) {
  DenseMatrix<std::uint8_t> entries(genes.size(), m.sample_count(), 0);
  for (std::size_t g = 0; g < genes.size(); ++g) {
    auto row = m.genes().find(genes.name(g));
    if (!row) {
      throw InputError("clustered gene '" + genes.name(g) +
                       "' is not in the alteration matrix");
    }
    for (std::size_t s = 0; s < m.sample_count(); ++s) {
      entries(g, s) = m.entries()(*row, s);
    }
  }
  return MutationMatrix(genes, m.samples(), std::move(entries));
}

WeightConfig resolve_weights(const RunConfig& cfg) {
  const Scheme scheme = parse_scheme(cfg.scheme);
  WeightConfig w = WeightConfig::for_scheme(scheme);
  w.a = cfg.a;
  w.j_coverage = cfg.J;
  w.j_network = cfg.J_network;
  w.j_expression = cfg.J_expression;
  if (cfg.w1 || cfg.w2 || cfg.w3) {
    // Given shares are kept; the rest of the unit mass is split evenly over
    // the scheme's remaining shares.
    const std::array<std::optional<double>, 3> given{cfg.w1, cfg.w2, cfg.w3};
    const std::array<bool, 3> used{true, scheme_uses_network(scheme),
                                   scheme_uses_expression(scheme)};
    double sum = 0.0;
    std::size_t open = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (given[i]) {
        sum += *given[i];
      } else if (used[i]) {
        ++open;
      }
    }
    const double fill = open ? std::max(0.0, 1.0 - sum) / open : 0.0;
    std::array<double, 3> shares{};
    for (std::size_t i = 0; i < 3; ++i) {
      shares[i] = given[i] ? *given[i] : (used[i] ? fill : 0.0);
    }
    w.w1 = shares[0];
    w.w2 = shares[1];
    w.w3 = shares[2];
  }
  return w.validated();
}

RoundingParams resolve_rounding(std::size_t K, double alpha,
                                const std::string& pivot, std::uint64_t seed) {
  RoundingParams p;
  p.K = K;
  p.alpha = alpha;
  p.rule = parse_pivot_rule(pivot);
  p.seed = seed;
  p.validate();
  return p;
}

LpOptions resolve_lp(double tol, std::size_t max_rounds) {
  if (!(tol > 0.0)) throw InputError("--lp-tol must be positive");
  LpOptions o;
  o.tol = tol;
  o.max_rounds = max_rounds;
  return o;
}

struct PipelineResult {
  FractionalSolution lp;
  Clustering clustering;
  double cost = 0.0;
};

PipelineResult solve_and_round(const EdgeWeights& w, const LpOptions& lp,
                               const RoundingParams& rp) {
  PipelineResult r;
  r.lp = solve_lp(w, lp);
  r.clustering = pivot_round(r.lp.x, rp);
  if (r.clustering.max_block_size() > rp.K + 1) {
    throw NumericalError("rounding produced a block larger than K + 1");
  }
  r.cost = clustering_cost(r.clustering, w);
  return r;
}

nlohmann::ordered_json lp_summary(const FractionalSolution& s, double tol) {
  nlohmann::ordered_json j;
  j["genes"] = s.size();
  j["objective"] = s.objective;
  j["lower_bound"] = s.lower_bound;
  j["relative_gap"] = s.relative_gap();
  j["max_violation"] = s.max_violation;
  j["tolerance"] = tol;
  j["iterations"] = s.rounds;
  j["pivots"] = s.pivots;
  j["cuts_added"] = s.cuts_added;
  j["active_cuts"] = s.active_cuts;
  return j;
}

}  // namespace

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const InputError& e) {
    spdlog::error("input error: {}", e.what());
    return kExitInput;
  } catch (const NumericalError& e) {
    spdlog::error("numerical error: {}", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitFailure;
  }
}

void write_manifest(std::ostream& out, const std::string& command,
                    const ParamList& params) {
  out << "# c3 " << kVersion << ' ' << command << '\n';
  for (const auto& [k, v] : params) out << k << '=' << v << '\n';
}

ParamList manifest_params(const RunConfig& cfg) {
  return {
      {"alterations", cfg.alterations},
      {"cnv", cfg.cnv},
      {"expression", cfg.expression},
      {"network", cfg.network},
      {"drivers", cfg.drivers},
      {"out", cfg.out},
      {"l-cnv", num(cfg.l_cnv)},
      {"h-cnv", num(cfg.h_cnv)},
      {"top-percentile", num(cfg.top_percentile)},
      {"scheme", cfg.scheme},
      {"a", num(cfg.a)},
      {"J", num(cfg.J)},
      {"J-network", num(cfg.J_network)},
      {"J-expression", num(cfg.J_expression)},
      {"w1", cfg.w1 ? num(*cfg.w1) : ""},
      {"w2", cfg.w2 ? num(*cfg.w2) : ""},
      {"w3", cfg.w3 ? num(*cfg.w3) : ""},
      {"K", num(cfg.K)},
      {"alpha", num(cfg.alpha)},
      {"pivot", cfg.pivot},
      {"lp-tol", num(cfg.lp_tol)},
      {"max-rounds", num(cfg.max_rounds)},
      {"seed", num(cfg.seed)},
      {"trials", num(cfg.trials)},
      {"top", num(cfg.top)},
      {"tail", cfg.tail},
      {"write-weights", flag_bool(cfg.write_weights)},
      {"write-solution", flag_bool(cfg.write_solution)},
  };
}

int cmd_cluster(const RunConfig& cfg, std::ostream& out) {
  require_file("alterations", cfg.alterations, "for clustering");
  check_optional_file("cnv", cfg.cnv);
  check_optional_file("drivers", cfg.drivers);
  const WeightConfig wcfg = resolve_weights(cfg);
  if (scheme_uses_network(wcfg.scheme)) {
    require_file("network", cfg.network,
                 "for scheme " + std::string(scheme_name(wcfg.scheme)));
  } else {
    check_optional_file("network", cfg.network);
  }
  if (scheme_uses_expression(wcfg.scheme)) {
    require_file("expression", cfg.expression,
                 "for scheme " + std::string(scheme_name(wcfg.scheme)));
  } else {
    check_optional_file("expression", cfg.expression);
  }
  if (cfg.K < 1) throw InputError("--K is required and must be >= 1");
  const RoundingParams rp = resolve_rounding(cfg.K, cfg.alpha, cfg.pivot, cfg.seed);
  const LpOptions lpo = resolve_lp(cfg.lp_tol, cfg.max_rounds);
  check_percentile(cfg.top_percentile, "--top-percentile");
  EvalOptions eo;
  eo.tail = parse_tail(cfg.tail);
  eo.top = cfg.top;
  eo.trials = cfg.trials;
  eo.seed = cfg.seed;
  if (cfg.out.empty()) throw InputError("--out is required");

  ParamList params = manifest_params(cfg);
  if (cfg.dry_run) {
    out << "dry run: configuration is valid\n";
    out << "resolved shares: w1=" << num(wcfg.w1) << " w2=" << num(wcfg.w2)
        << " w3=" << num(wcfg.w3) << '\n';
    write_manifest(out, "cluster", params);
    return kExitOk;
  }

  const MutationMatrix full =
      load_cohort(cfg.alterations, cfg.cnv, cfg.l_cnv, cfg.h_cnv);
  FilteredMutations filtered = filter_top_genes(full, cfg.top_percentile);
  const MutationMatrix& m = filtered.matrix;
  if (m.gene_count() < 2) {
    throw InputError("fewer than two genes pass the --top-percentile filter");
  }

  std::optional<InteractionNetwork> net;
  if (!cfg.network.empty()) net = load_network(cfg.network);
  std::optional<ExpressionMatrix> expr;
  if (scheme_uses_expression(wcfg.scheme)) {
    expr = zscore(load_expression(cfg.expression));
  } else if (!cfg.expression.empty()) {
    spdlog::warn("--expression is ignored by scheme {}", scheme_name(wcfg.scheme));
  }
  std::optional<std::set<std::string>> drivers;
  if (!cfg.drivers.empty()) drivers = load_driver_list(cfg.drivers);

  WeightBuildStats wstats;
  const EdgeWeights w =
      build_weights(m, net ? &*net : nullptr, expr ? &*expr : nullptr, wcfg, &wstats);
  const PipelineResult r = solve_and_round(w, lpo, rp);
  const ClusterReport report = evaluate(r.clustering, m, net ? &*net : nullptr,
                                        drivers ? &*drivers : nullptr, eo);

  // Everything is computed before the first file is written.
  ensure_dir(cfg.out);
  const fs::path dir(cfg.out);
  write_file(dir / "manifest.conf",
             [&](std::ostream& f) { write_manifest(f, "cluster", params); });
  ParamList json_params;
  for (const auto& kv : params) {
    if (kv.first != "out") json_params.push_back(kv);
  }
  write_file(dir / "clustering.json", [&](std::ostream& f) {
    write_clustering_json(f, r.clustering, m.genes(), r.cost, json_params);
  });
  write_file(dir / "clustering.txt", [&](std::ostream& f) {
    write_clustering_txt(f, r.clustering, m.genes());
  });
  write_file(dir / "lp_summary.json", [&](std::ostream& f) {
    auto j = lp_summary(r.lp, lpo.tol);
    j["rounded_cost"] = r.cost;
    j["coverage_threshold"] = wstats.coverage_threshold;
    j["network_threshold"] = wstats.network_threshold;
    j["expression_threshold"] = wstats.expression_threshold;
    j["rescaled_pairs"] = wstats.rescaled_pairs;
    j["zero_sum_pairs"] = wstats.zero_sum_pairs;
    f << j.dump() << '\n';
  });
  write_file(dir / "report.json", [&](std::ostream& f) {
    write_report_json(f, report, r.clustering, m.genes());
  });
  write_file(dir / "report.tsv", [&](std::ostream& f) {
    write_report_tsv(f, report, r.clustering, m.genes());
  });
  if (cfg.write_weights) {
    write_file(dir / "weights.tsv",
               [&](std::ostream& f) { write_weights_tsv(f, w); });
  }
  if (cfg.write_solution) {
    write_file(dir / "lp_solution.tsv",
               [&](std::ostream& f) { write_solution_tsv(f, r.lp, m.genes()); });
  }

  out << "genes " << m.gene_count() << " of " << full.gene_count()
      << " (mutation count >= " << filtered.threshold << "), samples "
      << m.sample_count() << '\n';
  out << "scheme " << scheme_name(wcfg.scheme) << ", w1=" << num(wcfg.w1)
      << " w2=" << num(wcfg.w2) << " w3=" << num(wcfg.w3) << '\n';
  out << "LP objective " << num(r.lp.objective) << ", bound "
      << num(r.lp.lower_bound) << ", max violation " << num(r.lp.max_violation)
      << ", " << r.lp.rounds << " rounds\n";
  out << "clustering cost " << num(r.cost) << ", " << r.clustering.block_count()
      << " blocks, largest " << r.clustering.max_block_size() << '\n';
  for (std::size_t rank = 0; rank < report.top.size(); ++rank) {
    const auto& s = report.clusters[report.top[rank]];
    out << "  #" << rank + 1 << " cluster " << s.id << " size " << s.size
        << " median p " << opt_num(s.median_p) << " coverage " << num(s.coverage)
        << '\n';
  }
  out << "wrote " << dir.string() << '\n';
  return kExitOk;
}

ParamList manifest_params(const SynthConfig& cfg) {
  return {
      {"mode", cfg.mode},
      {"sizes", cfg.sizes},
      {"gamma", num(cfg.gamma)},
      {"flips", num(cfg.flips)},
      {"n", num(cfg.n)},
      {"levels", format_levels(resolve_levels(cfg.levels))},
      {"K", num(cfg.K)},
      {"alpha", num(cfg.alpha)},
      {"pivot", cfg.pivot},
      {"lp-tol", num(cfg.lp_tol)},
      {"seed", num(cfg.seed)},
      {"repeats", num(cfg.repeats)},
      {"oracle-max-n", num(cfg.oracle_max_n)},
      {"out", cfg.out},
      {"dump-weights", flag_bool(cfg.dump_weights)},
  };
}

int cmd_synth(const SynthConfig& cfg, std::ostream& out) {
  if (cfg.mode != "planted" && cfg.mode != "random") {
    throw InputError("--mode must be 'planted' or 'random'");
  }
  if (cfg.repeats < 1) throw InputError("--repeats must be >= 1");
  const bool planted = cfg.mode == "planted";
  const auto sizes = planted ? parse_sizes(cfg.sizes) : std::vector<std::size_t>{};
  const auto levels = resolve_levels(cfg.levels);
  const RoundingParams rp = resolve_rounding(cfg.K, cfg.alpha, cfg.pivot, cfg.seed);
  const LpOptions lpo = resolve_lp(cfg.lp_tol, LpOptions{}.max_rounds);
  if (planted && !(cfg.gamma > 0.5 && cfg.gamma < 1.0)) {
    throw InputError("--gamma must lie in (1/2, 1)");
  }

  std::ostringstream table;
  table << "seed\tn\tK\tlp_objective\tcost\texact_match\toverlap\toracle_cost\t"
           "ratio\tlp_le_opt\n";
  std::vector<std::pair<std::uint64_t, EdgeWeights>> instances;
  std::size_t exact = 0;
  std::size_t bound_failures = 0;
  for (std::size_t i = 0; i < cfg.repeats; ++i) {
    const std::uint64_t seed = cfg.seed + i;
    EdgeWeights w;
    std::optional<Clustering> truth;
    if (planted) {
      PlantedInstance inst = make_planted(sizes, cfg.gamma, cfg.flips, seed);
      w = std::move(inst.weights);
      truth = std::move(inst.truth);
    } else {
      w = make_random(cfg.n, levels, seed);
    }
    const PipelineResult r = solve_and_round(w, lpo, rp);
    table << seed << '\t' << w.size() << '\t' << cfg.K << '\t'
          << num(r.lp.objective) << '\t' << num(r.cost) << '\t';
    if (truth) {
      const auto cmp = compare_clusterings(r.clustering, *truth);
      exact += cmp.exact_match;
      table << flag_bool(cmp.exact_match) << '\t' << num(cmp.overlap) << '\t';
    } else {
      table << "NA\tNA\t";
    }
    if (w.size() <= cfg.oracle_max_n) {
      ExactOptions eo;
      eo.max_n = cfg.oracle_max_n;
      const ExactResult best = solve_exact(w, cfg.K, eo);
      const bool lp_ok = r.lp.objective <= best.cost + 1e-6;
      const double ratio = best.cost > 0.0 ? r.cost / best.cost
                                           : (r.cost > 0.0 ? -1.0 : 1.0);
      if (!lp_ok || r.cost > 9.0 * best.cost + 1e-9) ++bound_failures;
      table << num(best.cost) << '\t' << (ratio < 0 ? "inf" : num(ratio)) << '\t'
            << flag_bool(lp_ok) << '\n';
    } else {
      table << "NA\tNA\tNA\n";
    }
    if (cfg.dump_weights) instances.emplace_back(seed, std::move(w));
  }

  if (!cfg.out.empty()) {
    ensure_dir(cfg.out);
    const fs::path dir(cfg.out);
    write_file(dir / "manifest.conf", [&](std::ostream& f) {
      write_manifest(f, "synth", manifest_params(cfg));
    });
    write_file(dir / "synth.tsv", [&](std::ostream& f) { f << table.str(); });
    for (const auto& [seed, w] : instances) {
      write_file(dir / ("weights_" + std::to_string(seed) + ".tsv"),
                 [&](std::ostream& f) { write_weights_tsv(f, w); });
    }
  }
  out << table.str();
  if (planted) {
    out << "exact recovery " << exact << "/" << cfg.repeats << " (gamma "
        << num(cfg.gamma) << ", flips " << cfg.flips << ", seed " << cfg.seed
        << ")\n";
  }
  if (bound_failures > 0) {
    spdlog::error("{} instance(s) violate the LP or approximation bound",
                  bound_failures);
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_oracle_check(const OracleCheckConfig& cfg, std::ostream& out) {
  EdgeWeights w;
  if (!cfg.weights.empty()) {
    require_file("weights", cfg.weights, "");
    std::ifstream f(cfg.weights);
    w = read_weights_tsv(f, cfg.weights);
  } else {
    w = make_random(cfg.n, resolve_levels(cfg.levels), cfg.seed);
  }
  ExactOptions eo;
  eo.max_n = cfg.max_n;
  const RoundingParams rp = resolve_rounding(cfg.K, cfg.alpha, cfg.pivot, cfg.seed);
  const LpOptions lpo = resolve_lp(cfg.lp_tol, LpOptions{}.max_rounds);
  const ExactResult best = solve_exact(w, cfg.K, eo);
  const PipelineResult r = solve_and_round(w, lpo, rp);
  const double charge = 7.0 * r.lp.objective + total_excess_weight(w, cfg.K);

  const bool lp_ok = r.lp.objective <= best.cost + 1e-6;
  const bool nine_ok = r.cost <= 9.0 * best.cost + 1e-9;
  const bool charge_ok = r.cost <= charge + 1e-6;
  out << "n " << w.size() << ", K " << cfg.K << ", seed " << cfg.seed << '\n';
  out << "optimum " << num(best.cost) << " (" << best.partitions_examined
      << " partitions examined)\n";
  out << "LP objective " << num(r.lp.objective) << (lp_ok ? " <= " : " > ")
      << "optimum\n";
  out << "pipeline cost " << num(r.cost) << ", ratio "
      << (best.cost > 0 ? num(r.cost / best.cost) : "NA") << '\n';
  out << "9x bound " << (nine_ok ? "holds" : "VIOLATED") << ", charge bound "
      << num(charge) << ' ' << (charge_ok ? "holds" : "VIOLATED") << '\n';
  out << "optimal blocks:";
  for (const auto& b : best.best.blocks()) {
    out << " {";
    for (std::size_t i = 0; i < b.size(); ++i) {
      out << (i ? "," : "") << w.genes().name(b[i]);
    }
    out << '}';
  }
  out << '\n';
  return lp_ok && nine_ok && charge_ok ? kExitOk : kExitFailure;
}

ParamList manifest_params(const DriverDistanceConfig& cfg) {
  return {{"network", cfg.network}, {"drivers", cfg.drivers},
          {"pairs", num(cfg.pairs)},  {"trials", num(cfg.trials)},
          {"seed", num(cfg.seed)},    {"out", cfg.out}};
}

int cmd_driver_distance(const DriverDistanceConfig& cfg, std::ostream& out) {
  require_file("network", cfg.network, "for driver distances");
  require_file("drivers", cfg.drivers, "for driver distances");
  if (cfg.pairs < 1) throw InputError("--pairs must be >= 1");
  const InteractionNetwork net = load_network(cfg.network);
  const auto drivers = load_driver_list(cfg.drivers);
  const DriverDistanceResult r =
      driver_distance_study(net, drivers, cfg.pairs, cfg.trials, cfg.seed);

  std::uint32_t max_hops = 0;
  for (const auto& [h, c] : r.random_histogram) max_hops = std::max(max_hops, h);
  for (const auto& [h, c] : r.driver_histogram) max_hops = std::max(max_hops, h);
  auto count = [](const std::map<std::uint32_t, std::size_t>& m, std::uint32_t h) {
    auto it = m.find(h);
    return it == m.end() ? std::size_t{0} : it->second;
  };
  std::ostringstream hist;
  hist << "hops\trandom_pairs\tdriver_pairs\n";
  for (std::uint32_t h = 1; h <= max_hops; ++h) {
    hist << h << '\t' << count(r.random_histogram, h) << '\t'
         << count(r.driver_histogram, h) << '\n';
  }

  if (!cfg.out.empty()) {
    ensure_dir(cfg.out);
    const fs::path dir(cfg.out);
    nlohmann::ordered_json j;
    j["random_pairs_requested"] = r.random_pairs_requested;
    j["random_pairs"] = r.random_pairs;
    j["random_exhaustive"] = r.random_exhaustive;
    j["random_unreachable"] = r.random_unreachable;
    j["random_mean"] = r.random_mean ? nlohmann::ordered_json(*r.random_mean)
                                     : nlohmann::ordered_json();
    j["drivers_listed"] = r.drivers_listed;
    j["drivers_in_network"] = r.drivers_in_network;
    j["driver_pairs"] = r.driver_pairs;
    j["driver_unreachable"] = r.driver_unreachable;
    j["driver_mean"] = r.driver_mean ? nlohmann::ordered_json(*r.driver_mean)
                                     : nlohmann::ordered_json();
    j["trials"] = r.trials;
    j["p_value"] = r.p_value;
    j["seed"] = cfg.seed;
    write_file(dir / "manifest.conf", [&](std::ostream& f) {
      write_manifest(f, "driver-distance", manifest_params(cfg));
    });
    write_file(dir / "driver_distance.json",
               [&](std::ostream& f) { f << j.dump(2) << '\n'; });
    write_file(dir / "driver_distance.tsv",
               [&](std::ostream& f) { f << hist.str(); });
  }

  out << "random pairs: " << r.random_pairs << " of " << r.random_pairs_requested
      << " requested" << (r.random_exhaustive ? " (all pairs enumerated)" : "")
      << ", " << r.random_unreachable << " unreachable, mean "
      << opt_num(r.random_mean) << '\n';
  out << "drivers: " << r.drivers_in_network << " of " << r.drivers_listed
      << " in network, " << r.driver_pairs << " pairs, "
      << r.driver_unreachable << " unreachable, mean " << opt_num(r.driver_mean)
      << '\n';
  out << "permutation p " << num(r.p_value) << " (" << r.trials
      << " trials, seed " << cfg.seed << ")\n";
  out << hist.str();
  return kExitOk;
}

ParamList manifest_params(const EvalConfig& cfg) {
  return {{"clustering", cfg.clustering}, {"alterations", cfg.alterations},
          {"cnv", cfg.cnv},               {"network", cfg.network},
          {"drivers", cfg.drivers},       {"out", cfg.out},
          {"l-cnv", num(cfg.l_cnv)},      {"h-cnv", num(cfg.h_cnv)},
          {"trials", num(cfg.trials)},    {"top", num(cfg.top)},
          {"tail", cfg.tail},             {"seed", num(cfg.seed)}};
}

int cmd_eval(const EvalConfig& cfg, std::ostream& out) {
  require_file("clustering", cfg.clustering, "to evaluate");
  require_file("alterations", cfg.alterations, "to evaluate");
  check_optional_file("cnv", cfg.cnv);
  check_optional_file("network", cfg.network);
  check_optional_file("drivers", cfg.drivers);
  EvalOptions eo;
  eo.tail = parse_tail(cfg.tail);
  eo.top = cfg.top;
  eo.trials = cfg.trials;
  eo.seed = cfg.seed;

  std::ifstream cf(cfg.clustering);
  const ClusteringFile file = read_clustering_json(cf, cfg.clustering);
  const MutationMatrix full =
      load_cohort(cfg.alterations, cfg.cnv, cfg.l_cnv, cfg.h_cnv);
  const MutationMatrix m = restrict_genes(full, file.genes);
  std::optional<InteractionNetwork> net;
  if (!cfg.network.empty()) net = load_network(cfg.network);
  std::optional<std::set<std::string>> drivers;
  if (!cfg.drivers.empty()) drivers = load_driver_list(cfg.drivers);
  const ClusterReport report = evaluate(file.clustering, m, net ? &*net : nullptr,
                                        drivers ? &*drivers : nullptr, eo);

  if (!cfg.out.empty()) {
    ensure_dir(cfg.out);
    const fs::path dir(cfg.out);
    write_file(dir / "manifest.conf", [&](std::ostream& f) {
      write_manifest(f, "eval", manifest_params(cfg));
    });
    write_file(dir / "report.json", [&](std::ostream& f) {
      write_report_json(f, report, file.clustering, m.genes());
    });
    write_file(dir / "report.tsv", [&](std::ostream& f) {
      write_report_tsv(f, report, file.clustering, m.genes());
    });
  }
  write_report_tsv(out, report, file.clustering, m.genes());
  for (const auto& [s, v] : report.summary) {
    out << "summary " << statistic_name(s) << ' ' << num(v) << '\n';
  }
  for (const auto& b : report.baselines) {
    out << "baseline " << statistic_name(b.statistic) << " mean " << num(b.mean)
        << " p " << num(b.p_value) << '\n';
  }
  return kExitOk;
}

}  // namespace c3
