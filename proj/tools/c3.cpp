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

// c3: constrained correlation clustering of cancer genes.
//
//   c3 cluster --alterations alt.tsv --K 4 --out run/
//   c3 cluster --config run/manifest.conf --out rerun/
//   c3 synth --gamma 0.9 --flips 20 --K 6 --repeats 20
//   c3 oracle-check --n 9 --K 3 --seed 7
//   c3 driver-distance --network net.txt --drivers cgc.txt
//   c3 eval --clustering run/clustering.json --alterations alt.tsv

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "c3/pipeline.hpp"

namespace {

// Splits "--config FILE" out of the argument list and turns each key=value
// line of FILE into "--key=value", placed right after the subcommand name so
// that explicit flags, which come later, win.
std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       const std::vector<std::string>& commands) {
  std::vector<std::string> kept;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    std::string path;
    if (a == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file");
      path = args[++i];
    } else if (a.rfind("--config=", 0) == 0) {
      path = a.substr(9);
    } else {
      kept.push_back(a);
      continue;
    }
    for (const auto& item : CLI::ConfigINI().from_file(path)) {
      if (item.name == "++" || item.name == "--") continue;  // section markers
      if (item.inputs.empty() || item.inputs.front().empty()) continue;
      from_file.push_back("--" + item.name + "=" + item.inputs.front());
    }
  }
  auto at = std::find_first_of(kept.begin() + 1, kept.end(), commands.begin(),
                               commands.end());
  if (at != kept.end()) ++at;
  kept.insert(at, from_file.begin(), from_file.end());
  return kept;
}

template <typename T>
void add_optional(CLI::App* app, const std::string& name, std::optional<T>& slot,
                  const std::string& help) {
  app->add_option_function<T>(name, [&slot](const T& v) { slot = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Size-constrained correlation clustering of cancer genes"};
  app.set_version_flag("--version", std::string("c3 ") + c3::kVersion);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  // cluster
  c3::RunConfig rc;
  auto* cluster = app.add_subcommand("cluster", "Run weights, LP, rounding and evaluation");
  cluster->add_option("--config", "key=value file, e.g. a previous manifest.conf");
  cluster->add_option("--alterations", rc.alterations, "Gene x sample 0/1 alteration TSV");
  cluster->add_option("--cnv", rc.cnv, "Gene x sample integer copy-number TSV");
  cluster->add_option("--expression", rc.expression, "Gene x sample expression TSV");
  cluster->add_option("--network", rc.network, "Interaction edge list");
  cluster->add_option("--drivers", rc.drivers, "Known driver genes, one per line");
  cluster->add_option("--out", rc.out, "Output directory");
  cluster->add_option("--l-cnv", rc.l_cnv, "CNV lower bound (exclusive)")->capture_default_str();
  cluster->add_option("--h-cnv", rc.h_cnv, "CNV upper bound (exclusive)")->capture_default_str();
  cluster->add_option("--top-percentile", rc.top_percentile,
                      "Keep genes at or above this mutation-count percentile")
      ->capture_default_str();
  cluster->add_option("--scheme", rc.scheme, "ME-CO, NI-ME-CO, EX-ME-CO or FULL")
      ->capture_default_str();
  cluster->add_option("--a", rc.a, "Exclusivity scale")->capture_default_str();
  cluster->add_option("--J", rc.J, "Coverage percentile")->capture_default_str();
  cluster->add_option("--J-network", rc.J_network, "Network percentile")->capture_default_str();
  cluster->add_option("--J-expression", rc.J_expression, "Expression percentile")
      ->capture_default_str();
  add_optional(cluster, "--w1", rc.w1, "Coverage share");
  add_optional(cluster, "--w2", rc.w2, "Network share");
  add_optional(cluster, "--w3", rc.w3, "Expression share");
  cluster->add_option("--K", rc.K, "Clusters hold at most K + 1 genes");
  cluster->add_option("--alpha", rc.alpha, "Rounding threshold in (0, 1/2)")->capture_default_str();
  cluster->add_option("--pivot", rc.pivot,
                      "lowest-index, largest-neighborhood or seeded-random")
      ->capture_default_str();
  cluster->add_option("--lp-tol", rc.lp_tol, "Triangle feasibility tolerance")->capture_default_str();
  cluster->add_option("--max-rounds", rc.max_rounds, "Cutting-plane round limit")->capture_default_str();
  cluster->add_option("--seed", rc.seed, "Seed for every random choice")->capture_default_str();
  cluster->add_option("--trials", rc.trials, "Permutation trials per statistic")->capture_default_str();
  cluster->add_option("--top", rc.top, "Clusters in the top-by-exclusivity set")->capture_default_str();
  cluster->add_option("--tail", rc.tail, "Fisher tail: left or right")->capture_default_str();
  cluster->add_flag("--write-weights", rc.write_weights, "Also write weights.tsv");
  cluster->add_flag("--write-solution", rc.write_solution, "Also write lp_solution.tsv");
  cluster->add_flag("--dry-run", rc.dry_run, "Validate and print the resolved parameters");

  // synth
  c3::SynthConfig sc;
  auto* synth = app.add_subcommand("synth", "Planted or random instances through the pipeline");
  synth->add_option("--config", "key=value file");
  synth->add_option("--mode", sc.mode, "planted or random")->capture_default_str();
  synth->add_option("--sizes", sc.sizes, "Planted block sizes")->capture_default_str();
  synth->add_option("--gamma", sc.gamma, "Within-block w+ in (1/2, 1)")->capture_default_str();
  synth->add_option("--flips", sc.flips, "Pairs with w+ and w- swapped")->capture_default_str();
  synth->add_option("--n", sc.n, "Vertices in random mode")->capture_default_str();
  synth->add_option("--levels", sc.levels, "Random w+ levels as p:v,p:v,...");
  synth->add_option("--K", sc.K, "Clusters hold at most K + 1 vertices")->capture_default_str();
  synth->add_option("--alpha", sc.alpha, "Rounding threshold")->capture_default_str();
  synth->add_option("--pivot", sc.pivot, "Pivot rule")->capture_default_str();
  synth->add_option("--lp-tol", sc.lp_tol, "Triangle feasibility tolerance")->capture_default_str();
  synth->add_option("--seed", sc.seed, "Seed of the first instance")->capture_default_str();
  synth->add_option("--repeats", sc.repeats, "Instances, seeds seed..seed+repeats-1")
      ->capture_default_str();
  synth->add_option("--oracle-max-n", sc.oracle_max_n, "Run the exact solver up to this n")
      ->capture_default_str();
  synth->add_option("--out", sc.out, "Output directory");
  synth->add_flag("--dump-weights", sc.dump_weights, "Write each instance as weights TSV");

  // oracle-check
  c3::OracleCheckConfig oc;
  auto* oracle = app.add_subcommand("oracle-check", "Compare the pipeline with the exact optimum");
  oracle->add_option("--config", "key=value file");
  oracle->add_option("--weights", oc.weights, "Weights TSV; random instance if omitted");
  oracle->add_option("--n", oc.n, "Vertices of the random instance")->capture_default_str();
  oracle->add_option("--levels", oc.levels, "Random w+ levels as p:v,p:v,...");
  oracle->add_option("--K", oc.K, "Clusters hold at most K + 1 vertices")->capture_default_str();
  oracle->add_option("--alpha", oc.alpha, "Rounding threshold")->capture_default_str();
  oracle->add_option("--pivot", oc.pivot, "Pivot rule")->capture_default_str();
  oracle->add_option("--lp-tol", oc.lp_tol, "Triangle feasibility tolerance")->capture_default_str();
  oracle->add_option("--seed", oc.seed, "Instance and pivot seed")->capture_default_str();
  oracle->add_option("--max-n", oc.max_n, "Refuse larger instances")->capture_default_str();

  // driver-distance
  c3::DriverDistanceConfig dc;
  auto* dd = app.add_subcommand("driver-distance",
                                "Network distances among drivers versus random genes");
  dd->add_option("--config", "key=value file");
  dd->add_option("--network", dc.network, "Interaction edge list");
  dd->add_option("--drivers", dc.drivers, "Driver genes, one per line");
  dd->add_option("--pairs", dc.pairs, "Random gene pairs to sample")->capture_default_str();
  dd->add_option("--trials", dc.trials, "Permutation trials")->capture_default_str();
  dd->add_option("--seed", dc.seed, "Sampling seed")->capture_default_str();
  dd->add_option("--out", dc.out, "Output directory");

  // eval
  c3::EvalConfig ec;
  auto* ev = app.add_subcommand("eval", "Re-score an existing clustering JSON");
  ev->add_option("--config", "key=value file");
  ev->add_option("--clustering", ec.clustering, "clustering.json from a cluster run");
  ev->add_option("--alterations", ec.alterations, "Gene x sample 0/1 alteration TSV");
  ev->add_option("--cnv", ec.cnv, "Gene x sample integer copy-number TSV");
  ev->add_option("--network", ec.network, "Interaction edge list");
  ev->add_option("--drivers", ec.drivers, "Driver genes, one per line");
  ev->add_option("--out", ec.out, "Output directory");
  ev->add_option("--l-cnv", ec.l_cnv, "CNV lower bound")->capture_default_str();
  ev->add_option("--h-cnv", ec.h_cnv, "CNV upper bound")->capture_default_str();
  ev->add_option("--trials", ec.trials, "Permutation trials per statistic")->capture_default_str();
  ev->add_option("--top", ec.top, "Clusters in the top-by-exclusivity set")->capture_default_str();
  ev->add_option("--tail", ec.tail, "Fisher tail: left or right")->capture_default_str();
  ev->add_option("--seed", ec.seed, "Permutation seed")->capture_default_str();

  try {
    std::vector<std::string> args(argv, argv + argc);
    std::vector<std::string> commands;
    for (const auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
      commands.push_back(sub->get_name());
    }
    args = expand_config(args, commands);
    // CLI11 wants the arguments reversed, program name excluded.
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? c3::kExitOk : c3::kExitInput;
  }
  if (verbose) spdlog::set_level(spdlog::level::debug);

  if (cluster->parsed()) {
    return c3::guarded([&] { return c3::cmd_cluster(rc, std::cout); });
  }
  if (synth->parsed()) {
    return c3::guarded([&] { return c3::cmd_synth(sc, std::cout); });
  }
  if (oracle->parsed()) {
    return c3::guarded([&] { return c3::cmd_oracle_check(oc, std::cout); });
  }
  if (dd->parsed()) {
    return c3::guarded([&] { return c3::cmd_driver_distance(dc, std::cout); });
  }
  return c3::guarded([&] { return c3::cmd_eval(ec, std::cout); });
}
