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

// Batch commands behind the c3 executable. Each returns a process exit code
// and prints a short human-readable summary to `out`; machine-readable
// artifacts go to the output directory.

#ifndef C3_PIPELINE_HPP_
#define C3_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "c3/clustering_io.hpp"

namespace c3 {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInput = 2,
  kExitNumerical = 3,
};

// Runs `body`, mapping InputError to kExitInput, NumericalError to
// kExitNumerical and anything else to kExitFailure, with the message logged.
int guarded(const std::function<int()>& body);

struct RunConfig {
  std::string alterations;
  std::string cnv;
  std::string expression;
  std::string network;
  std::string drivers;
  std::string out;
  int l_cnv = -1;
  int h_cnv = 3;
  double top_percentile = 95.0;
  std::string scheme = "ME-CO";
  double a = 1.0;
  double J = 95.0;
  double J_network = 95.0;
  double J_expression = 95.0;
  // Unset shares take the scheme defaults.
  std::optional<double> w1;
  std::optional<double> w2;
  std::optional<double> w3;
  std::size_t K = 0;  // required
  double alpha = 2.0 / 7.0;
  std::string pivot = "lowest-index";
  double lp_tol = 1e-6;
  std::size_t max_rounds = 2000;
  std::uint64_t seed = 0;
  std::size_t trials = 100;  // permutation trials in the report
  std::size_t top = 10;
  std::string tail = "left";
  bool write_weights = false;
  bool write_solution = false;
  bool dry_run = false;
};

// Resolved settings as key=value pairs, keys matching the long flag names.
ParamList manifest_params(const RunConfig& cfg);

int cmd_cluster(const RunConfig& cfg, std::ostream& out);

struct SynthConfig {
  std::string mode = "planted";  // planted | random
  std::string sizes = "6,6,6,6,6,5";
  double gamma = 0.9;
  std::size_t flips = 0;
  std::size_t n = 8;     // random mode
  std::string levels;    // random mode; empty means nine equiprobable levels
  std::size_t K = 6;
  double alpha = 2.0 / 7.0;
  std::string pivot = "lowest-index";
  double lp_tol = 1e-6;
  std::uint64_t seed = 0;
  std::size_t repeats = 1;  // instance i uses seed + i
  std::size_t oracle_max_n = 12;
  std::string out;
  bool dump_weights = false;
};

ParamList manifest_params(const SynthConfig& cfg);
int cmd_synth(const SynthConfig& cfg, std::ostream& out);

struct OracleCheckConfig {
  std::string weights;  // weights TSV; a random instance when empty
  std::size_t n = 8;
  std::string levels;
  std::size_t K = 2;
  double alpha = 2.0 / 7.0;
  std::string pivot = "lowest-index";
  double lp_tol = 1e-6;
  std::uint64_t seed = 0;
  std::size_t max_n = 12;
};

int cmd_oracle_check(const OracleCheckConfig& cfg, std::ostream& out);

struct DriverDistanceConfig {
  std::string network;
  std::string drivers;
  std::size_t pairs = 1000;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

ParamList manifest_params(const DriverDistanceConfig& cfg);
int cmd_driver_distance(const DriverDistanceConfig& cfg, std::ostream& out);

struct EvalConfig {
  std::string clustering;
  std::string alterations;
  std::string cnv;
  std::string network;
  std::string drivers;
  std::string out;
  int l_cnv = -1;
  int h_cnv = 3;
  std::size_t trials = 100;
  std::size_t top = 10;
  std::string tail = "left";
  std::uint64_t seed = 0;
};

ParamList manifest_params(const EvalConfig& cfg);
int cmd_eval(const EvalConfig& cfg, std::ostream& out);

// "key=value" lines with a version comment, loadable with --config.
void write_manifest(std::ostream& out, const std::string& command,
                    const ParamList& params);

}  // namespace c3

#endif  // C3_PIPELINE_HPP_
