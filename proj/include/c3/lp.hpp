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

// LP relaxation of size-bounded correlation clustering without the size
// constraint:
//
//   minimize   sum_{u<v} w+_uv x_uv + w-_uv (1 - x_uv)
//   subject to x_uv <= x_uz + x_zv   for all distinct u, v, z
//              0 <= x_uv <= 1
//
// x_uv is a "distance": 0 means same cluster, 1 means separated. Triangle
// inequalities are generated lazily by a separation oracle.

#ifndef C3_LP_HPP_
#define C3_LP_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "c3/error.hpp"
#include "c3/matrix.hpp"
#include "c3/weights.hpp"

namespace c3 {

struct LpOptions {
  double tol = 1e-6;             // triangle feasibility required on output
  std::size_t batch = 0;         // cuts per round; 0 means 10 * n
  std::size_t max_rounds = 2000;
  std::size_t max_pivots = 2'000'000;
  // Cuts whose slack stays above `purge_slack` for `purge_age` consecutive
  // rounds are dropped from the working LP. 0 disables purging.
  std::size_t purge_age = 3;
  double purge_slack = 1e-6;
  double perturbation = 1e-7;
};

// Symmetric matrix of pair distances with zero diagonal.
struct FractionalSolution {
  DenseMatrix<double> x;
  double objective = 0.0;      // recomputed from x
  double lower_bound = 0.0;    // Lagrangian bound from the final duals
  double max_violation = 0.0;  // full O(n^3) triangle scan
  std::size_t rounds = 0;
  std::size_t pivots = 0;
  std::size_t cuts_added = 0;
  std::size_t active_cuts = 0;

  std::size_t size() const { return x.rows(); }
  double relative_gap() const;
};

struct Triangle {
  std::uint32_t u;  // u < v; the constraint is x_uv <= x_uz + x_zv
  std::uint32_t v;
  std::uint32_t z;
  double violation;
};

// Up to `batch` triangles with x_uv - x_uz - x_zv > tol, most violated first
// (ties by (u, v, z) ascending). An empty result certifies feasibility.
std::vector<Triangle> separate_triangles(const DenseMatrix<double>& x,
                                         std::size_t batch, double tol);

// max over distinct u, v, z of x_uv - x_uz - x_zv (0 when n < 3).
double max_triangle_violation(const DenseMatrix<double>& x);

// sum over unordered pairs of w+ x + w- (1 - x).
double objective(const DenseMatrix<double>& x, const EdgeWeights& w);

class LpConvergenceError : public NumericalError {
 public:
  LpConvergenceError(const std::string& what, FractionalSolution best)
      : NumericalError(what), best_(std::move(best)) {}
  const FractionalSolution& best() const { return best_; }
  double max_violation() const { return best_.max_violation; }

 private:
  FractionalSolution best_;
};

// Solves the relaxation by cutting planes. The returned x is symmetric,
// clamped to [0, 1] and triangle-feasible within opts.tol.
FractionalSolution solve_lp(const EdgeWeights& w, const LpOptions& opts = {});

// TSV "gene_u gene_v x" over unordered pairs.
void write_solution_tsv(std::ostream& out, const FractionalSolution& s,
                        const GeneCatalog& genes);

}  // namespace c3

#endif  // C3_LP_HPP_
