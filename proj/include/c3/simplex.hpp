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

#ifndef C3_SIMPLEX_HPP_
#define C3_SIMPLEX_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace c3 {

struct SimplexOptions {
  double primal_tol = 1e-10;   // bound violation accepted as feasible
  double dual_tol = 1e-10;     // reduced-cost sign tolerance
  double pivot_tol = 1e-9;     // smallest admissible pivot magnitude
  double perturbation = 1e-7;  // relative cost perturbation, 0 disables
  std::uint64_t seed = 0x5eed;
};

// Bounded-variable simplex on a dense tableau, built for cutting-plane use:
//
//   minimize c^T x  subject to  0 <= x_j <= u_j,  a_i^T x <= b_i (rows added
//   over time).
//
// The tableau always has one column per structural variable (the nonbasic
// set has constant size), so memory is rows x structurals. Rows are appended
// with their slack basic, which keeps the basis dual feasible; `reoptimize`
// then runs dual simplex iterations. Costs are perturbed while cutting and
// restored by `polish`, which finishes with primal simplex iterations.
class DualSimplex {
 public:
  enum class Status { kOptimal, kInfeasible, kIterationLimit };

  struct Term {
    std::size_t var;
    double coef;
  };

  DualSimplex(std::vector<double> cost, std::vector<double> upper,
              const SimplexOptions& opts = {});

  // Adds a^T x <= rhs and returns its constraint id. Ids are never reused.
  std::size_t add_row(std::span<const Term> terms, double rhs);

  // Dual simplex until every basic variable is within bounds.
  Status reoptimize(std::size_t max_pivots);

  // Restores the unperturbed costs and runs primal simplex to optimality.
  Status polish(std::size_t max_pivots);

  // Drops constraints whose slack is basic and for which `drop` is true.
  std::size_t remove_rows(const std::function<bool(std::size_t id)>& drop);

  std::size_t structural_count() const { return n_; }
  std::size_t row_count() const { return basic_.size(); }
  std::size_t pivots() const { return pivots_; }
  bool perturbed() const { return perturbed_; }

  double value(std::size_t j) const { return value_[j]; }
  std::vector<double> primal() const;

  bool row_alive(std::size_t id) const { return alive_[id]; }
  // Current slack b_i - a_i^T x of a live constraint.
  double slack(std::size_t id) const { return value_[n_ + id]; }
  bool slack_basic(std::size_t id) const { return in_basis_[n_ + id]; }
  // Nonnegative multiplier of constraint `id` (0 when its slack is basic).
  double row_dual(std::size_t id) const;

  // Objective under the unperturbed costs.
  double objective() const;

 private:
  double* row(std::size_t r) { return tableau_.data() + r * n_; }
  const double* row(std::size_t r) const { return tableau_.data() + r * n_; }

  double upper(std::size_t var) const {
    return var < n_ ? upper_[var] : kInfinity;
  }
  double infeasibility(std::size_t r) const;
  void step(std::size_t col, double delta);
  void pivot(std::size_t r, std::size_t col, bool leaving_at_upper);
  void recompute_reduced_costs();

  static constexpr double kInfinity = 1e300;

  std::size_t n_;
  SimplexOptions opts_;
  std::vector<double> upper_;
  std::vector<double> true_cost_;
  std::vector<double> cost_;  // per variable; slacks cost 0
  bool perturbed_ = false;

  std::vector<double> value_;        // per variable
  std::vector<bool> in_basis_;       // per variable
  std::vector<bool> at_upper_;       // per variable, meaningful if nonbasic
  std::vector<std::size_t> where_;   // row if basic, column otherwise
  std::vector<std::size_t> basic_;   // row -> variable
  std::vector<std::size_t> nonbasic_;  // column -> variable
  std::vector<double> tableau_;      // rows x n_, x_B + T x_N = beta
  std::vector<double> reduced_;      // per column

  std::vector<std::vector<Term>> rows_;
  std::vector<double> rhs_;
  std::vector<bool> alive_;

  std::size_t pivots_ = 0;
};

}  // namespace c3

#endif  // C3_SIMPLEX_HPP_
