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

#include "c3/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "c3/error.hpp"
#include "c3/rng.hpp"

namespace c3 {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kDropTiny = 1e-13;
constexpr std::size_t kDegenerateBeforeBland = 50;

}  // namespace

DualSimplex::DualSimplex(std::vector<double> cost, std::vector<double> upper,
                         const SimplexOptions& opts)
    : n_(cost.size()),
      opts_(opts),
      upper_(std::move(upper)),
      true_cost_(std::move(cost)) {
  if (upper_.size() != n_) {
    throw InputError("simplex: cost and bound vectors differ in length");
  }
  for (double u : upper_) {
    if (!(u >= 0.0) || !std::isfinite(u)) {
      throw InputError("simplex: upper bounds must be finite and >= 0");
    }
  }
  cost_ = true_cost_;
  value_.assign(n_, 0.0);
  in_basis_.assign(n_, false);
  at_upper_.assign(n_, false);
  where_.resize(n_);
  nonbasic_.resize(n_);
  reduced_.resize(n_);

  Rng rng(opts_.seed);
  perturbed_ = opts_.perturbation > 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    const bool up = true_cost_[j] < 0.0;
    at_upper_[j] = up;
    value_[j] = up ? upper_[j] : 0.0;
    where_[j] = j;
    nonbasic_[j] = j;
    if (perturbed_) {
      // Push each cost further into its dual-feasible side.
      double delta = opts_.perturbation * (1.0 + std::abs(true_cost_[j])) *
                     (0.5 + 0.5 * rng.uniform());
      cost_[j] += up ? -delta : delta;
    }
    reduced_[j] = cost_[j];
  }
}

std::size_t DualSimplex::add_row(std::span<const Term> terms, double rhs) {
  const std::size_t id = rows_.size();
  const std::size_t slack_var = n_ + id;
  rows_.emplace_back(terms.begin(), terms.end());
  rhs_.push_back(rhs);
  alive_.push_back(true);
  cost_.push_back(0.0);
  in_basis_.push_back(true);
  at_upper_.push_back(false);

  const std::size_t r = basic_.size();
  tableau_.resize(tableau_.size() + n_, 0.0);
  double* out = row(r);
  double activity = 0.0;
  for (const Term& t : terms) {
    if (t.var >= n_) throw InputError("simplex: row references a non-column");
    activity += t.coef * value_[t.var];
    if (!in_basis_[t.var]) {
      out[where_[t.var]] += t.coef;
    } else {
      const double* src = row(where_[t.var]);
      for (std::size_t k = 0; k < n_; ++k) out[k] -= t.coef * src[k];
    }
  }
  value_.push_back(rhs - activity);
  where_.push_back(r);
  basic_.push_back(slack_var);
  return id;
}

double DualSimplex::infeasibility(std::size_t r) const {
  const std::size_t var = basic_[r];
  const double v = value_[var];
  if (v < -opts_.primal_tol) return -v;
  const double up = upper(var);
  if (v > up + opts_.primal_tol) return v - up;
  return 0.0;
}

void DualSimplex::step(std::size_t col, double delta) {
  if (delta == 0.0) return;
  value_[nonbasic_[col]] += delta;
  for (std::size_t r = 0; r < basic_.size(); ++r) {
    const double a = row(r)[col];
    if (a != 0.0) value_[basic_[r]] -= a * delta;
  }
}

void DualSimplex::pivot(std::size_t r, std::size_t col, bool leaving_at_upper) {
  double* pr = row(r);
  const double inv = 1.0 / pr[col];
  for (std::size_t k = 0; k < n_; ++k) pr[k] *= inv;
  pr[col] = inv;

  for (std::size_t i = 0; i < basic_.size(); ++i) {
    if (i == r) continue;
    double* pi = row(i);
    const double f = pi[col];
    if (f == 0.0) continue;
    for (std::size_t k = 0; k < n_; ++k) {
      double v = pi[k] - f * pr[k];
      pi[k] = std::abs(v) < kDropTiny ? 0.0 : v;
    }
    pi[col] = -f * inv;
  }

  const double dq = reduced_[col];
  if (dq != 0.0) {
    for (std::size_t k = 0; k < n_; ++k) reduced_[k] -= dq * pr[k];
  }
  reduced_[col] = -dq * inv;

  const std::size_t entering = nonbasic_[col];
  const std::size_t leaving = basic_[r];
  basic_[r] = entering;
  nonbasic_[col] = leaving;
  in_basis_[entering] = true;
  in_basis_[leaving] = false;
  where_[entering] = r;
  where_[leaving] = col;
  at_upper_[leaving] = leaving_at_upper;
  ++pivots_;
}

DualSimplex::Status DualSimplex::reoptimize(std::size_t max_pivots) {
  const std::size_t start = pivots_;
  while (true) {
    std::size_t r = kNone;
    double worst = 0.0;
    for (std::size_t i = 0; i < basic_.size(); ++i) {
      double inf = infeasibility(i);
      if (inf > worst) {
        worst = inf;
        r = i;
      }
    }
    if (r == kNone) return Status::kOptimal;
    if (pivots_ - start >= max_pivots) return Status::kIterationLimit;

    const std::size_t leaving = basic_[r];
    const double v = value_[leaving];
    const bool to_upper = v > upper(leaving);
    const double target = to_upper ? upper(leaving) : 0.0;
    // Desired direction of the leaving variable: +1 up, -1 down.
    const double dir = to_upper ? -1.0 : 1.0;
    const double* pr = row(r);

    // Harris two-pass ratio test.
    double theta_max = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_; ++k) {
      const double a = pr[k] * dir;
      if (std::abs(a) < opts_.pivot_tol) continue;
      const std::size_t var = nonbasic_[k];
      double d;
      if (!at_upper_[var]) {
        if (a >= 0.0) continue;
        d = reduced_[k];
      } else {
        if (a <= 0.0) continue;
        d = -reduced_[k];
      }
      theta_max = std::min(theta_max, (d + opts_.dual_tol) / std::abs(a));
    }
    if (!std::isfinite(theta_max)) return Status::kInfeasible;

    std::size_t q = kNone;
    double best_pivot = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const double a = pr[k] * dir;
      if (std::abs(a) < opts_.pivot_tol) continue;
      const std::size_t var = nonbasic_[k];
      double d;
      if (!at_upper_[var]) {
        if (a >= 0.0) continue;
        d = reduced_[k];
      } else {
        if (a <= 0.0) continue;
        d = -reduced_[k];
      }
      const double ratio = std::max(d, 0.0) / std::abs(a);
      if (ratio <= theta_max && std::abs(a) > best_pivot) {
        best_pivot = std::abs(a);
        q = k;
      }
    }
    if (q == kNone) return Status::kInfeasible;

    step(q, (v - target) / pr[q]);
    value_[leaving] = target;
    pivot(r, q, to_upper);
  }
}

void DualSimplex::recompute_reduced_costs() {
  for (std::size_t k = 0; k < n_; ++k) reduced_[k] = cost_[nonbasic_[k]];
  for (std::size_t r = 0; r < basic_.size(); ++r) {
    const double cb = cost_[basic_[r]];
    if (cb == 0.0) continue;
    const double* pr = row(r);
    for (std::size_t k = 0; k < n_; ++k) reduced_[k] -= cb * pr[k];
  }
}

DualSimplex::Status DualSimplex::polish(std::size_t max_pivots) {
  if (perturbed_) {
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = true_cost_[j];
    perturbed_ = false;
    recompute_reduced_costs();
  }
  const std::size_t start = pivots_;
  std::size_t degenerate_run = 0;
  while (true) {
    const bool bland = degenerate_run > kDegenerateBeforeBland;
    std::size_t q = kNone;
    double best = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t var = nonbasic_[k];
      if (upper(var) == 0.0) continue;
      const double d = reduced_[k];
      const double score = at_upper_[var] ? d : -d;
      if (score <= opts_.dual_tol) continue;
      if (bland) {
        if (q == kNone || var < nonbasic_[q]) q = k;
      } else if (score > best) {
        best = score;
        q = k;
      }
    }
    if (q == kNone) return Status::kOptimal;
    if (pivots_ - start >= max_pivots) return Status::kIterationLimit;

    const std::size_t entering = nonbasic_[q];
    const double dir = at_upper_[entering] ? -1.0 : 1.0;
    double theta = upper(entering);
    std::size_t leave = kNone;
    double leave_rate = 0.0;
    for (std::size_t r = 0; r < basic_.size(); ++r) {
      const double rate = -row(r)[q] * dir;
      const std::size_t bv = basic_[r];
      double limit;
      if (rate < -opts_.pivot_tol) {
        limit = value_[bv] / -rate;
      } else if (rate > opts_.pivot_tol && upper(bv) < kInfinity) {
        limit = (upper(bv) - value_[bv]) / rate;
      } else {
        continue;
      }
      limit = std::max(limit, 0.0);
      bool better = limit < theta - 1e-12;
      if (!better && std::abs(limit - theta) <= 1e-12 && leave != kNone) {
        better = bland ? bv < basic_[leave] : std::abs(rate) > leave_rate;
      }
      if (better) {
        theta = limit;
        leave = r;
        leave_rate = std::abs(rate);
      }
    }
    if (theta >= kInfinity / 2) return Status::kInfeasible;  // unbounded

    step(q, dir * theta);
    degenerate_run = theta < 1e-12 ? degenerate_run + 1 : 0;
    if (leave == kNone) {
      at_upper_[entering] = !at_upper_[entering];
      value_[entering] = at_upper_[entering] ? upper(entering) : 0.0;
      ++pivots_;
      continue;
    }
    const std::size_t bv = basic_[leave];
    const bool to_upper = -row(leave)[q] * dir > 0.0;
    value_[bv] = to_upper ? upper(bv) : 0.0;
    pivot(leave, q, to_upper);
  }
}

std::size_t DualSimplex::remove_rows(
    const std::function<bool(std::size_t id)>& drop) {
  std::size_t removed = 0;
  for (std::size_t id = 0; id < rows_.size(); ++id) {
    const std::size_t var = n_ + id;
    if (!alive_[id] || !in_basis_[var] || !drop(id)) continue;
    const std::size_t r = where_[var];
    const std::size_t last = basic_.size() - 1;
    if (r != last) {
      std::copy(row(last), row(last) + n_, row(r));
      basic_[r] = basic_[last];
      where_[basic_[r]] = r;
    }
    basic_.pop_back();
    tableau_.resize(basic_.size() * n_);
    alive_[id] = false;
    in_basis_[var] = false;
    rows_[id].clear();
    rows_[id].shrink_to_fit();
    ++removed;
  }
  return removed;
}

std::vector<double> DualSimplex::primal() const {
  return std::vector<double>(value_.begin(),
                             value_.begin() + static_cast<long>(n_));
}

double DualSimplex::row_dual(std::size_t id) const {
  const std::size_t var = n_ + id;
  if (!alive_[id] || in_basis_[var]) return 0.0;
  return std::max(reduced_[where_[var]], 0.0);
}

double DualSimplex::objective() const {
  double z = 0.0;
  for (std::size_t j = 0; j < n_; ++j) z += true_cost_[j] * value_[j];
  return z;
}

}  // namespace c3
