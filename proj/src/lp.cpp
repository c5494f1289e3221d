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

#include "c3/lp.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_map>

#include "c3/simplex.hpp"

namespace c3 {

namespace {

bool violation_order(const Triangle& a, const Triangle& b) {
  if (a.violation != b.violation) return a.violation > b.violation;
  if (a.u != b.u) return a.u < b.u;
  if (a.v != b.v) return a.v < b.v;
  return a.z < b.z;
}

std::uint64_t triangle_key(const Triangle& t, std::size_t n) {
  return (static_cast<std::uint64_t>(t.u) * n + t.v) * n + t.z;
}

DenseMatrix<double> to_matrix(const std::vector<double>& values,
                              std::size_t n) {
  DenseMatrix<double> x(n, n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      double val = std::clamp(values[pair_index(n, u, v)], 0.0, 1.0);
      x(u, v) = x(v, u) = val;
    }
  }
  return x;
}

}  // namespace

double FractionalSolution::relative_gap() const {
  return (objective - lower_bound) / std::max(1.0, std::abs(objective));
}

std::vector<Triangle> separate_triangles(const DenseMatrix<double>& x,
                                         std::size_t batch, double tol) {
  const std::size_t n = x.rows();
  std::vector<Triangle> found;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double long_side = x(u, v);
      if (long_side <= tol) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (z == u || z == v) continue;
        const double viol = long_side - x(u, z) - x(z, v);
        if (viol > tol) {
          found.push_back({static_cast<std::uint32_t>(u),
                           static_cast<std::uint32_t>(v),
                           static_cast<std::uint32_t>(z), viol});
        }
      }
    }
  }
  if (found.size() > batch) {
    std::partial_sort(found.begin(), found.begin() + static_cast<long>(batch),
                      found.end(), violation_order);
    found.resize(batch);
  } else {
    std::sort(found.begin(), found.end(), violation_order);
  }
  return found;
}

double max_triangle_violation(const DenseMatrix<double>& x) {
  const std::size_t n = x.rows();
  double worst = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (z == u || z == v) continue;
        worst = std::max(worst, x(u, v) - x(u, z) - x(z, v));
      }
    }
  }
  return worst;
}

double objective(const DenseMatrix<double>& x, const EdgeWeights& w) {
  const std::size_t n = w.size();
  double total = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      total += w.plus(u, v) * x(u, v) + w.minus(u, v) * (1.0 - x(u, v));
    }
  }
  return total;
}

FractionalSolution solve_lp(const EdgeWeights& w, const LpOptions& opts) {
  const std::size_t n = w.size();
  if (n < 2) throw InputError("the LP needs at least two genes");
  if (!(opts.tol > 0.0)) throw InputError("LP tolerance must be positive");
  if (auto bad = w.check(1e-9)) {
    throw InputError("edge weights violate the LP preconditions: " + *bad);
  }
  const std::size_t m = pair_count(n);
  const std::size_t batch = opts.batch ? opts.batch : 10 * n;
  const double sep_tol = std::min(opts.tol * 1e-3, 1e-9);

  std::vector<double> cost(m);
  double constant = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      cost[pair_index(n, u, v)] = w.plus(u, v) - w.minus(u, v);
      constant += w.minus(u, v);
    }
  }

  SimplexOptions sopts;
  sopts.perturbation = opts.perturbation;
  DualSimplex lp(cost, std::vector<double>(m, 1.0), sopts);

  std::unordered_map<std::uint64_t, std::size_t> active;  // key -> row id
  std::vector<Triangle> row_triangle;
  std::vector<std::size_t> row_age;
  std::size_t cuts_added = 0;
  std::size_t rounds = 0;

  auto finish = [&](DenseMatrix<double> x) {
    FractionalSolution s;
    s.objective = objective(x, w);
    s.max_violation = max_triangle_violation(x);
    std::vector<double> reduced = cost;
    for (std::size_t id = 0; id < row_triangle.size(); ++id) {
      const double y = lp.row_dual(id);
      if (y <= 0.0) continue;
      const Triangle& t = row_triangle[id];
      reduced[pair_index(n, t.u, t.v)] += y;
      reduced[pair_index(n, t.u, t.z)] -= y;
      reduced[pair_index(n, t.v, t.z)] -= y;
    }
    s.lower_bound = constant;
    for (double r : reduced) s.lower_bound += std::min(r, 0.0);
    s.rounds = rounds;
    s.pivots = lp.pivots();
    s.cuts_added = cuts_added;
    s.active_cuts = lp.row_count();
    s.x = std::move(x);
    return s;
  };
  auto fail = [&](const std::string& why) {
    FractionalSolution best = finish(to_matrix(lp.primal(), n));
    throw LpConvergenceError(
        "LP did not converge: " + why + " (max triangle violation " +
            std::to_string(best.max_violation) + ")",
        std::move(best));
  };
  auto budget = [&] {
    return lp.pivots() >= opts.max_pivots ? 0 : opts.max_pivots - lp.pivots();
  };

  std::vector<DualSimplex::Term> terms(3);
  while (true) {
    if (rounds >= opts.max_rounds) fail("round limit reached");
    ++rounds;
    auto status = lp.reoptimize(budget());
    if (status == DualSimplex::Status::kIterationLimit) fail("pivot limit");
    if (status == DualSimplex::Status::kInfeasible) fail("dual unbounded");

    DenseMatrix<double> x = to_matrix(lp.primal(), n);
    std::vector<Triangle> cuts = separate_triangles(x, batch, sep_tol);
    std::erase_if(cuts, [&](const Triangle& t) {
      return active.contains(triangle_key(t, n));
    });
    if (cuts.empty()) {
      if (lp.perturbed()) {
        status = lp.polish(budget());
        if (status != DualSimplex::Status::kOptimal) fail("polish failed");
        continue;
      }
      FractionalSolution s = finish(std::move(x));
      if (s.max_violation > opts.tol) {
        fail("active cuts violated beyond tolerance");
      }
      if (s.relative_gap() > 1e-6) {
        spdlog::warn("lp: relative gap {} exceeds 1e-6", s.relative_gap());
      }
      spdlog::debug("lp: n={} rounds={} pivots={} cuts={} active={} obj={}",
                    n, s.rounds, s.pivots, s.cuts_added, s.active_cuts,
                    s.objective);
      return s;
    }

    if (opts.purge_age > 0) {
      for (std::size_t id = 0; id < row_age.size(); ++id) {
        if (!lp.row_alive(id)) continue;
        const bool loose =
            lp.slack_basic(id) && lp.slack(id) > opts.purge_slack;
        row_age[id] = loose ? row_age[id] + 1 : 0;
      }
      lp.remove_rows([&](std::size_t id) {
        if (row_age[id] < opts.purge_age) return false;
        active.erase(triangle_key(row_triangle[id], n));
        return true;
      });
    }

    for (const Triangle& t : cuts) {
      terms[0] = {pair_index(n, t.u, t.v), 1.0};
      terms[1] = {pair_index(n, t.u, t.z), -1.0};
      terms[2] = {pair_index(n, t.v, t.z), -1.0};
      std::size_t id = lp.add_row(terms, 0.0);
      active.emplace(triangle_key(t, n), id);
      row_triangle.push_back(t);
      row_age.push_back(0);
      ++cuts_added;
    }
  }
}

void write_solution_tsv(std::ostream& out, const FractionalSolution& s,
                        const GeneCatalog& genes) {
  out << "gene_u\tgene_v\tx\n";
  char buf[48];
  for (std::size_t u = 0; u < s.size(); ++u) {
    for (std::size_t v = u + 1; v < s.size(); ++v) {
      std::snprintf(buf, sizeof buf, "\t%.12g\n", s.x(u, v));
      out << genes.name(u) << '\t' << genes.name(v) << buf;
    }
  }
}

}  // namespace c3
