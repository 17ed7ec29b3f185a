// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#include "dyadic/lerner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dyadic {

namespace {

std::vector<double> cells_on(const GridFunction& f, const Cube& q) {
  const CellRange r = f.grid().cell_range(q);
  return std::vector<double>(f.values().begin() + static_cast<std::ptrdiff_t>(r.begin),
                             f.values().begin() + static_cast<std::ptrdiff_t>(r.end));
}

// (allowed+1)-th largest of |v - c| over sorted v, via two pointers from the
// extremes (the largest deviations from c sit at the ends of a sorted list).
double deviation_order_stat(const std::vector<double>& sorted, double c,
                            std::size_t allowed) {
  std::size_t lo = 0, hi = sorted.size() - 1;
  for (std::size_t step = 0;; ++step) {
    const double dl = std::abs(sorted[lo] - c);
    const double dh = std::abs(sorted[hi] - c);
    const double d = dl >= dh ? dl : dh;
    if (step == allowed) return d;
    if (dl >= dh) {
      ++lo;
    } else {
      --hi;
    }
  }
}

// Largest integer count with count*cellvol <= t, i.e. count <= t/cellvol.
// Exact whenever t is a dyadic multiple of the cell volume, which covers the
// lambda*|Q| heights used throughout.
std::size_t allowed_cells(double t, double cellvol) {
  const double ratio = t / cellvol;
  if (ratio < 0.0) return 0;
  return static_cast<std::size_t>(std::floor(ratio));
}

double oscillation_sorted(const std::vector<double>& sorted, double lambda) {
  const std::size_t n = sorted.size();
  // allowed = floor(lambda * n): lambda*|Q| in units of cells.
  const std::size_t allowed =
      static_cast<std::size_t>(std::floor(lambda * static_cast<double>(n)));
  if (allowed >= n) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const auto consider = [&](double c) {
    best = std::min(best, deviation_order_stat(sorted, c, allowed));
  };
  consider(sorted[0]);
  for (std::size_t i = 1; i < n; ++i) {
    if (sorted[i] == sorted[i - 1]) continue;
    consider(sorted[i]);
    consider(0.5 * (sorted[i - 1] + sorted[i]));
  }
  return best;
}

}  // namespace

std::vector<Cube> SparseFamily::flattened() const {
  std::vector<Cube> out;
  for (const auto& gen : generations) {
    out.insert(out.end(), gen.begin(), gen.end());
  }
  return out;
}

double median(const GridFunction& f, const Cube& q) {
  std::vector<double> vals = cells_on(f, q);
  std::sort(vals.begin(), vals.end());
  const std::size_t n = vals.size();
  // Scan candidates in increasing order; the counts are monotone so the
  // first admissible value is the lower median.
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && vals[i] == vals[i - 1]) continue;
    const double m = vals[i];
    const std::size_t below = static_cast<std::size_t>(
        std::lower_bound(vals.begin(), vals.end(), m) - vals.begin());
    const std::size_t above = n - static_cast<std::size_t>(std::upper_bound(
                                      vals.begin(), vals.end(), m) -
                                  vals.begin());
    if (2 * below <= n && 2 * above <= n) return m;
  }
  return vals.back();  // unreachable: the largest value always qualifies
}

double rearrangement_value(const GridFunction& f, const Cube& q, double t) {
  if (!(t > 0.0)) {
    throw std::domain_error("rearrangement height t must be positive");
  }
  std::vector<double> vals = cells_on(f, q);
  for (double& v : vals) v = std::abs(v);
  std::sort(vals.begin(), vals.end(), std::greater<>());
  const std::size_t allowed = allowed_cells(t, f.grid().cell_volume());
  if (allowed >= vals.size()) return 0.0;
  return vals[allowed];
}

double oscillation(const GridFunction& f, const Cube& q, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::domain_error("oscillation parameter must lie in (0,1)");
  }
  std::vector<double> vals = cells_on(f, q);
  std::sort(vals.begin(), vals.end());
  return oscillation_sorted(vals, lambda);
}

GridFunction local_sharp_maximal(const GridFunction& f, const Cube& q0,
                                 double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::domain_error("oscillation parameter must lie in (0,1)");
  }
  const Grid& grid = f.grid();
  std::vector<double> out(grid.cell_count(), 0.0);
  // Push the running maximum of oscillations down the cube tree.
  const auto descend = [&](const auto& self, const Cube& q,
                           double running) -> void {
    std::vector<double> vals = cells_on(f, q);
    std::sort(vals.begin(), vals.end());
    running = std::max(running, oscillation_sorted(vals, lambda));
    if (grid.is_leaf(q)) {
      out[grid.cell_of(q)] = running;
      return;
    }
    for (int s = 0; s < grid.child_count(); ++s) {
      self(self, grid.child(q, s), running);
    }
  };
  descend(descend, q0, 0.0);
  return GridFunction(grid, std::move(out));
}

double sparse_lambda(int dimension) {
  return std::ldexp(1.0, -dimension - 2);
}

SparseFamily sparse_decomposition(const GridFunction& f, const Cube& q0) {
  const Grid& grid = f.grid();
  const double lambda = sparse_lambda(grid.dimension());
  SparseFamily family;
  family.root = q0;

  // Stopping set E(P) = {x in P : |f - median(f,P)| > nu(P)} with nu the
  // rearrangement of f - median at height lambda_d |P|. That pins
  // |E(P)| <= lambda_d |P| exactly, so the cubes selected inside P cover at
  // most 2 lambda_d |P| <= |P|/2 of it: the half-measure property holds by
  // construction. (nu sits between the lambda_d-oscillation and twice it.)
  // Cell membership is kept as prefix counts over the global Z-order so
  // cube intersections are O(1).
  std::vector<std::size_t> prefix(grid.cell_count() + 1, 0);
  const auto select_in = [&](const Cube& p, std::vector<Cube>& out) -> void {
    const double m = median(f, p);
    std::vector<double> deviations = cells_on(f, p);
    for (double& v : deviations) v = std::abs(v - m);
    std::sort(deviations.begin(), deviations.end(), std::greater<>());
    const std::size_t allowed = static_cast<std::size_t>(std::floor(
        lambda * static_cast<double>(deviations.size())));
    const double nu = allowed < deviations.size() ? deviations[allowed] : 0.0;
    const CellRange pr = grid.cell_range(p);
    bool any = false;
    for (std::size_t c = pr.begin; c < pr.end; ++c) {
      const bool in_e = std::abs(f[c] - m) > nu;
      any = any || in_e;
      prefix[c + 1] = prefix[c] + (in_e ? 1u : 0u);
    }
    if (!any) return;
    // Maximal strict subcubes covered by E in more than half their cells.
    const auto descend = [&](const auto& inner, const Cube& q) -> void {
      if (!(q == p)) {
        const CellRange r = grid.cell_range(q);
        const std::size_t hit = prefix[r.end] - prefix[r.begin];
        if (2 * hit > r.size()) {
          out.push_back(q);
          return;
        }
      }
      if (grid.is_leaf(q)) return;
      for (int s = 0; s < grid.child_count(); ++s) {
        inner(inner, grid.child(q, s));
      }
    };
    descend(descend, p);
  };

  std::vector<Cube> current{q0};
  while (!current.empty()) {
    std::vector<Cube> next;
    for (const Cube& p : current) select_in(p, next);
    if (next.empty()) break;
    family.generations.push_back(next);
    current = std::move(next);
  }
  return family;
}

double domination_constant(const GridFunction& f, const Cube& q0) {
  const Grid& grid = f.grid();
  const double m = median(f, q0);
  const GridFunction sharp = local_sharp_maximal(f, q0, 0.25);
  const SparseFamily family = sparse_decomposition(f, q0);
  const double lambda = sparse_lambda(grid.dimension());

  std::vector<double> rhs(grid.cell_count(), 0.0);
  const CellRange q0r = grid.cell_range(q0);
  for (std::size_t c = q0r.begin; c < q0r.end; ++c) rhs[c] = sharp[c];
  for (const auto& gen : family.generations) {
    for (const Cube& q : gen) {
      const double osc = oscillation(f, grid.ancestor(q, 1), lambda);
      const CellRange r = grid.cell_range(q);
      for (std::size_t c = r.begin; c < r.end; ++c) rhs[c] += osc;
    }
  }

  double best = 0.0;
  for (std::size_t c = q0r.begin; c < q0r.end; ++c) {
    const double lhs = std::abs(f[c] - m);
    if (lhs == 0.0) continue;
    if (rhs[c] == 0.0) return std::numeric_limits<double>::infinity();
    best = std::max(best, lhs / rhs[c]);
  }
  return best;
}

}  // namespace dyadic
