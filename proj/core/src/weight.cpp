// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#include "dyadic/weight.hpp"

#include <cmath>
#include <stdexcept>

namespace dyadic {

Weight::Weight(GridFunction density) : density_(std::move(density)) {
  for (std::size_t c = 0; c < density_.size(); ++c) {
    const double v = density_[c];
    if (!std::isfinite(v) || v < kMinDensity) {
      throw std::invalid_argument(
          "weight density must be finite and >= 1e-12 on every cell");
    }
  }
  const CubeSums sums(density_);
  measures_.assign(sums.by_cube_id().begin(), sums.by_cube_id().end());
}

Weight Weight::uniform(const Grid& grid, double value) {
  return Weight(GridFunction::constant(grid, value));
}

Weight dual_weight(const Weight& w, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::domain_error("dual weight requires p in (1, inf)");
  }
  const double exponent = -1.0 / (p - 1.0);  // 1 - p'
  std::vector<double> vals(w.density().size());
  for (std::size_t c = 0; c < vals.size(); ++c) {
    vals[c] = std::pow(w.density()[c], exponent);
  }
  return Weight(GridFunction(w.grid(), std::move(vals)));
}

namespace {

// Shared maximal-function descent. cube_integral(Q) must return
// ∫_Q |f| dmu and cube_measure(Q) the mu-measure of Q.
template <typename IntegralFn, typename MeasureFn>
GridFunction maximal_descent(const Grid& grid, const Cube& top,
                             IntegralFn cube_integral,
                             MeasureFn cube_measure) {
  std::vector<double> out(grid.cell_count(), 0.0);
  const auto descend = [&](const auto& self, const Cube& q,
                           double running) -> void {
    const double avg = cube_integral(q) / cube_measure(q);
    running = std::max(running, avg);
    if (grid.is_leaf(q)) {
      out[grid.cell_of(q)] = running;
      return;
    }
    for (int s = 0; s < grid.child_count(); ++s) {
      self(self, grid.child(q, s), running);
    }
  };
  descend(descend, top, 0.0);
  return GridFunction(grid, std::move(out));
}

}  // namespace

GridFunction dyadic_maximal(const GridFunction& f,
                            std::optional<Cube> restrict_to) {
  const Grid& grid = f.grid();
  const CubeSums sums(abs(f));
  const Cube top = restrict_to.value_or(grid.root());
  return maximal_descent(
      grid, top, [&](const Cube& q) { return sums.integral(q); },
      [&](const Cube& q) { return grid.volume(q); });
}

GridFunction dyadic_maximal(const GridFunction& f, const Weight& mu,
                            std::optional<Cube> restrict_to) {
  const Grid& grid = f.grid();
  if (!(grid == mu.grid())) throw std::invalid_argument("grid mismatch");
  const CubeSums sums(cellwise_product(abs(f), mu.density()));
  const Cube top = restrict_to.value_or(grid.root());
  return maximal_descent(
      grid, top, [&](const Cube& q) { return sums.integral(q); },
      [&](const Cube& q) { return mu.measure(q); });
}

SupResult ap_two_weight(const Weight& w, const Weight& sigma, double p) {
  if (!(w.grid() == sigma.grid())) {
    throw std::invalid_argument("grid mismatch");
  }
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::domain_error("two-weight characteristic requires p in (1, inf)");
  }
  const Grid& grid = w.grid();
  SupResult best{-1.0, grid.root()};
  for (std::size_t id = 0; id < grid.cube_count(); ++id) {
    const Cube q = grid.cube_from_id(id);
    const double vol = grid.volume(q);
    const double value =
        (w.measure(q) / vol) * std::pow(sigma.measure(q) / vol, p - 1.0);
    if (value > best.value) best = {value, q};
  }
  return best;
}

double ainfty(const Weight& w, std::optional<Cube> restrict_to) {
  const Grid& grid = w.grid();
  const Cube top = restrict_to.value_or(grid.root());
  double sup = 0.0;
  // For each cube Q, integrate over Q the maximal function of w·1_Q taken
  // over subcubes of Q; a single descent per Q with a running maximum.
  const double cellvol = grid.cell_volume();
  const auto integrate = [&](const auto& self, const Cube& q,
                             double running) -> double {
    running = std::max(running, w.measure(q) / grid.volume(q));
    if (grid.is_leaf(q)) return running * cellvol;
    double acc = 0.0;
    for (int s = 0; s < grid.child_count(); ++s) {
      acc += self(self, grid.child(q, s), running);
    }
    return acc;
  };
  const auto visit = [&](const auto& self, const Cube& q) -> void {
    sup = std::max(sup, integrate(integrate, q, 0.0) / w.measure(q));
    if (grid.is_leaf(q)) return;
    for (int s = 0; s < grid.child_count(); ++s) self(self, grid.child(q, s));
  };
  visit(visit, top);
  return sup;
}

double lp_norm(const GridFunction& f, const Weight& w, double p) {
  if (!(f.grid() == w.grid())) throw std::invalid_argument("grid mismatch");
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::domain_error("lp norm requires p in [1, inf)");
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) {
    sum += std::pow(std::abs(f[c]), p) * w.density()[c];
  }
  return std::pow(sum * f.grid().cell_volume(), 1.0 / p);
}

}  // namespace dyadic
