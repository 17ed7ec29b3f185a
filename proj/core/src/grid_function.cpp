// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#include "dyadic/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyadic {

GridFunction::GridFunction(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cell_count()) {
    throw std::invalid_argument("grid function value count mismatch");
  }
}

GridFunction GridFunction::constant(const Grid& grid, double value) {
  return GridFunction(grid, std::vector<double>(grid.cell_count(), value));
}

GridFunction GridFunction::indicator(const Grid& grid, const Cube& q) {
  std::vector<double> vals(grid.cell_count(), 0.0);
  const CellRange r = grid.cell_range(q);
  std::fill(vals.begin() + static_cast<std::ptrdiff_t>(r.begin),
            vals.begin() + static_cast<std::ptrdiff_t>(r.end), 1.0);
  return GridFunction(grid, std::move(vals));
}

double GridFunction::integral(const Cube& q) const {
  const CellRange r = grid_.cell_range(q);
  double sum = 0.0;
  for (std::size_t c = r.begin; c < r.end; ++c) sum += values_[c];
  return sum * grid_.cell_volume();
}

double GridFunction::average(const Cube& q) const {
  return integral(q) / grid_.volume(q);
}

GridFunction GridFunction::restricted(const Cube& q) const {
  std::vector<double> vals(values_.size(), 0.0);
  const CellRange r = grid_.cell_range(q);
  std::copy(values_.begin() + static_cast<std::ptrdiff_t>(r.begin),
            values_.begin() + static_cast<std::ptrdiff_t>(r.end),
            vals.begin() + static_cast<std::ptrdiff_t>(r.begin));
  return GridFunction(grid_, std::move(vals));
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch");
  for (std::size_t c = 0; c < values_.size(); ++c) values_[c] += other[c];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("grid mismatch");
  for (std::size_t c = 0; c < values_.size(); ++c) values_[c] -= other[c];
  return *this;
}

GridFunction& GridFunction::operator*=(double scalar) {
  for (double& v : values_) v *= scalar;
  return *this;
}

GridFunction abs(const GridFunction& f) {
  std::vector<double> vals(f.size());
  for (std::size_t c = 0; c < f.size(); ++c) vals[c] = std::abs(f[c]);
  return GridFunction(f.grid(), std::move(vals));
}

GridFunction cellwise_product(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("grid mismatch");
  std::vector<double> vals(f.size());
  for (std::size_t c = 0; c < f.size(); ++c) vals[c] = f[c] * g[c];
  return GridFunction(f.grid(), std::move(vals));
}

double inner_product(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("grid mismatch");
  double sum = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) sum += f[c] * g[c];
  return sum * f.grid().cell_volume();
}

double l2_norm(const GridFunction& f) {
  double sum = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) sum += f[c] * f[c];
  return std::sqrt(sum * f.grid().cell_volume());
}

double sup_norm(const GridFunction& f) {
  double m = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) m = std::max(m, std::abs(f[c]));
  return m;
}

CubeSums::CubeSums(const GridFunction& f) : grid_(f.grid()) {
  sums_.resize(grid_.cube_count());
  const int depth = grid_.depth();
  const double cellvol = grid_.cell_volume();
  // Leaf ids within a level are lexicographic, not Z-order, so convert.
  for (std::size_t cell = 0; cell < grid_.cell_count(); ++cell) {
    const Cube leaf = grid_.cell_cube(cell);
    sums_[grid_.cube_id(leaf)] = f[cell] * cellvol;
  }
  for (int level = depth - 1; level >= 0; --level) {
    const std::size_t off = grid_.level_offset(level);
    const std::size_t n = grid_.level_size(level);
    for (std::size_t linear = 0; linear < n; ++linear) {
      const Cube q = grid_.cube_from_id(off + linear);
      double s = 0.0;
      for (int slot = 0; slot < grid_.child_count(); ++slot) {
        s += sums_[grid_.cube_id(grid_.child(q, slot))];
      }
      sums_[off + linear] = s;
    }
  }
}

}  // namespace dyadic
