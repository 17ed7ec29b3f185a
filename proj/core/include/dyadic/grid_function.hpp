// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "dyadic/grid.hpp"

namespace dyadic {

/// A real-valued function that is constant on the finest-level cells of a
/// fixed grid; values[c] is the cell average on cell c (Z-order). Integrals
/// over cubes are exact finite sums.
class GridFunction {
 public:
  GridFunction(const Grid& grid, std::vector<double> values);

  static GridFunction constant(const Grid& grid, double value);
  static GridFunction indicator(const Grid& grid, const Cube& q);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t cell) const { return values_[cell]; }
  double& operator[](std::size_t cell) { return values_[cell]; }
  std::span<const double> values() const { return values_; }

  double integral(const Cube& q) const;
  double average(const Cube& q) const;

  /// Copy that vanishes outside q.
  GridFunction restricted(const Cube& q) const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double scalar);

 private:
  Grid grid_;
  std::vector<double> values_;
};

GridFunction abs(const GridFunction& f);
GridFunction cellwise_product(const GridFunction& f, const GridFunction& g);
/// L2([0,1)^d) pairing: integral of f*g.
double inner_product(const GridFunction& f, const GridFunction& g);
double l2_norm(const GridFunction& f);
double sup_norm(const GridFunction& f);

/// Per-cube integrals of a grid function, built bottom-up so each cached sum
/// carries only O(depth) roundings relative to its own magnitude.
class CubeSums {
 public:
  explicit CubeSums(const GridFunction& f);

  const Grid& grid() const { return grid_; }
  double integral(const Cube& q) const { return sums_[grid_.cube_id(q)]; }
  double average(const Cube& q) const {
    return sums_[grid_.cube_id(q)] / grid_.volume(q);
  }
  std::span<const double> by_cube_id() const { return sums_; }

 private:
  Grid grid_;
  std::vector<double> sums_;
};

}  // namespace dyadic
