// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dyadic {

/// A dyadic cube inside the unit cube [0,1)^d, identified by its refinement
/// level (0 = root) and per-axis position (index[j] < 2^level). Unused axes
/// stay zero so cubes compare by value.
struct Cube {
  int level = 0;
  std::array<std::uint32_t, 2> index{0, 0};

  friend bool operator==(const Cube&, const Cube&) = default;
};

/// Half-open range [begin, end) of finest-level cells in depth-first
/// (Z-curve) order. Every cube owns a contiguous range.
struct CellRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
};

/// Finite dyadic grid on [0,1)^d with cells of side 2^-depth. The grid is a
/// small value type: everything is derived from (dimension, depth).
///
/// Cell storage order is the Z-curve at the finest level, which makes the
/// cell set of any cube a contiguous range. Cube enumeration order is
/// level-major, then lexicographic in the index tuple; that order is the
/// canonical tie-breaker everywhere a supremum-attaining cube is reported.
class Grid {
 public:
  Grid(int dimension, int depth);

  int dimension() const { return dim_; }
  int depth() const { return depth_; }

  std::size_t cell_count() const { return std::size_t{1} << (dim_ * depth_); }
  std::size_t cube_count() const { return level_offset(depth_ + 1); }
  double cell_volume() const;

  Cube root() const { return {}; }
  bool is_leaf(const Cube& q) const { return q.level == depth_; }
  bool valid(const Cube& q) const;
  double side_length(const Cube& q) const;
  double volume(const Cube& q) const;

  std::size_t cells_in(const Cube& q) const {
    return std::size_t{1} << (dim_ * (depth_ - q.level));
  }
  CellRange cell_range(const Cube& q) const;

  /// The unique cube of level q.level - i containing q; i = 0 is the
  /// identity. Throws std::out_of_range when i exceeds q.level.
  Cube ancestor(const Cube& q, int i) const;

  int child_count() const { return 1 << dim_; }
  /// Children are ordered lexicographically by index tuple; slot encodes the
  /// per-axis offset bits (axis 0 = most significant).
  Cube child(const Cube& q, int slot) const;
  std::vector<Cube> children(const Cube& q) const;

  bool contains(const Cube& outer, const Cube& inner) const;

  /// Canonical id: level-major offset plus lexicographic rank within level.
  std::size_t cube_id(const Cube& q) const;
  Cube cube_from_id(std::size_t id) const;
  std::size_t level_offset(int level) const;
  std::size_t level_size(int level) const {
    return std::size_t{1} << (dim_ * level);
  }

  Cube cell_cube(std::size_t cell) const;
  std::size_t cell_of(const Cube& leaf) const;
  /// Which child slot of q contains the given cell (cell must lie in q).
  int child_slot_at(const Cube& q, std::size_t cell) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dim_;
  int depth_;
};

/// Canonical strict ordering: level-major, then lexicographic index.
bool cube_before(const Cube& a, const Cube& b);

}  // namespace dyadic
