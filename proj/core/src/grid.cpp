// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#include "dyadic/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dyadic {

namespace {

// Interleaves the low `bits` bits of x and y; x lands on the odd (higher)
// positions so that slot order and Z-order agree.
std::uint64_t interleave(std::uint32_t x, std::uint32_t y, int bits) {
  std::uint64_t code = 0;
  for (int j = 0; j < bits; ++j) {
    code |= std::uint64_t{(x >> j) & 1u} << (2 * j + 1);
    code |= std::uint64_t{(y >> j) & 1u} << (2 * j);
  }
  return code;
}

void deinterleave(std::uint64_t code, int bits, std::uint32_t& x,
                  std::uint32_t& y) {
  x = 0;
  y = 0;
  for (int j = 0; j < bits; ++j) {
    x |= static_cast<std::uint32_t>((code >> (2 * j + 1)) & 1u) << j;
    y |= static_cast<std::uint32_t>((code >> (2 * j)) & 1u) << j;
  }
}

}  // namespace

Grid::Grid(int dimension, int depth) : dim_(dimension), depth_(depth) {
  if (dimension != 1 && dimension != 2) {
    throw std::invalid_argument("grid dimension must be 1 or 2, got " +
                                std::to_string(dimension));
  }
  const int max_depth = dimension == 1 ? 14 : 7;
  if (depth < 1 || depth > max_depth) {
    throw std::invalid_argument("grid depth must lie in [1, " +
                                std::to_string(max_depth) + "] for d=" +
                                std::to_string(dimension) + ", got " +
                                std::to_string(depth));
  }
}

double Grid::cell_volume() const {
  return std::ldexp(1.0, -dim_ * depth_);
}

bool Grid::valid(const Cube& q) const {
  if (q.level < 0 || q.level > depth_) return false;
  const std::uint32_t bound = 1u << q.level;
  for (int a = 0; a < dim_; ++a) {
    if (q.index[a] >= bound) return false;
  }
  for (int a = dim_; a < 2; ++a) {
    if (q.index[a] != 0) return false;
  }
  return true;
}

double Grid::side_length(const Cube& q) const {
  return std::ldexp(1.0, -q.level);
}

double Grid::volume(const Cube& q) const {
  return std::ldexp(1.0, -dim_ * q.level);
}

CellRange Grid::cell_range(const Cube& q) const {
  std::uint64_t prefix = dim_ == 1
                             ? q.index[0]
                             : interleave(q.index[0], q.index[1], q.level);
  const int shift = dim_ * (depth_ - q.level);
  return {static_cast<std::size_t>(prefix << shift),
          static_cast<std::size_t>((prefix + 1) << shift)};
}

Cube Grid::ancestor(const Cube& q, int i) const {
  if (i < 0) throw std::invalid_argument("ancestor offset must be >= 0");
  if (i > q.level) {
    throw std::out_of_range("ancestor beyond root: level " +
                            std::to_string(q.level) + ", offset " +
                            std::to_string(i));
  }
  Cube a;
  a.level = q.level - i;
  for (int axis = 0; axis < dim_; ++axis) a.index[axis] = q.index[axis] >> i;
  return a;
}

Cube Grid::child(const Cube& q, int slot) const {
  if (is_leaf(q)) {
    throw std::out_of_range("no children: cube is at the finest level");
  }
  Cube c;
  c.level = q.level + 1;
  if (dim_ == 1) {
    c.index[0] = 2 * q.index[0] + static_cast<std::uint32_t>(slot & 1);
  } else {
    c.index[0] = 2 * q.index[0] + static_cast<std::uint32_t>((slot >> 1) & 1);
    c.index[1] = 2 * q.index[1] + static_cast<std::uint32_t>(slot & 1);
  }
  return c;
}

std::vector<Cube> Grid::children(const Cube& q) const {
  std::vector<Cube> out;
  out.reserve(child_count());
  for (int s = 0; s < child_count(); ++s) out.push_back(child(q, s));
  return out;
}

bool Grid::contains(const Cube& outer, const Cube& inner) const {
  if (inner.level < outer.level) return false;
  const int shift = inner.level - outer.level;
  for (int a = 0; a < dim_; ++a) {
    if ((inner.index[a] >> shift) != outer.index[a]) return false;
  }
  return true;
}

std::size_t Grid::cube_id(const Cube& q) const {
  std::size_t linear = q.index[0];
  if (dim_ == 2) {
    linear = (static_cast<std::size_t>(q.index[0]) << q.level) + q.index[1];
  }
  return level_offset(q.level) + linear;
}

Cube Grid::cube_from_id(std::size_t id) const {
  int level = 0;
  while (level < depth_ && id >= level_offset(level + 1)) ++level;
  std::size_t linear = id - level_offset(level);
  Cube q;
  q.level = level;
  if (dim_ == 1) {
    q.index[0] = static_cast<std::uint32_t>(linear);
  } else {
    q.index[0] = static_cast<std::uint32_t>(linear >> level);
    q.index[1] =
        static_cast<std::uint32_t>(linear & ((std::size_t{1} << level) - 1));
  }
  return q;
}

std::size_t Grid::level_offset(int level) const {
  // sum_{k<level} 2^(dk) = (2^(d*level) - 1) / (2^d - 1)
  const std::size_t num = (std::size_t{1} << (dim_ * level)) - 1;
  return num / ((std::size_t{1} << dim_) - 1);
}

Cube Grid::cell_cube(std::size_t cell) const {
  Cube q;
  q.level = depth_;
  if (dim_ == 1) {
    q.index[0] = static_cast<std::uint32_t>(cell);
  } else {
    deinterleave(cell, depth_, q.index[0], q.index[1]);
  }
  return q;
}

std::size_t Grid::cell_of(const Cube& leaf) const {
  return cell_range(leaf).begin;
}

int Grid::child_slot_at(const Cube& q, std::size_t cell) const {
  const int shift = dim_ * (depth_ - q.level - 1);
  return static_cast<int>((cell >> shift) & ((std::size_t{1} << dim_) - 1));
}

bool cube_before(const Cube& a, const Cube& b) {
  if (a.level != b.level) return a.level < b.level;
  if (a.index[0] != b.index[0]) return a.index[0] < b.index[0];
  return a.index[1] < b.index[1];
}

}  // namespace dyadic
