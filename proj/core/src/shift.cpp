// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#include "dyadic/shift.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "dyadic/rng.hpp"

namespace dyadic {

namespace {

constexpr double kCoeffTol = 1e-12;

void validate_profile(const Grid& grid, const Cube& carrier,
                      const std::vector<double>& coeffs, bool positive) {
  const std::size_t expected =
      grid.is_leaf(carrier) ? 1u : static_cast<std::size_t>(grid.child_count());
  if (coeffs.size() != expected) {
    throw std::invalid_argument("profile coefficient count mismatch");
  }
  for (double c : coeffs) {
    if (!std::isfinite(c) || std::abs(c) > 1.0 + kCoeffTol) {
      throw std::invalid_argument("profile coefficients must satisfy |c| <= 1");
    }
    if (positive && c < 0.0) {
      throw std::invalid_argument(
          "positive shift requires nonnegative coefficients");
    }
  }
}

}  // namespace

HaarShift::HaarShift(const Grid& grid, int out_depth, int in_depth,
                     std::vector<ShiftComponent> components, bool positive,
                     double scale)
    : grid_(grid),
      m_(out_depth),
      n_(in_depth),
      positive_(positive),
      scale_(scale),
      components_(std::move(components)) {
  if (m_ < 0 || n_ < 0) {
    throw std::invalid_argument("complexity type must be nonnegative");
  }
  if (!std::isfinite(scale_)) {
    throw std::invalid_argument("scale must be finite");
  }
  std::sort(components_.begin(), components_.end(),
            [](const ShiftComponent& a, const ShiftComponent& b) {
              return cube_before(a.cube, b.cube);
            });
  // Merge duplicate component cubes, drop empty components.
  std::vector<ShiftComponent> merged;
  for (auto& comp : components_) {
    if (!merged.empty() && merged.back().cube == comp.cube) {
      auto& dst = merged.back().terms;
      dst.insert(dst.end(), std::make_move_iterator(comp.terms.begin()),
                 std::make_move_iterator(comp.terms.end()));
    } else {
      merged.push_back(std::move(comp));
    }
  }
  std::erase_if(merged, [](const ShiftComponent& c) { return c.terms.empty(); });
  components_ = std::move(merged);

  for (const auto& comp : components_) {
    if (!grid_.valid(comp.cube)) {
      throw std::invalid_argument("component cube outside grid");
    }
    // Kernel of the component: accumulate the child-slot outer products per
    // (out, in) cube pair and require sup <= 1.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> kernels;
    for (const auto& term : comp.terms) {
      if (!grid_.valid(term.out_cube) || !grid_.valid(term.in_cube)) {
        throw std::invalid_argument("term cube outside grid");
      }
      if (term.out_cube.level != comp.cube.level + m_ ||
          term.in_cube.level != comp.cube.level + n_) {
        throw std::invalid_argument(
            "term cubes must sit at the component's complexity depths");
      }
      if (!grid_.contains(comp.cube, term.out_cube) ||
          !grid_.contains(comp.cube, term.in_cube)) {
        throw std::invalid_argument("term cubes must lie inside the component");
      }
      validate_profile(grid_, term.out_cube, term.out_coeffs, positive_);
      validate_profile(grid_, term.in_cube, term.in_coeffs, positive_);
      auto& k = kernels[{grid_.cube_id(term.out_cube),
                         grid_.cube_id(term.in_cube)}];
      k.resize(term.out_coeffs.size() * term.in_coeffs.size(), 0.0);
      for (std::size_t a = 0; a < term.out_coeffs.size(); ++a) {
        for (std::size_t b = 0; b < term.in_coeffs.size(); ++b) {
          k[a * term.in_coeffs.size() + b] +=
              term.out_coeffs[a] * term.in_coeffs[b];
        }
      }
    }
    for (const auto& [key, k] : kernels) {
      for (double v : k) {
        if (std::abs(v) > 1.0 + 1e-9) {
          throw std::invalid_argument("component kernel exceeds sup bound 1");
        }
      }
    }
  }

  level_begin_.assign(static_cast<std::size_t>(grid_.depth()) + 2, 0);
  for (int level = 0; level <= grid_.depth() + 1; ++level) {
    const auto it = std::lower_bound(
        components_.begin(), components_.end(), level,
        [](const ShiftComponent& c, int lv) { return c.cube.level < lv; });
    level_begin_[static_cast<std::size_t>(level)] =
        static_cast<std::size_t>(it - components_.begin());
  }
}

int HaarShift::complexity() const { return std::max({m_, n_, 1}); }

std::size_t HaarShift::term_count() const {
  std::size_t n = 0;
  for (const auto& c : components_) n += c.terms.size();
  return n;
}

GridFunction HaarShift::apply_impl(const GridFunction& f, int level_lo,
                                   int level_hi, bool transpose) const {
  if (!(grid_ == f.grid())) throw std::invalid_argument("grid mismatch");
  std::vector<double> diff(grid_.cell_count() + 1, 0.0);
  const CubeSums sums(f);

  const auto pair_integral = [&](const Cube& c,
                                 const std::vector<double>& coeffs) {
    if (coeffs.size() == 1) return coeffs[0] * sums.integral(c);
    double s = 0.0;
    for (int slot = 0; slot < grid_.child_count(); ++slot) {
      s += coeffs[static_cast<std::size_t>(slot)] *
           sums.integral(grid_.child(c, slot));
    }
    return s;
  };
  const auto add_profile = [&](const Cube& c,
                               const std::vector<double>& coeffs, double v) {
    if (coeffs.size() == 1) {
      const CellRange r = grid_.cell_range(c);
      diff[r.begin] += v * coeffs[0];
      diff[r.end] -= v * coeffs[0];
      return;
    }
    for (int slot = 0; slot < grid_.child_count(); ++slot) {
      const CellRange r = grid_.cell_range(grid_.child(c, slot));
      const double w = v * coeffs[static_cast<std::size_t>(slot)];
      diff[r.begin] += w;
      diff[r.end] -= w;
    }
  };

  level_lo = std::max(level_lo, 0);
  level_hi = std::min(level_hi, grid_.depth());
  const std::size_t begin = level_begin_[static_cast<std::size_t>(level_lo)];
  const std::size_t end =
      level_hi + 1 <= grid_.depth() + 1
          ? level_begin_[static_cast<std::size_t>(level_hi + 1)]
          : components_.size();
  for (std::size_t ci = begin; ci < end; ++ci) {
    const auto& comp = components_[ci];
    const double invvol = 1.0 / grid_.volume(comp.cube);
    for (const auto& term : comp.terms) {
      const Cube& in_c = transpose ? term.out_cube : term.in_cube;
      const Cube& out_c = transpose ? term.in_cube : term.out_cube;
      const auto& in_coeffs = transpose ? term.out_coeffs : term.in_coeffs;
      const auto& out_coeffs = transpose ? term.in_coeffs : term.out_coeffs;
      const double v = pair_integral(in_c, in_coeffs) * invvol;
      add_profile(out_c, out_coeffs, v);
    }
  }

  std::vector<double> out(grid_.cell_count());
  double acc = 0.0;
  for (std::size_t c = 0; c < out.size(); ++c) {
    acc += diff[c];
    out[c] = acc * scale_;
  }
  return GridFunction(grid_, std::move(out));
}

GridFunction HaarShift::apply(const GridFunction& f) const {
  return apply_impl(f, 0, grid_.depth(), false);
}

GridFunction HaarShift::adjoint_apply(const GridFunction& g) const {
  return apply_impl(g, 0, grid_.depth(), true);
}

GridFunction HaarShift::truncated_apply(const GridFunction& f, double eps,
                                        double ups) const {
  int lo = grid_.depth() + 1, hi = -1;
  for (int level = 0; level <= grid_.depth(); ++level) {
    const double side = std::ldexp(1.0, -level);
    if (side >= eps && side <= ups) {
      lo = std::min(lo, level);
      hi = std::max(hi, level);
    }
  }
  if (hi < lo) return GridFunction::constant(grid_, 0.0);
  return apply_impl(f, lo, hi, false);
}

GridFunction HaarShift::maximal_truncation(const GridFunction& f) const {
  const std::size_t cells = grid_.cell_count();
  const int depth = grid_.depth();
  // Per-level partial outputs; windows are contiguous level ranges.
  std::vector<std::vector<double>> per_level;
  std::vector<int> levels;
  for (int level = 0; level <= depth; ++level) {
    if (level_begin_[static_cast<std::size_t>(level)] ==
        level_begin_[static_cast<std::size_t>(level) + 1]) {
      continue;
    }
    GridFunction part = apply_impl(f, level, level, false);
    per_level.emplace_back(part.values().begin(), part.values().end());
    levels.push_back(level);
  }
  std::vector<double> best(cells, 0.0);
  std::vector<double> running(cells);
  for (std::size_t b = 0; b < per_level.size(); ++b) {
    std::fill(running.begin(), running.end(), 0.0);
    for (std::size_t a = b; a < per_level.size(); ++a) {
      // Skipping component-free levels between b and a does not change the
      // window sums, so only populated levels are enumerated.
      for (std::size_t c = 0; c < cells; ++c) {
        running[c] += per_level[a][c];
        best[c] = std::max(best[c], std::abs(running[c]));
      }
    }
  }
  return GridFunction(grid_, std::move(best));
}

HaarShift HaarShift::adjoint() const {
  std::vector<ShiftComponent> comps;
  comps.reserve(components_.size());
  for (const auto& comp : components_) {
    ShiftComponent swapped{comp.cube, {}};
    swapped.terms.reserve(comp.terms.size());
    for (const auto& term : comp.terms) {
      swapped.terms.push_back(
          {term.in_cube, term.out_cube, term.in_coeffs, term.out_coeffs});
    }
    comps.push_back(std::move(swapped));
  }
  return HaarShift(grid_, n_, m_, std::move(comps), positive_, scale_);
}

HaarShift HaarShift::with_scale(double scale) const {
  return HaarShift(grid_, m_, n_, components_, positive_, scale);
}

HaarShift HaarShift::restricted_to(std::span<const Cube> cubes) const {
  std::unordered_set<std::size_t> keep;
  for (const Cube& q : cubes) keep.insert(grid_.cube_id(q));
  std::vector<ShiftComponent> comps;
  for (const auto& comp : components_) {
    if (keep.count(grid_.cube_id(comp.cube))) comps.push_back(comp);
  }
  return HaarShift(grid_, m_, n_, std::move(comps), positive_, scale_);
}

double operator_l2_norm(const HaarShift& shift) {
  if (shift.components().empty() || shift.scale() == 0.0) return 0.0;
  const Grid& grid = shift.grid();
  SplitMix64 rng(0x715b3a7ed4210ull);
  std::vector<double> start(grid.cell_count());
  for (double& v : start) v = rng.uniform(-1.0, 1.0);
  GridFunction v(grid, std::move(start));

  double prev = -1.0;
  for (int iter = 0; iter < 5000; ++iter) {
    const GridFunction u = shift.apply(v);
    const double nu = l2_norm(u);
    const double nv = l2_norm(v);
    if (nu == 0.0 || nv == 0.0) return 0.0;
    const double est = nu / nv;
    if (prev >= 0.0 && std::abs(est - prev) <= 1e-9 * est) return est;
    prev = est;
    GridFunction next = shift.adjoint_apply(u);
    const double nn = l2_norm(next);
    if (nn == 0.0) return est;
    next *= 1.0 / nn;
    v = std::move(next);
  }
  return prev;
}

NormalizedShift normalized(const HaarShift& shift) {
  const double norm = operator_l2_norm(shift);
  if (norm <= 1.0) return {shift, norm};
  // Small cushion: power iteration approaches the norm from below.
  return {shift.with_scale(shift.scale() / (norm * (1.0 + 5e-7))), norm};
}

PositiveShiftBuild build_positive_shift(const Grid& grid,
                                        const PositiveShiftSpec& spec) {
  if (spec.offset < 1) {
    throw std::invalid_argument("positive shift offset must be >= 1");
  }
  std::unordered_set<std::size_t> seen;
  for (const Cube& q : spec.family) {
    if (!grid.valid(q)) {
      throw std::invalid_argument("family cube outside grid");
    }
    if (q.level < spec.offset) {
      throw std::invalid_argument(
          "family cube too shallow for the requested ancestor offset");
    }
    if (!seen.insert(grid.cube_id(q)).second) {
      throw std::invalid_argument("family contains duplicate cubes");
    }
  }

  std::map<std::size_t, std::vector<Cube>> groups;  // ancestor id -> cubes
  for (const Cube& q : spec.family) {
    groups[grid.cube_id(grid.ancestor(q, spec.offset))].push_back(q);
  }

  const auto unit_profile = [&](const Cube& c) {
    return std::vector<double>(
        grid.is_leaf(c) ? 1u : static_cast<std::size_t>(grid.child_count()),
        1.0);
  };

  std::vector<ShiftComponent> comps;
  comps.reserve(groups.size());
  for (const auto& [anc_id, members] : groups) {
    const Cube anc = grid.cube_from_id(anc_id);
    ShiftComponent comp{anc, {}};
    const int in_level = anc.level + spec.offset;
    // Input side: the full indicator of the ancestor, resolved on the
    // depth-i tiling so the term structure matches the complexity type.
    std::vector<Cube> tiles;
    const auto collect = [&](const auto& self, const Cube& q) -> void {
      if (q.level == in_level) {
        tiles.push_back(q);
        return;
      }
      for (int s = 0; s < grid.child_count(); ++s) {
        self(self, grid.child(q, s));
      }
    };
    collect(collect, anc);
    for (const Cube& member : members) {
      for (const Cube& tile : tiles) {
        comp.terms.push_back(
            {member, tile, unit_profile(member), unit_profile(tile)});
      }
    }
    comps.push_back(std::move(comp));
  }

  HaarShift shift(grid, spec.offset, spec.offset, std::move(comps),
                  /*positive=*/true, /*scale=*/1.0);
  return {std::move(shift),
          kPositiveShiftScaleNumerator / static_cast<double>(spec.offset)};
}

}  // namespace dyadic
