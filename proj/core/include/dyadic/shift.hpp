// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "dyadic/grid_function.hpp"

namespace dyadic {

/// One pairing inside a shift component at cube Q: the input profile lives
/// on in_cube (side 2^-n of Q's), the output profile on out_cube (side 2^-m
/// of Q's). Profiles are child-constant: one coefficient per child in slot
/// order, or a single coefficient when the carrying cube is a finest-level
/// cell. Sup norms of both profiles must be <= 1.
struct ShiftTerm {
  Cube out_cube;
  Cube in_cube;
  std::vector<double> out_coeffs;
  std::vector<double> in_coeffs;
};

struct ShiftComponent {
  Cube cube;
  std::vector<ShiftTerm> terms;
};

/// A generalized Haar shift of complexity type (m, n) on a finite grid:
///
///   S f = scale * sum_Q (1/|Q|) sum_terms <f, in_profile> out_profile.
///
/// Components are stored sparsely (absent cube = zero component) in
/// canonical cube order, so serial evaluation order is reproducible.
/// Construction validates the type invariants: term cubes at the required
/// depths inside Q, profile sup-norms <= 1, the induced kernel of every
/// component bounded by 1, and nonnegative coefficients when the positivity
/// flag is set. The L2 normalization is opt-in via normalized(); nothing is
/// rescaled silently.
class HaarShift {
 public:
  HaarShift(const Grid& grid, int out_depth, int in_depth,
            std::vector<ShiftComponent> components, bool positive = false,
            double scale = 1.0);

  const Grid& grid() const { return grid_; }
  /// Complexity type (m, n): depth of output and input cubes below Q.
  int out_depth() const { return m_; }
  int in_depth() const { return n_; }
  /// Complexity kappa = max(m, n, 1).
  int complexity() const;
  bool positive() const { return positive_; }
  double scale() const { return scale_; }
  const std::vector<ShiftComponent>& components() const { return components_; }
  std::size_t term_count() const;

  GridFunction apply(const GridFunction& f) const;
  GridFunction adjoint_apply(const GridFunction& g) const;
  /// Only components whose cube side length lies in [eps, ups].
  GridFunction truncated_apply(const GridFunction& f, double eps,
                               double ups) const;
  /// Pointwise max of |truncated_apply| over all contiguous scale windows.
  GridFunction maximal_truncation(const GridFunction& f) const;

  /// The transpose operator as a shift of complexity type (n, m).
  HaarShift adjoint() const;
  HaarShift with_scale(double scale) const;
  /// Sub-shift keeping only components at the given cubes.
  HaarShift restricted_to(std::span<const Cube> cubes) const;

 private:
  GridFunction apply_impl(const GridFunction& f, int level_lo, int level_hi,
                          bool transpose) const;

  Grid grid_;
  int m_;
  int n_;
  bool positive_;
  double scale_;
  std::vector<ShiftComponent> components_;       // sorted by cube id
  std::vector<std::size_t> level_begin_;         // index ranges per level
};

/// Unweighted L2 -> L2 operator norm by power iteration on S*S, to relative
/// tolerance 1e-8. Exact zero for the empty shift.
double operator_l2_norm(const HaarShift& shift);

struct NormalizedShift {
  HaarShift shift;
  double raw_norm;
};

/// Rescales so the measured L2 norm is <= 1 (no-op when already <= 1).
NormalizedShift normalized(const HaarShift& shift);

/// Specification of a positive shift built from a sparse cube family: the
/// component at Q = ancestor(Q', i) maps the average over Q to the indicator
/// of Q', summed over family cubes Q' with that ancestor.
struct PositiveShiftSpec {
  std::vector<Cube> family;
  int offset = 1;  // i >= 1
};

struct PositiveShiftBuild {
  HaarShift shift;
  /// Suggested uniform scale c/i that brings the L2 norm under 1 for
  /// stopping-time families; reported, never applied.
  double suggested_scale;
};

PositiveShiftBuild build_positive_shift(const Grid& grid,
                                        const PositiveShiftSpec& spec);

/// Numerator of the suggested c/i scale. Calibrated once on stopping-time
/// families at d=1, L=10 (measured min over instances of i/norm was 1.019)
/// and frozen with margin.
inline constexpr double kPositiveShiftScaleNumerator = 0.9;

}  // namespace dyadic
