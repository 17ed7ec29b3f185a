// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "dyadic/grid_function.hpp"

namespace dyadic {

/// Nested generations of stopping cubes below a root cube. Generation k+1
/// cubes sit strictly inside generation-k cubes, within one generation the
/// cubes are pairwise disjoint, and each cube meets the next generation in
/// at most half of its cells.
struct SparseFamily {
  Cube root;
  std::vector<std::vector<Cube>> generations;

  bool empty() const { return generations.empty(); }
  std::vector<Cube> flattened() const;
};

/// Lower median: the smallest cell value m of f on Q such that both strict
/// level sets {f > m} and {f < m} occupy at most half of Q.
double median(const GridFunction& f, const Cube& q);

/// Non-increasing rearrangement value inf{s >= 0 : |{x in Q : |f| > s}| <= t}
/// for 0 < t; exact order statistic on the cells of Q.
double rearrangement_value(const GridFunction& f, const Cube& q, double t);

/// Local mean oscillation: inf over constants c of the rearrangement of
/// (f - c)·1_Q at height lambda·|Q|. The infimum is attained at a cell value
/// or a midpoint of consecutive sorted cell values.
double oscillation(const GridFunction& f, const Cube& q, double lambda);

/// Local sharp maximal function on q0: at each cell, the max oscillation
/// over cubes containing the cell inside q0; zero outside q0.
GridFunction local_sharp_maximal(const GridFunction& f, const Cube& q0,
                                 double lambda);

/// Oscillation height used by the stopping construction: 2^(-d-2).
double sparse_lambda(int dimension);

/// Stopping-time decomposition. E(P) is the set where |f - median(f, P)|
/// exceeds its own rearrangement value at height 2^(-d-2)|P|, so
/// |E(P)| <= 2^(-d-2)|P| exactly; generation 0 holds the maximal cubes
/// strictly inside q0 that E(q0) fills beyond half, and the rule recurses
/// inside every selected cube. The selected cubes then provably meet the
/// half-measure property generation over generation.
SparseFamily sparse_decomposition(const GridFunction& f, const Cube& q0);

/// Smallest C such that, cell by cell on q0,
///   |f - median(f, q0)| <= C (sharp maximal at 1/4 + sum of parent
///                             oscillations over the sparse family).
/// Returns +inf if the right side vanishes where the left does not.
double domination_constant(const GridFunction& f, const Cube& q0);

}  // namespace dyadic
