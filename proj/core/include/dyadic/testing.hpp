// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dyadic/shift.hpp"
#include "dyadic/weight.hpp"

namespace dyadic {

enum class TestingDirection { forward, adjoint };

struct TestingConstant {
  double value = 0.0;
  Cube attaining;
};

/// Sawyer-type local testing constant. Forward direction:
///   sup_Q ||1_Q S(1_Q sigma)||_{L^p(w)} / sigma(Q)^(1/p);
/// adjoint direction swaps the operator, the weights and p <-> p'.
/// Ties break to the first cube in canonical order.
TestingConstant shift_testing_constant(const HaarShift& shift, const Weight& w,
                                       const Weight& sigma, double p,
                                       TestingDirection direction);

/// Probe-based lower estimate of the maximal-operator norm:
///   max_f ||M(f sigma)||_{L^p(w)} / ||f||_{L^p(sigma)}.
double maximal_norm_estimate(const Weight& w, const Weight& sigma, double p,
                             std::span<const GridFunction> probes);

/// Partition by log2(sidelength) mod (kappa+1); class lambda holds the cubes
/// with level ≡ -lambda (mod kappa+1).
std::vector<std::vector<Cube>> scale_layers(std::span<const Cube> cubes,
                                            int kappa);

/// Principal-cube forest of one density layer: the members are the cubes of
/// the layer, generation-0 principals are the maximal members, and deeper
/// principals are the maximal members whose sigma-density more than doubles
/// that of their stopping parent. assigned[i] is the minimal principal cube
/// containing members[i] (possibly itself).
struct PrincipalForest {
  int layer = 0;        // a: density band [2^a, 2^(a+1))
  int scale_class = 0;  // lambda tag carried through from scale_layers
  std::vector<std::vector<Cube>> generations;
  std::vector<Cube> members;
  std::vector<Cube> assigned;

  std::vector<Cube> principals() const;
  std::vector<Cube> members_of(const Cube& principal, const Grid& grid) const;
};

/// Splits K by layer a = floor(log2 r(Q)), r(Q) the local two-weight ratio
/// (w(Q)/|Q|)^(1/p) (sigma(Q)/|Q|)^(1/p'); ratios below 1 are pooled into the
/// single layer floor(log2 min r). Builds one forest per nonempty layer.
std::vector<PrincipalForest> build_principal_forest(std::span<const Cube> K,
                                                    const Weight& w,
                                                    const Weight& sigma,
                                                    double p,
                                                    int scale_class = 0);

/// (sum of sigma(P) over principals) / (ainfty(sigma) * sigma(q0)).
double carleson_ratio(const PrincipalForest& forest, const Weight& sigma,
                      const Cube& q0);
double carleson_ratio(const PrincipalForest& forest, const Weight& sigma,
                      const Cube& q0, double ainfty_sigma);

/// w-measures of the level sets {|S sigma| > t * sigma(P)/|P|} inside P,
/// one per threshold, with the decay rate fitted by least squares on the
/// log-measures of the nonempty sets (absent when fewer than two).
struct DecayProfile {
  std::vector<std::pair<double, double>> level_sets;  // (t, w-measure)
  std::optional<double> fitted_rate;
};

DecayProfile decay_profile(const HaarShift& restricted, const Weight& sigma,
                           const Weight& w, const Cube& principal,
                           std::span<const double> thresholds);

/// ||1_Q S(1_Q sigma)||_{L^p(w)} normalized by
/// (1+kappa) ([w,sigma]_{Ap} ainfty(sigma) sigma(Q))^(1/p).
double testing_proposition_ratio(const HaarShift& shift, const Weight& w,
                                 const Weight& sigma, double p, const Cube& q);

/// All cubes at once (canonical order), sharing the characteristic
/// computations across cubes.
std::vector<double> testing_proposition_ratios(const HaarShift& shift,
                                               const Weight& w,
                                               const Weight& sigma, double p);

}  // namespace dyadic
