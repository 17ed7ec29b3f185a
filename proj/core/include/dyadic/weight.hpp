// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "dyadic/grid_function.hpp"

namespace dyadic {

/// A strictly positive grid function together with cached cube measures
/// w(Q). Values below kMinDensity are rejected at construction because the
/// dual-weight exponents amplify near-zero densities.
class Weight {
 public:
  static constexpr double kMinDensity = 1e-12;

  explicit Weight(GridFunction density);
  static Weight uniform(const Grid& grid, double value = 1.0);

  const Grid& grid() const { return density_.grid(); }
  const GridFunction& density() const { return density_; }
  double measure(const Cube& q) const {
    return measures_[grid().cube_id(q)];
  }
  double total() const { return measures_[0]; }

 private:
  GridFunction density_;
  std::vector<double> measures_;  // indexed by cube id, built bottom-up
};

/// The dual weight w^(1-p'), p' = p/(p-1). Throws std::domain_error for
/// p <= 1.
Weight dual_weight(const Weight& w, double p);

/// Dyadic maximal function sup_{Q ∋ x} avg_Q |f| (Lebesgue averages). With
/// restrict_to set, f is treated as f·1_Q0 and only cubes inside Q0 compete;
/// the result vanishes outside Q0.
GridFunction dyadic_maximal(const GridFunction& f,
                            std::optional<Cube> restrict_to = {});
/// Weighted variant: sup_{Q ∋ x} (1/mu(Q)) ∫_Q |f| dmu.
GridFunction dyadic_maximal(const GridFunction& f, const Weight& mu,
                            std::optional<Cube> restrict_to = {});

struct SupResult {
  double value = 0.0;
  Cube attaining;
};

/// sup_Q (w(Q)/|Q|) (sigma(Q)/|Q|)^(p-1) with the first attaining cube in
/// canonical order. With sigma = dual_weight(w, p) this is the usual
/// characteristic of w.
SupResult ap_two_weight(const Weight& w, const Weight& sigma, double p);

/// Fujii–Wilson characteristic sup_Q (1/w(Q)) ∫_Q M(w 1_Q), with M the
/// dyadic maximal operator restricted to Q.
double ainfty(const Weight& w, std::optional<Cube> restrict_to = {});

/// (∫ |f|^p w)^(1/p) for p in [1, ∞).
double lp_norm(const GridFunction& f, const Weight& w, double p);

}  // namespace dyadic
