// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#include "dyadic/testing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace dyadic {

namespace {

double testing_ratio(const HaarShift& shift, const Weight& target,
                     const Weight& source, double p, const Cube& q,
                     bool transpose) {
  const GridFunction input = source.density().restricted(q);
  const GridFunction out =
      transpose ? shift.adjoint_apply(input) : shift.apply(input);
  const double num = lp_norm(out.restricted(q), target, p);
  return num / std::pow(source.measure(q), 1.0 / p);
}

}  // namespace

TestingConstant shift_testing_constant(const HaarShift& shift, const Weight& w,
                                       const Weight& sigma, double p,
                                       TestingDirection direction) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::domain_error("testing constant requires p in (1, inf)");
  }
  const Grid& grid = shift.grid();
  const double pp = p / (p - 1.0);
  TestingConstant best{-1.0, grid.root()};
  for (std::size_t id = 0; id < grid.cube_count(); ++id) {
    const Cube q = grid.cube_from_id(id);
    const double value =
        direction == TestingDirection::forward
            ? testing_ratio(shift, w, sigma, p, q, /*transpose=*/false)
            : testing_ratio(shift, sigma, w, pp, q, /*transpose=*/true);
    if (value > best.value) best = {value, q};
  }
  best.value = std::max(best.value, 0.0);
  return best;
}

double maximal_norm_estimate(const Weight& w, const Weight& sigma, double p,
                             std::span<const GridFunction> probes) {
  if (probes.empty()) {
    throw std::invalid_argument("maximal norm estimate needs probes");
  }
  double best = 0.0;
  for (const GridFunction& f : probes) {
    const double denom = lp_norm(f, sigma, p);
    if (denom == 0.0) {
      throw std::invalid_argument("probe functions must be nonzero");
    }
    const GridFunction mf =
        dyadic_maximal(cellwise_product(f, sigma.density()));
    best = std::max(best, lp_norm(mf, w, p) / denom);
  }
  return best;
}

std::vector<std::vector<Cube>> scale_layers(std::span<const Cube> cubes,
                                            int kappa) {
  if (kappa < 1) throw std::invalid_argument("kappa must be >= 1");
  const int classes = kappa + 1;
  std::vector<std::vector<Cube>> out(static_cast<std::size_t>(classes));
  for (const Cube& q : cubes) {
    // log2(sidelength) = -level, reduced mod kappa+1.
    const int cls = (classes - q.level % classes) % classes;
    out[static_cast<std::size_t>(cls)].push_back(q);
  }
  return out;
}

std::vector<Cube> PrincipalForest::principals() const {
  std::vector<Cube> out;
  for (const auto& gen : generations) out.insert(out.end(), gen.begin(), gen.end());
  return out;
}

std::vector<Cube> PrincipalForest::members_of(const Cube& principal,
                                              const Grid& grid) const {
  std::vector<Cube> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (grid.cube_id(assigned[i]) == grid.cube_id(principal)) {
      out.push_back(members[i]);
    }
  }
  return out;
}

std::vector<PrincipalForest> build_principal_forest(std::span<const Cube> K,
                                                    const Weight& w,
                                                    const Weight& sigma,
                                                    double p,
                                                    int scale_class) {
  if (K.empty()) throw std::invalid_argument("member set must be nonempty");
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::domain_error("principal forests require p in (1, inf)");
  }
  const Grid& grid = w.grid();
  const double inv_p = 1.0 / p;
  const double inv_pp = (p - 1.0) / p;

  const auto local_ratio = [&](const Cube& q) {
    const double vol = grid.volume(q);
    return std::pow(w.measure(q) / vol, inv_p) *
           std::pow(sigma.measure(q) / vol, inv_pp);
  };

  double min_ratio = std::numeric_limits<double>::infinity();
  std::vector<double> ratios(K.size());
  for (std::size_t i = 0; i < K.size(); ++i) {
    ratios[i] = local_ratio(K[i]);
    min_ratio = std::min(min_ratio, ratios[i]);
  }
  const int floor_layer = static_cast<int>(std::floor(std::log2(min_ratio)));

  // Layer assignment: floor(log2 r) for r >= 1, the pooled bottom layer
  // otherwise.
  std::unordered_map<int, std::vector<Cube>> layers;
  for (std::size_t i = 0; i < K.size(); ++i) {
    const int raw = static_cast<int>(std::floor(std::log2(ratios[i])));
    layers[raw >= 0 ? raw : floor_layer].push_back(K[i]);
  }

  std::vector<int> layer_ids;
  layer_ids.reserve(layers.size());
  for (const auto& [a, cubes] : layers) layer_ids.push_back(a);
  std::sort(layer_ids.begin(), layer_ids.end());

  std::vector<PrincipalForest> forests;
  forests.reserve(layer_ids.size());
  for (const int a : layer_ids) {
    auto& cubes = layers[a];
    std::sort(cubes.begin(), cubes.end(), cube_before);

    PrincipalForest forest;
    forest.layer = a;
    forest.scale_class = scale_class;
    forest.members = cubes;
    forest.assigned.resize(cubes.size());

    std::unordered_map<std::size_t, std::size_t> member_index;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
      member_index[grid.cube_id(cubes[i])] = i;
    }

    const auto density = [&](const Cube& q) {
      return sigma.measure(q) / grid.volume(q);
    };

    // Depth-first stopping descent. A member becomes principal when it is
    // the first member on its branch (generation 0) or its sigma-density
    // more than doubles the current stopping parent's; first hits are the
    // maximal candidates.
    std::vector<std::vector<Cube>> generations;
    const auto record_member = [&](const Cube& q, const Cube& principal) {
      forest.assigned[member_index.at(grid.cube_id(q))] = principal;
    };
    const auto descend = [&](const auto& self, const Cube& q,
                             std::optional<Cube> principal,
                             std::size_t generation) -> void {
      std::optional<Cube> current = principal;
      std::size_t next_generation = generation;
      const auto it = member_index.find(grid.cube_id(q));
      if (it != member_index.end()) {
        const bool stops =
            !current.has_value() ||
            density(q) > 2.0 * density(*current);
        if (stops) {
          if (generations.size() <= generation) generations.resize(generation + 1);
          generations[generation].push_back(q);
          current = q;
          next_generation = generation + 1;
        }
        record_member(q, *current);
      }
      if (grid.is_leaf(q)) return;
      for (int s = 0; s < grid.child_count(); ++s) {
        self(self, grid.child(q, s), current, next_generation);
      }
    };
    descend(descend, grid.root(), std::nullopt, 0);
    forest.generations = std::move(generations);
    forests.push_back(std::move(forest));
  }
  return forests;
}

double carleson_ratio(const PrincipalForest& forest, const Weight& sigma,
                      const Cube& q0) {
  return carleson_ratio(forest, sigma, q0, ainfty(sigma));
}

double carleson_ratio(const PrincipalForest& forest, const Weight& sigma,
                      const Cube& q0, double ainfty_sigma) {
  const Grid& grid = sigma.grid();
  double sum = 0.0;
  for (const auto& gen : forest.generations) {
    for (const Cube& p : gen) {
      if (!grid.contains(q0, p)) {
        throw std::invalid_argument("principal cube outside the base cube");
      }
      sum += sigma.measure(p);
    }
  }
  return sum / (ainfty_sigma * sigma.measure(q0));
}

DecayProfile decay_profile(const HaarShift& restricted, const Weight& sigma,
                           const Weight& w, const Cube& principal,
                           std::span<const double> thresholds) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < 0.0 ||
        (i > 0 && thresholds[i] <= thresholds[i - 1])) {
      throw std::invalid_argument(
          "thresholds must be nonnegative and strictly increasing");
    }
  }
  const Grid& grid = restricted.grid();
  const GridFunction image = restricted.apply(sigma.density());
  const double unit =
      sigma.measure(principal) / grid.volume(principal);
  const CellRange range = grid.cell_range(principal);
  const double cellvol = grid.cell_volume();

  DecayProfile profile;
  profile.level_sets.reserve(thresholds.size());
  std::vector<std::pair<double, double>> fit_points;
  for (const double t : thresholds) {
    double measure = 0.0;
    for (std::size_t c = range.begin; c < range.end; ++c) {
      if (std::abs(image[c]) > t * unit) {
        measure += w.density()[c] * cellvol;
      }
    }
    profile.level_sets.emplace_back(t, measure);
    if (measure > 0.0) fit_points.emplace_back(t, std::log(measure));
  }

  if (fit_points.size() >= 2) {
    // Ordinary least squares on log-measure; rate is minus the slope.
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (const auto& [t, y] : fit_points) {
      st += t;
      sy += y;
      stt += t * t;
      sty += t * y;
    }
    const double n = static_cast<double>(fit_points.size());
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    profile.fitted_rate = -slope;
  }
  return profile;
}

double testing_proposition_ratio(const HaarShift& shift, const Weight& w,
                                 const Weight& sigma, double p, const Cube& q) {
  const double ap = ap_two_weight(w, sigma, p).value;
  const double ainfty_sigma = ainfty(sigma);
  const double num = testing_ratio(shift, w, sigma, p, q, false) *
                     std::pow(sigma.measure(q), 1.0 / p);
  const double denom =
      (1.0 + shift.complexity()) *
      std::pow(ap * ainfty_sigma * sigma.measure(q), 1.0 / p);
  return num / denom;
}

std::vector<double> testing_proposition_ratios(const HaarShift& shift,
                                               const Weight& w,
                                               const Weight& sigma, double p) {
  const Grid& grid = shift.grid();
  const double ap = ap_two_weight(w, sigma, p).value;
  const double ainfty_sigma = ainfty(sigma);
  const double kappa_factor = 1.0 + shift.complexity();
  std::vector<double> out(grid.cube_count());
  for (std::size_t id = 0; id < grid.cube_count(); ++id) {
    const Cube q = grid.cube_from_id(id);
    const GridFunction image = shift.apply(sigma.density().restricted(q));
    const double num = lp_norm(image.restricted(q), w, p);
    out[id] = num / (kappa_factor *
                     std::pow(ap * ainfty_sigma * sigma.measure(q), 1.0 / p));
  }
  return out;
}

}  // namespace dyadic
