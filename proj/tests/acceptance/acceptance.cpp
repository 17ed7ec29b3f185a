// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exit code is the number of failed criteria. Stated runtime
// budgets are enforced. Calibrated thresholds are frozen constants here;
// re-runs must stay under them without re-tuning.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dyadic/experiment.hpp"
#include "dyadic/lerner.hpp"
#include "dyadic/rng.hpp"
#include "dyadic/serialization.hpp"
#include "dyadic/shift.hpp"
#include "dyadic/testing.hpp"
#include "dyadic/weight.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace dyadic;
using dyadic::testsupport::dense_adjoint_apply;
using dyadic::testsupport::dense_apply;
using dyadic::testsupport::dense_maximal_truncation;
using dyadic::testsupport::dense_truncated_apply;
using dyadic::testsupport::martingale_transform;
using dyadic::testsupport::random_function;
using dyadic::testsupport::random_lerner_family;
using dyadic::testsupport::random_shift;

namespace {

// Frozen calibration constants. Sources: scale numerator and the lemma cap
// measured at d=1, L=10 (see core/include/dyadic/shift.hpp for the former);
// the proposition threshold and carleson cap measured at L=8 with the seeds
// used below, then re-checked at L=10/L=12 without adjustment.
constexpr double kLemmaCap = 1.0;           // measured max 0.27 over kappa 1..3
constexpr double kPropositionCap = 0.45;    // measured max 0.365 at L=8
constexpr double kCarlesonCap = 1.5;        // measured max 1.08

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double worst = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    worst = std::max(worst, std::abs(a[c] - b[c]));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// 1. Dense-matrix oracle equivalence for every evaluation path.
void criterion_oracle_equivalence(Outcome& out) {
  SplitMix64 rng(101);
  std::vector<std::pair<std::string, HaarShift>> shifts;
  for (int depth = 2; depth <= 6; ++depth) {
    const Grid g(1, depth);
    shifts.emplace_back("martingale L" + std::to_string(depth),
                        martingale_transform(g));
  }
  {
    SplitMix64 sign_rng(7);
    shifts.emplace_back("signed martingale",
                        martingale_transform(Grid(1, 6), &sign_rng));
  }
  for (int rep = 0; rep < 6; ++rep) {
    const Grid g(1, 5 + rep % 2);
    const int m = static_cast<int>(rng.uniform_int(0, 2));
    const int n = static_cast<int>(rng.uniform_int(0, 2));
    shifts.emplace_back("random(" + std::to_string(m) + "," +
                            std::to_string(n) + ")",
                        random_shift(g, rng, m, n));
  }
  for (int i = 1; i <= 3; ++i) {
    const Grid g(1, 6);
    std::vector<Cube> family;
    for (const Cube& q : random_lerner_family(g, rng)) {
      if (q.level >= i) family.push_back(q);
    }
    if (family.empty()) continue;
    shifts.emplace_back("positive S" + std::to_string(i),
                        positive_shift_from_family(g, family, i));
  }
  {
    const Grid g(1, 4);
    const Cube root = g.root();
    std::vector<double> ones(2, 1.0);
    shifts.emplace_back(
        "root averaging",
        HaarShift(g, 0, 0, {{root, {{root, root, ones, ones}}}}));
  }

  double worst = 0.0;
  int inputs = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto& [label, shift] = shifts[rep % shifts.size()];
    const Grid& g = shift.grid();
    const GridFunction f = random_function(g, rng);
    ++inputs;

    const double d1 = max_abs_diff(shift.apply(f), dense_apply(shift, f));
    const double d2 =
        max_abs_diff(shift.adjoint_apply(f), dense_adjoint_apply(shift, f));
    const int b = static_cast<int>(rng.uniform_int(0, g.depth()));
    const int a = static_cast<int>(rng.uniform_int(0, b));
    const double eps = std::ldexp(1.0, -b);
    const double ups = std::ldexp(1.0, -a);
    const double d3 = max_abs_diff(shift.truncated_apply(f, eps, ups),
                                   dense_truncated_apply(shift, f, eps, ups));
    const double d4 = max_abs_diff(shift.maximal_truncation(f),
                                   dense_maximal_truncation(shift, f));
    const double d = std::max({d1, d2, d3, d4});
    worst = std::max(worst, d);
    if (d > 1e-12) {
      out.fail("mismatch " + fmt(d) + " on " + label);
      return;
    }
  }
  out.note("max deviation " + fmt(worst) + " over " +
           std::to_string(inputs) + " inputs");
}

// ---------------------------------------------------------------------------
// 2. Duality.
void criterion_duality(Outcome& out) {
  SplitMix64 rng(202);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const Grid g = rep % 3 == 2 ? Grid(2, 3) : Grid(1, 5);
    const int m = static_cast<int>(rng.uniform_int(0, 2));
    const int n = static_cast<int>(rng.uniform_int(0, 2));
    const HaarShift s = random_shift(g, rng, m, n);
    const GridFunction f = random_function(g, rng);
    const GridFunction h = random_function(g, rng);
    const double gap =
        std::abs(inner_product(s.apply(f), h) -
                 inner_product(f, s.adjoint_apply(h)));
    const double budget = 1e-12 * l2_norm(f) * l2_norm(h);
    worst = std::max(worst, budget > 0 ? gap / budget : 0.0);
    if (gap > budget) {
      out.fail("duality gap " + fmt(gap) + " above budget " + fmt(budget));
      return;
    }
  }
  out.note("worst gap at " + fmt(worst) + " of budget");
}

// ---------------------------------------------------------------------------
// 3. Worked weight constants.
void criterion_weight_constants(Outcome& out) {
  const Grid g(1, 2);
  const Weight w{GridFunction(g, {2, 2, 1, 1})};
  const Weight sigma = dual_weight(w, 2.0);

  const auto [ap, cube] = ap_two_weight(w, sigma, 2.0);
  if (!close(ap, 9.0 / 8.0, 1e-12)) out.fail("[w,sigma]_A2 = " + fmt(ap));
  if (!(cube == g.root())) out.fail("A2 attaining cube is not the root");
  if (!close(ainfty(w), 7.0 / 6.0, 1e-12)) {
    out.fail("ainfty(step) = " + fmt(ainfty(w)));
  }

  const Weight ones = Weight::uniform(g);
  if (!close(ap_two_weight(ones, ones, 2.0).value, 1.0, 1e-12)) {
    out.fail("constant weight A2 is not 1");
  }
  if (!close(ainfty(ones), 1.0, 1e-12)) out.fail("constant ainfty is not 1");
  if (!close(ainfty(Weight::uniform(g, 42.0)), 1.0, 1e-12)) {
    out.fail("scaling changes ainfty");
  }
  for (const double p : {1.5, 2.0, 3.0}) {
    const Weight d = dual_weight(ones, p);
    for (std::size_t c = 0; c < d.density().size(); ++c) {
      if (!close(d.density()[c], 1.0, 1e-12)) {
        out.fail("dual of unit weight is not 1");
        break;
      }
    }
    if (!close(ap_two_weight(ones, d, p).value, 1.0, 1e-12)) {
      out.fail("unit characteristics differ from 1 at p=" + fmt(p));
    }
  }
  out.note("A2 = 9/8 and Fujii-Wilson = 7/6 reproduced");
}

// ---------------------------------------------------------------------------
// 4. Stopping-family invariants at scale.
bool family_invariants_exact(const Grid& g, const SparseFamily& family,
                             std::string* why) {
  std::vector<std::vector<std::size_t>> prefixes;
  for (const auto& gen : family.generations) {
    std::vector<std::size_t> prefix(g.cell_count() + 1, 0);
    std::vector<bool> mask(g.cell_count(), false);
    for (const Cube& q : gen) {
      const CellRange r = g.cell_range(q);
      for (std::size_t c = r.begin; c < r.end; ++c) {
        if (mask[c]) {
          *why = "generation cubes overlap";
          return false;
        }
        mask[c] = true;
      }
    }
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      prefix[c + 1] = prefix[c] + (mask[c] ? 1u : 0u);
    }
    prefixes.push_back(std::move(prefix));
  }
  for (std::size_t k = 0; k + 1 < prefixes.size(); ++k) {
    for (const Cube& q : family.generations[k + 1]) {
      const CellRange r = g.cell_range(q);
      // nesting: every next-generation cube sits inside the previous union
      if (prefixes[k][r.end] - prefixes[k][r.begin] != r.size()) {
        *why = "next generation escapes the previous union";
        return false;
      }
    }
    for (const Cube& q : family.generations[k]) {
      const CellRange r = g.cell_range(q);
      const std::size_t hit = prefixes[k + 1][r.end] - prefixes[k + 1][r.begin];
      if (2 * hit > r.size()) {
        *why = "half-measure violated";
        return false;
      }
    }
  }
  return true;
}

void criterion_lerner_invariants(Outcome& out) {
  SplitMix64 rng(404);
  std::string why;

  double max_c_l5 = 0.0, max_c_l10 = 0.0;
  {
    const Grid g5(1, 5);
    for (int rep = 0; rep < 500; ++rep) {
      const GridFunction f = random_function(g5, rng);
      max_c_l5 = std::max(max_c_l5, domination_constant(f, g5.root()));
    }
  }
  {
    const Grid g10(1, 10);
    for (int rep = 0; rep < 500; ++rep) {
      const GridFunction f = random_function(g10, rng);
      const SparseFamily family = sparse_decomposition(f, g10.root());
      if (!family_invariants_exact(g10, family, &why)) {
        out.fail(why + " (d=1)");
        return;
      }
      const double c = domination_constant(f, g10.root());
      if (!std::isfinite(c)) {
        out.fail("non-finite domination constant (d=1)");
        return;
      }
      max_c_l10 = std::max(max_c_l10, c);
    }
  }
  {
    const Grid g2(2, 5);
    for (int rep = 0; rep < 100; ++rep) {
      const GridFunction f = random_function(g2, rng);
      const SparseFamily family = sparse_decomposition(f, g2.root());
      if (!family_invariants_exact(g2, family, &why)) {
        out.fail(why + " (d=2)");
        return;
      }
      if (!std::isfinite(domination_constant(f, g2.root()))) {
        out.fail("non-finite domination constant (d=2)");
        return;
      }
    }
  }
  if (max_c_l10 > 2.0 * max_c_l5) {
    out.fail("depth instability: " + fmt(max_c_l10) + " vs " + fmt(max_c_l5));
    return;
  }
  out.note("max domination " + fmt(max_c_l10) + " at L=10, " + fmt(max_c_l5) +
           " at L=5");
}

// ---------------------------------------------------------------------------
// 5. Oscillation lemma for maximal truncations.
void criterion_oscillation_lemma(Outcome& out) {
  SplitMix64 rng(505);
  const Grid g(1, 6);
  std::string recorded;
  for (const int kappa : {1, 2, 3}) {
    double c_kappa = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      int m = static_cast<int>(rng.uniform_int(0, kappa));
      int n = static_cast<int>(rng.uniform_int(0, kappa));
      if (std::max({m, n, 1}) != kappa) {
        (rng.uniform() < 0.5 ? m : n) = kappa;
      }
      const HaarShift s = random_shift(g, rng, m, n, false, 0.4, 2);
      const GridFunction f = random_function(g, rng);
      const GridFunction sf = s.maximal_truncation(f);
      const Cube q = dyadic::testsupport::random_cube(g, rng);

      const double lhs = oscillation(sf, q, 0.25);
      const GridFunction af = abs(f);
      double rhs = kappa * af.average(q);
      // ancestor averages, dropping the terms that would pass the root
      for (int i = 1; i <= kappa && i <= q.level; ++i) {
        rhs += af.average(g.ancestor(q, i));
      }
      if (lhs == 0.0) continue;
      if (rhs == 0.0) {
        out.fail("zero right side with nonzero oscillation");
        return;
      }
      c_kappa = std::max(c_kappa, lhs / rhs);
    }
    if (c_kappa > kLemmaCap) {
      out.fail("C(" + std::to_string(kappa) + ") = " + fmt(c_kappa) +
               " above cap " + fmt(kLemmaCap));
      return;
    }
    if (!recorded.empty()) recorded += ", ";
    recorded += "C(" + std::to_string(kappa) + ")=" + fmt(c_kappa);
  }
  out.note(recorded + " under cap " + fmt(kLemmaCap));
}

// ---------------------------------------------------------------------------
// 6. Norm growth of the ancestor-averaging shifts.
void criterion_prop4_growth(Outcome& out) {
  ExperimentConfig config;
  config.grid = Grid(1, 10);
  config.p_values = {1.5, 2.0, 3.0};
  PositiveShiftParams params;
  params.source = PositiveShiftParams::Source::lerner;
  params.family_seed = 606;
  params.i_min = 1;
  params.i_max = 5;
  config.positive_shift = params;
  config.probe_count = 6;
  config.seed = 607;

  const Prop4Result result = run_prop4(config);
  std::string detail;
  for (const Prop4Fit& fit : result.fits) {
    if (!(fit.exponent <= 1.3)) {
      out.fail("growth exponent " + fmt(fit.exponent) + " at p=" +
               fmt(fit.p));
      return;
    }
    if (!detail.empty()) detail += ", ";
    detail += "p=" + fmt(fit.p) + ": exp " + fmt(fit.exponent);
  }
  out.note(detail);
}

// ---------------------------------------------------------------------------
// Shared configuration for criteria 7 and 10.
std::vector<WeightSpec> testing_weight_family() {
  std::vector<WeightSpec> weights;
  for (const double a : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    weights.push_back({.kind = WeightSpec::Kind::power, .alpha = a});
  }
  weights.push_back(
      {.kind = WeightSpec::Kind::step, .values = {2, 2, 1, 1}});
  weights.push_back(
      {.kind = WeightSpec::Kind::step, .values = {8, 1, 1, 2, 4, 1, 1, 1}});
  return weights;
}

std::vector<std::pair<std::string, HaarShift>> testing_shift_family(
    const Grid& grid) {
  SplitMix64 rng(grid.depth() * 1000 + 777);
  std::vector<std::pair<std::string, HaarShift>> shifts;
  const std::vector<Cube> family = random_lerner_family(grid, rng);
  for (int i = 1; i <= 2; ++i) {
    std::vector<Cube> filtered;
    for (const Cube& q : family) {
      if (q.level >= i) filtered.push_back(q);
    }
    shifts.emplace_back("S" + std::to_string(i),
                        positive_shift_from_family(grid, filtered, i));
  }
  for (const int kappa : {1, 2}) {
    shifts.emplace_back("random k" + std::to_string(kappa),
                        random_shift(grid, rng, kappa, kappa, false, 0.5, 2));
  }
  return shifts;
}

void criterion_testing_proposition(Outcome& out) {
  double measured_l8 = 0.0, measured_l10 = 0.0;
  for (const int depth : {8, 10}) {
    const Grid grid(1, depth);
    const auto shifts = testing_shift_family(grid);
    double worst = 0.0;
    for (const WeightSpec& wspec : testing_weight_family()) {
      const Weight w = generate_weight(wspec, grid);
      const Weight sigma = dual_weight(w, 2.0);
      for (const auto& [label, shift] : shifts) {
        if (shift.components().empty()) continue;
        const auto ratios = testing_proposition_ratios(shift, w, sigma, 2.0);
        const double m = *std::max_element(ratios.begin(), ratios.end());
        worst = std::max(worst, m);
        if (m > kPropositionCap) {
          out.fail("ratio " + fmt(m) + " above " + fmt(kPropositionCap) +
                   " for " + label + "/" + weight_spec_id(wspec) + " at L=" +
                   std::to_string(depth));
          return;
        }
      }
    }
    (depth == 8 ? measured_l8 : measured_l10) = worst;
  }
  out.note("max ratio " + fmt(measured_l8) + " at L=8, " + fmt(measured_l10) +
           " at L=10, cap " + fmt(kPropositionCap));
}

// ---------------------------------------------------------------------------
// 8. Distributional decay on principal-cube classes.
void criterion_decay(Outcome& out) {
  const Grid grid(1, 8);
  SplitMix64 rng(808);
  const std::vector<Cube> family = random_lerner_family(grid, rng);
  std::vector<Cube> cubes;
  for (std::size_t id = 0; id < grid.cube_count(); ++id) {
    cubes.push_back(grid.cube_from_id(id));
  }
  const std::vector<double> thresholds{1, 2, 3, 4, 5, 6, 7, 8};

  int classes_checked = 0, rates_fitted = 0;
  for (const double alpha : {0.5, 0.9}) {
    const Weight w = generate_weight(
        {.kind = WeightSpec::Kind::power, .alpha = alpha}, grid);
    const Weight& sigma = w;  // same weight on both sides
    for (int i = 1; i <= 2; ++i) {
      std::vector<Cube> filtered;
      for (const Cube& q : family) {
        if (q.level >= i) filtered.push_back(q);
      }
      const HaarShift shift = positive_shift_from_family(grid, filtered, i);
      if (shift.components().empty()) continue;
      const auto layer_classes = scale_layers(cubes, shift.complexity());
      for (std::size_t lam = 0; lam < layer_classes.size(); ++lam) {
        if (layer_classes[lam].empty()) continue;
        for (const auto& forest :
             build_principal_forest(layer_classes[lam], w, sigma, 2.0,
                                    static_cast<int>(lam))) {
          for (const Cube& principal : forest.principals()) {
            const auto members = forest.members_of(principal, grid);
            const HaarShift restricted = shift.restricted_to(members);
            if (restricted.components().empty()) continue;
            const DecayProfile profile =
                decay_profile(restricted, sigma, w, principal, thresholds);
            ++classes_checked;
            for (std::size_t t = 1; t < profile.level_sets.size(); ++t) {
              if (profile.level_sets[t].second >
                  profile.level_sets[t - 1].second) {
                out.fail("level-set measures increase in t");
                return;
              }
            }
            std::size_t nonempty = 0;
            for (const auto& [t, measure] : profile.level_sets) {
              nonempty += measure > 0.0 ? 1u : 0u;
            }
            if (nonempty >= 3) {
              if (!profile.fitted_rate || !(*profile.fitted_rate > 0.0)) {
                out.fail("non-positive fitted rate with " +
                         std::to_string(nonempty) + " nonempty sets");
                return;
              }
              ++rates_fitted;
            }
          }
        }
      }
    }
  }
  out.note(std::to_string(classes_checked) + " classes checked, " +
           std::to_string(rates_fitted) + " positive rates fitted");
}

// ---------------------------------------------------------------------------
// 9. Mixed-characteristic main inequality across a three-decade sweep.
void criterion_main_inequality(Outcome& out) {
  ExperimentConfig config;
  config.grid = Grid(1, 12);
  config.p_values = {2.0};
  PositiveShiftParams params;
  params.source = PositiveShiftParams::Source::lerner;
  params.family_seed = 909;
  params.i_min = 1;
  params.i_max = 2;
  config.positive_shift = params;
  config.weights.clear();
  for (const double a : {0.0, 0.5, 0.9, 0.99, 0.999, 0.9999}) {
    config.weights.push_back({.kind = WeightSpec::Kind::power, .alpha = a});
  }
  config.probe_count = 6;
  config.seed = 910;

  const auto records = run_main_inequality(config);
  double ap_min = 1e300, ap_max = 0.0;
  std::map<std::string, std::pair<double, double>> spread;
  for (const auto& rec : records) {
    if (!std::isfinite(rec.r)) {
      out.fail("non-finite ratio for " + rec.weight_id);
      return;
    }
    ap_min = std::min(ap_min, rec.ap);
    ap_max = std::max(ap_max, rec.ap);
    if (rec.ap >= 10.0) {
      auto [it, fresh] =
          spread.try_emplace(rec.shift_id, rec.r, rec.r);
      if (!fresh) {
        it->second.first = std::min(it->second.first, rec.r);
        it->second.second = std::max(it->second.second, rec.r);
      }
    }
  }
  if (ap_max / ap_min < 1e3) {
    out.fail("characteristic span " + fmt(ap_max / ap_min) +
             " below three decades");
    return;
  }
  for (const auto& [shift_id, mm] : spread) {
    if (mm.second > 2.0 * mm.first) {
      out.fail("ratio spread " + fmt(mm.second / mm.first) + " for " +
               shift_id);
      return;
    }
  }
  std::string detail = "ap in [" + fmt(ap_min) + ", " + fmt(ap_max) + "]";
  for (const auto& [shift_id, mm] : spread) {
    detail += ", " + shift_id + " spread " + fmt(mm.second / mm.first);
  }
  out.note(detail);
}

// ---------------------------------------------------------------------------
// 10. Principal forests behind criteria 7 and 9.
void criterion_forests(Outcome& out) {
  int forests_checked = 0;
  double carleson_max = 0.0;
  const auto check_configuration = [&](const Grid& grid, const Weight& w,
                                       const Weight& sigma, double p,
                                       int kappa) -> bool {
    std::vector<Cube> cubes;
    cubes.reserve(grid.cube_count());
    for (std::size_t id = 0; id < grid.cube_count(); ++id) {
      cubes.push_back(grid.cube_from_id(id));
    }
    const double ap_root = std::pow(ap_two_weight(w, sigma, p).value, 1.0 / p);
    const double ai = ainfty(sigma);
    const auto classes = scale_layers(cubes, kappa);
    for (std::size_t lam = 0; lam < classes.size(); ++lam) {
      if (classes[lam].empty()) continue;
      for (const auto& forest :
           build_principal_forest(classes[lam], w, sigma, p,
                                  static_cast<int>(lam))) {
        ++forests_checked;
        if (std::ldexp(1.0, forest.layer) > ap_root * (1.0 + 1e-12)) {
          out.fail("layer bound violated: 2^" +
                   std::to_string(forest.layer) + " vs " + fmt(ap_root));
          return false;
        }
        // Super-exponential chains through the explicit stopping parents.
        std::map<std::size_t, const Cube*> principal_at;
        for (const auto& gen : forest.generations) {
          for (const Cube& q : gen) principal_at[grid.cube_id(q)] = &q;
        }
        const auto density = [&](const Cube& q) {
          return sigma.measure(q) / grid.volume(q);
        };
        for (std::size_t n = 1; n < forest.generations.size(); ++n) {
          for (const Cube& child : forest.generations[n]) {
            const Cube* parent = nullptr;
            for (Cube walk = child; walk.level > 0;) {
              walk = grid.ancestor(walk, 1);
              const auto it = principal_at.find(grid.cube_id(walk));
              if (it != principal_at.end()) {
                parent = it->second;
                break;
              }
            }
            if (parent == nullptr) {
              out.fail("chain cube without a stopping parent");
              return false;
            }
            if (!(density(child) > 2.0 * density(*parent))) {
              out.fail("sigma-density fails to double along a chain");
              return false;
            }
          }
        }
        const double ratio = carleson_ratio(forest, sigma, grid.root(), ai);
        carleson_max = std::max(carleson_max, ratio);
        if (ratio > kCarlesonCap) {
          out.fail("carleson ratio " + fmt(ratio) + " above cap " +
                   fmt(kCarlesonCap));
          return false;
        }
      }
    }
    return true;
  };

  // Criterion-7 configurations at L=8.
  {
    const Grid grid(1, 8);
    for (const WeightSpec& wspec : testing_weight_family()) {
      const Weight w = generate_weight(wspec, grid);
      const Weight sigma = dual_weight(w, 2.0);
      for (const int kappa : {1, 2}) {
        if (!check_configuration(grid, w, sigma, 2.0, kappa)) return;
      }
    }
  }
  // Criterion-9 configurations at L=12.
  {
    const Grid grid(1, 12);
    for (const double a : {0.0, 0.5, 0.9, 0.99, 0.999, 0.9999}) {
      const Weight w = generate_weight(
          {.kind = WeightSpec::Kind::power, .alpha = a}, grid);
      const Weight sigma = dual_weight(w, 2.0);
      for (const int kappa : {1, 2}) {
        if (!check_configuration(grid, w, sigma, 2.0, kappa)) return;
      }
    }
  }
  out.note(std::to_string(forests_checked) + " forests, carleson max " +
           fmt(carleson_max) + " under cap " + fmt(kCarlesonCap));
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;  // 0 = no stated budget
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", 10.0, criterion_oracle_equivalence},
      {2, "duality", 0.0, criterion_duality},
      {3, "weight constants", 0.0, criterion_weight_constants},
      {4, "stopping-family invariants", 60.0, criterion_lerner_invariants},
      {5, "oscillation lemma", 0.0, criterion_oscillation_lemma},
      {6, "norm growth in the ancestor offset", 0.0, criterion_prop4_growth},
      {7, "local testing proposition", 0.0, criterion_testing_proposition},
      {8, "distributional decay", 0.0, criterion_decay},
      {9, "main inequality sweep", 300.0, criterion_main_inequality},
      {10, "principal forests", 0.0, criterion_forests},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      criterion.run(outcome);
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criterion.budget_seconds > 0 && elapsed > criterion.budget_seconds) {
      outcome.fail("runtime " + fmt(elapsed) + "s over budget " +
                   fmt(criterion.budget_seconds) + "s");
    }
    std::printf("[%2d] %s  %-34s %s (%.1fs)\n", criterion.id,
                outcome.pass ? "PASS" : "FAIL", criterion.name.c_str(),
                outcome.detail.c_str(), elapsed);
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
