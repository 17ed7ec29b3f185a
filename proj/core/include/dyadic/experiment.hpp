// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dyadic/shift.hpp"
#include "dyadic/weight.hpp"

namespace dyadic {

/// Recipe for a weight family member. Power weights average x1^alpha exactly
/// over each cell; step weights expand a block pattern; randomized weights
/// draw log-uniform cell values from a seeded generator.
struct WeightSpec {
  enum class Kind { power, step, randomized };

  Kind kind = Kind::power;
  double alpha = 0.0;            // power
  std::vector<double> values;    // step pattern (length divides cell count)
  std::uint64_t seed = 0;        // randomized
  double roughness = 1.0;        // randomized: log-range half-width
  std::string id;                // synthesized when empty
};

std::string weight_spec_id(const WeightSpec& spec);
Weight generate_weight(const WeightSpec& spec, const Grid& grid);

/// Deterministic probe family: the constant, a ladder of corner-cube
/// indicators, then seeded random cube combinations, child-constant packets
/// and cell noise. All probes are nonzero; nonnegative mode keeps them >= 0.
std::vector<GridFunction> make_probes(const Grid& grid, int count,
                                      std::uint64_t seed, bool nonnegative);

/// Power-iteration maximizer of ||S(f sigma)||_{L2(w)} / ||f||_{L2(sigma)};
/// returned with unit sigma-norm. Used as the sharpest probe at p = 2.
GridFunction l2_ratio_maximizer(const HaarShift& shift, const Weight& w,
                                const Weight& sigma, int iterations = 160);

struct WeightPairStats {
  double ap = 1.0;
  double ainfty_w = 1.0;
  double ainfty_sigma = 1.0;
};

WeightPairStats weight_pair_stats(const Weight& w, const Weight& sigma,
                                  double p);

/// Single-probe ratio of the mixed-characteristic inequality:
///   ||S_max(f sigma)||_{L^p(w)} /
///   (ap^(1/p) (ainfty_w^(1/p') + ainfty_sigma^(1/p)) ||f||_{L^p(sigma)}).
double main_inequality_ratio(const HaarShift& shift, const Weight& w,
                             const Weight& sigma, double p,
                             const GridFunction& probe,
                             const WeightPairStats& stats);
double main_inequality_ratio(const HaarShift& shift, const Weight& w,
                             const Weight& sigma, double p,
                             const GridFunction& probe);

/// Builds the ancestor-averaging positive shift from a sparse family,
/// dropping cubes too shallow to have an i-th ancestor.
HaarShift positive_shift_from_family(const Grid& grid,
                                     std::span<const Cube> family, int offset);

struct PositiveShiftParams {
  enum class Source { lerner, explicit_cubes };

  Source source = Source::lerner;
  int i_min = 1;
  int i_max = 1;
  std::uint64_t family_seed = 1;  // lerner: seed of the generating function
  std::vector<Cube> cubes;        // explicit source
};

struct ExperimentConfig {
  Grid grid{1, 8};
  std::vector<double> p_values{2.0};
  std::optional<HaarShift> explicit_shift;
  std::optional<PositiveShiftParams> positive_shift;
  std::vector<WeightSpec> weights;
  bool two_weight = false;                // false: sigma = dual_weight(w, p)
  std::optional<WeightSpec> sigma_spec;   // used when two_weight
  int probe_count = 8;
  std::uint64_t seed = 1;
  std::string output_path = "results";
  std::string format = "csv";             // csv | json | both
};

/// One sweep point. Fields a run does not measure stay zero; everything
/// emitted is finite.
struct ResultRecord {
  std::string weight_id;
  double p = 2.0;
  std::string shift_id;
  int i = 0;
  double ap = 0.0;
  double ainfty_w = 0.0;
  double ainfty_sigma = 0.0;
  double sp = 0.0;
  double sp_star = 0.0;
  double r = 0.0;
  double rho = 0.0;
  double dom_c = 0.0;
  double decay_c = 0.0;
};

/// Mixed-bound ratio R per (weight, p, shift instance), maximized over the
/// probe family plus the p=2 maximizer.
std::vector<ResultRecord> run_main_inequality(const ExperimentConfig& config);

struct Prop4Fit {
  double p = 2.0;
  double slope = 0.0;     // least squares of rho(i) against i
  double exponent = 0.0;  // least squares of log rho against log i
};

struct Prop4Result {
  std::vector<ResultRecord> records;
  std::vector<Prop4Fit> fits;
};

/// Unweighted norm-ratio growth of the ancestor-averaging shifts over the
/// configured i range.
Prop4Result run_prop4(const ExperimentConfig& config);

/// Full table: characteristics, testing constants, R, rho, domination
/// constant of the family-generating function, and a fitted decay rate.
std::vector<ResultRecord> run_sweep(const ExperimentConfig& config);

enum class EmitFormat { csv, json };

/// Writes records to path. CSV column order is fixed:
/// weight_id,p,shift_id,i,ap,ainfty_w,ainfty_sigma,Sp,SpStar,R,rho,domC,decay_c
/// with values at 17 significant digits; the JSON form mirrors the fields.
/// Output bytes are a pure function of the records.
void emit(std::span<const ResultRecord> records, EmitFormat format,
          const std::string& path);

/// Invariant scan used by verification mode; returns human-readable
/// violations (empty = pass).
std::vector<std::string> verify_records(std::span<const ResultRecord> records);

}  // namespace dyadic
