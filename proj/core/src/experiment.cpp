// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#include "dyadic/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "dyadic/lerner.hpp"
#include "dyadic/rng.hpp"
#include "dyadic/serialization.hpp"
#include "dyadic/testing.hpp"

namespace dyadic {

namespace {

std::string sanitize_id(std::string id) {
  for (char& c : id) {
    if (c == ',' || c == '\n' || c == '\r') c = '_';
  }
  return id;
}

double least_squares_slope(std::span<const double> x,
                           std::span<const double> y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

GridFunction random_signed_function(const Grid& grid, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> vals(grid.cell_count());
  for (double& v : vals) v = rng.uniform(-1.0, 1.0);
  return GridFunction(grid, std::move(vals));
}

struct ShiftInstance {
  std::string id;
  int i = 0;
  HaarShift shift;
};

std::vector<ShiftInstance> shift_instances(const ExperimentConfig& config) {
  std::vector<ShiftInstance> out;
  if (config.explicit_shift) {
    out.push_back({"custom", 0, *config.explicit_shift});
  }
  if (config.positive_shift) {
    const auto& params = *config.positive_shift;
    if (params.i_min < 1 || params.i_max < params.i_min) {
      throw std::invalid_argument("invalid ancestor offset range");
    }
    std::vector<Cube> family;
    if (params.source == PositiveShiftParams::Source::lerner) {
      const GridFunction f =
          random_signed_function(config.grid, params.family_seed);
      family = sparse_decomposition(f, config.grid.root()).flattened();
    } else {
      family = params.cubes;
    }
    for (int i = params.i_min; i <= params.i_max; ++i) {
      out.push_back(
          {"S" + std::to_string(i), i,
           positive_shift_from_family(config.grid, family, i)});
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("config names no shift to run");
  }
  return out;
}

double family_domination_constant(const ExperimentConfig& config) {
  if (!config.positive_shift ||
      config.positive_shift->source != PositiveShiftParams::Source::lerner) {
    return 0.0;
  }
  const GridFunction f =
      random_signed_function(config.grid, config.positive_shift->family_seed);
  return domination_constant(f, config.grid.root());
}

}  // namespace

std::string weight_spec_id(const WeightSpec& spec) {
  if (!spec.id.empty()) return sanitize_id(spec.id);
  char buf[64];
  switch (spec.kind) {
    case WeightSpec::Kind::power:
      std::snprintf(buf, sizeof buf, "power_%g", spec.alpha);
      break;
    case WeightSpec::Kind::step:
      std::snprintf(buf, sizeof buf, "step_%zu", spec.values.size());
      break;
    case WeightSpec::Kind::randomized:
      std::snprintf(buf, sizeof buf, "rand_%llu_%g",
                    static_cast<unsigned long long>(spec.seed),
                    spec.roughness);
      break;
  }
  return buf;
}

Weight generate_weight(const WeightSpec& spec, const Grid& grid) {
  std::vector<double> vals(grid.cell_count());
  switch (spec.kind) {
    case WeightSpec::Kind::power: {
      if (spec.alpha <= -1.0) {
        throw std::domain_error("power weight exponent <= -1 (divergent mass)");
      }
      const double a1 = spec.alpha + 1.0;
      const double h = std::ldexp(1.0, -grid.depth());
      for (std::size_t cell = 0; cell < vals.size(); ++cell) {
        const Cube leaf = grid.cell_cube(cell);
        const double lo = leaf.index[0] * h;
        const double hi = lo + h;
        vals[cell] = spec.alpha == 0.0
                         ? 1.0
                         : (std::pow(hi, a1) - std::pow(lo, a1)) / (a1 * h);
      }
      break;
    }
    case WeightSpec::Kind::step: {
      const std::size_t m = spec.values.size();
      if (m == 0 || grid.cell_count() % m != 0) {
        throw std::invalid_argument(
            "step pattern length must divide the cell count");
      }
      const std::size_t block = grid.cell_count() / m;
      for (std::size_t cell = 0; cell < vals.size(); ++cell) {
        vals[cell] = spec.values[cell / block];
      }
      break;
    }
    case WeightSpec::Kind::randomized: {
      SplitMix64 rng(spec.seed);
      for (double& v : vals) {
        v = std::exp(rng.uniform(-spec.roughness, spec.roughness));
      }
      break;
    }
  }
  return Weight(GridFunction(grid, std::move(vals)));
}

std::vector<GridFunction> make_probes(const Grid& grid, int count,
                                      std::uint64_t seed, bool nonnegative) {
  std::vector<GridFunction> probes;
  probes.push_back(GridFunction::constant(grid, 1.0));
  for (int level = 1; level <= grid.depth(); ++level) {
    probes.push_back(GridFunction::indicator(grid, Cube{level, {0, 0}}));
  }
  SplitMix64 rng(seed);
  for (int k = 0; k < count; ++k) {
    switch (k % 3) {
      case 0: {
        // Sum of a few cube indicators.
        GridFunction f = GridFunction::constant(grid, 0.0);
        for (int j = 0; j < 3; ++j) {
          const int level =
              static_cast<int>(rng.uniform_int(0, grid.depth()));
          Cube q{level, {0, 0}};
          for (int a = 0; a < grid.dimension(); ++a) {
            q.index[static_cast<std::size_t>(a)] = static_cast<std::uint32_t>(
                rng.uniform_int(0, (1 << level) - 1));
          }
          const double coeff = nonnegative ? rng.uniform(0.25, 1.0)
                                           : rng.uniform(-1.0, 1.0);
          GridFunction ind = GridFunction::indicator(grid, q);
          ind *= coeff;
          f += ind;
        }
        if (sup_norm(f) == 0.0) f = GridFunction::constant(grid, 1.0);
        probes.push_back(std::move(f));
        break;
      }
      case 1: {
        // Child-constant packet on a random cube.
        const int level =
            static_cast<int>(rng.uniform_int(0, grid.depth() - 1));
        Cube q{level, {0, 0}};
        for (int a = 0; a < grid.dimension(); ++a) {
          q.index[static_cast<std::size_t>(a)] = static_cast<std::uint32_t>(
              rng.uniform_int(0, (1 << level) - 1));
        }
        GridFunction f = GridFunction::constant(grid, 0.0);
        for (int s = 0; s < grid.child_count(); ++s) {
          GridFunction ind = GridFunction::indicator(grid, grid.child(q, s));
          ind *= rng.uniform(-1.0, 1.0);
          f += ind;
        }
        if (nonnegative) f = abs(f);
        if (sup_norm(f) == 0.0) f = GridFunction::indicator(grid, q);
        probes.push_back(std::move(f));
        break;
      }
      default: {
        // Cell noise, log-uniform when nonnegative.
        std::vector<double> vals(grid.cell_count());
        for (double& v : vals) {
          v = nonnegative ? std::exp(rng.uniform(-2.0, 2.0))
                          : rng.uniform(-1.0, 1.0);
        }
        probes.emplace_back(grid, std::move(vals));
        break;
      }
    }
  }
  return probes;
}

GridFunction l2_ratio_maximizer(const HaarShift& shift, const Weight& w,
                                const Weight& sigma, int iterations) {
  const Grid& grid = shift.grid();
  const auto sigma_norm = [&](const GridFunction& f) {
    double s = 0.0;
    for (std::size_t c = 0; c < f.size(); ++c) {
      s += f[c] * f[c] * sigma.density()[c];
    }
    return std::sqrt(s * grid.cell_volume());
  };

  GridFunction f = GridFunction::constant(grid, 1.0);
  double prev = -1.0;
  for (int iter = 0; iter < iterations; ++iter) {
    const GridFunction image =
        shift.apply(cellwise_product(f, sigma.density()));
    double ratio_num = 0.0;
    for (std::size_t c = 0; c < image.size(); ++c) {
      ratio_num += image[c] * image[c] * w.density()[c];
    }
    ratio_num = std::sqrt(ratio_num * grid.cell_volume());
    const double nf = sigma_norm(f);
    if (nf == 0.0) break;
    const double est = ratio_num / nf;
    if (prev >= 0.0 && std::abs(est - prev) <= 1e-10 * std::max(est, 1e-300)) {
      break;
    }
    prev = est;
    // Adjoint with respect to the weighted pairings: S*(g w)/sigma.
    GridFunction back = shift.adjoint_apply(cellwise_product(image, w.density()));
    for (std::size_t c = 0; c < back.size(); ++c) {
      back[c] /= sigma.density()[c];
    }
    const double nb = sigma_norm(back);
    if (nb == 0.0) break;
    back *= 1.0 / nb;
    f = std::move(back);
  }
  const double nf = sigma_norm(f);
  if (nf > 0.0) f *= 1.0 / nf;
  return f;
}

WeightPairStats weight_pair_stats(const Weight& w, const Weight& sigma,
                                  double p) {
  return {ap_two_weight(w, sigma, p).value, ainfty(w), ainfty(sigma)};
}

double main_inequality_ratio(const HaarShift& shift, const Weight& w,
                             const Weight& sigma, double p,
                             const GridFunction& probe,
                             const WeightPairStats& stats) {
  const double pp = p / (p - 1.0);
  const double denom = std::pow(stats.ap, 1.0 / p) *
                       (std::pow(stats.ainfty_w, 1.0 / pp) +
                        std::pow(stats.ainfty_sigma, 1.0 / p)) *
                       lp_norm(probe, sigma, p);
  if (denom == 0.0) {
    throw std::invalid_argument("probe functions must be nonzero");
  }
  const GridFunction image =
      shift.maximal_truncation(cellwise_product(probe, sigma.density()));
  return lp_norm(image, w, p) / denom;
}

double main_inequality_ratio(const HaarShift& shift, const Weight& w,
                             const Weight& sigma, double p,
                             const GridFunction& probe) {
  return main_inequality_ratio(shift, w, sigma, p, probe,
                               weight_pair_stats(w, sigma, p));
}

HaarShift positive_shift_from_family(const Grid& grid,
                                     std::span<const Cube> family,
                                     int offset) {
  PositiveShiftSpec spec;
  spec.offset = offset;
  for (const Cube& q : family) {
    if (q.level >= offset) spec.family.push_back(q);
  }
  return build_positive_shift(grid, spec).shift;
}

std::vector<ResultRecord> run_main_inequality(const ExperimentConfig& config) {
  const std::vector<ShiftInstance> shifts = shift_instances(config);
  std::vector<ResultRecord> records;
  for (const WeightSpec& wspec : config.weights) {
    const Weight w = generate_weight(wspec, config.grid);
    for (const double p : config.p_values) {
      const Weight sigma = config.two_weight && config.sigma_spec
                               ? generate_weight(*config.sigma_spec, config.grid)
                               : dual_weight(w, p);
      const WeightPairStats stats = weight_pair_stats(w, sigma, p);
      for (const ShiftInstance& inst : shifts) {
        std::vector<GridFunction> probes =
            make_probes(config.grid, config.probe_count, config.seed, true);
        probes.push_back(abs(l2_ratio_maximizer(inst.shift, w, sigma)));
        double r = 0.0;
        for (const GridFunction& f : probes) {
          r = std::max(r, main_inequality_ratio(inst.shift, w, sigma, p, f,
                                                stats));
        }
        ResultRecord rec;
        rec.weight_id = weight_spec_id(wspec);
        rec.p = p;
        rec.shift_id = inst.id;
        rec.i = inst.i;
        rec.ap = stats.ap;
        rec.ainfty_w = stats.ainfty_w;
        rec.ainfty_sigma = stats.ainfty_sigma;
        rec.r = r;
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

Prop4Result run_prop4(const ExperimentConfig& config) {
  if (!config.positive_shift) {
    throw std::invalid_argument("run_prop4 requires positive-shift parameters");
  }
  const Grid& grid = config.grid;
  const Weight lebesgue = Weight::uniform(grid);
  const std::vector<ShiftInstance> shifts = shift_instances(config);
  const double dom_c = family_domination_constant(config);

  Prop4Result out;
  for (const double p : config.p_values) {
    std::vector<double> is, rhos, log_is, log_rhos;
    for (const ShiftInstance& inst : shifts) {
      if (inst.i < 1) continue;
      std::vector<GridFunction> probes =
          make_probes(grid, config.probe_count, config.seed, true);
      probes.push_back(abs(l2_ratio_maximizer(inst.shift, lebesgue, lebesgue)));
      double rho = 0.0;
      for (const GridFunction& f : probes) {
        const double denom = lp_norm(f, lebesgue, p);
        if (denom == 0.0) continue;
        rho = std::max(rho, lp_norm(inst.shift.apply(f), lebesgue, p) / denom);
      }
      ResultRecord rec;
      rec.weight_id = "lebesgue";
      rec.p = p;
      rec.shift_id = inst.id;
      rec.i = inst.i;
      rec.ap = 1.0;
      rec.ainfty_w = 1.0;
      rec.ainfty_sigma = 1.0;
      rec.rho = rho;
      rec.dom_c = dom_c;
      out.records.push_back(std::move(rec));
      is.push_back(static_cast<double>(inst.i));
      rhos.push_back(rho);
      if (rho > 0.0) {
        log_is.push_back(std::log(static_cast<double>(inst.i)));
        log_rhos.push_back(std::log(rho));
      }
    }
    Prop4Fit fit;
    fit.p = p;
    if (is.size() >= 2) fit.slope = least_squares_slope(is, rhos);
    if (log_is.size() >= 2) {
      fit.exponent = least_squares_slope(log_is, log_rhos);
    }
    out.fits.push_back(fit);
  }
  return out;
}

std::vector<ResultRecord> run_sweep(const ExperimentConfig& config) {
  const Grid& grid = config.grid;
  const std::vector<ShiftInstance> shifts = shift_instances(config);
  const double dom_c = family_domination_constant(config);

  std::vector<ResultRecord> records;
  for (const WeightSpec& wspec : config.weights) {
    const Weight w = generate_weight(wspec, grid);
    for (const double p : config.p_values) {
      const Weight sigma = config.two_weight && config.sigma_spec
                               ? generate_weight(*config.sigma_spec, grid)
                               : dual_weight(w, p);
      const WeightPairStats stats = weight_pair_stats(w, sigma, p);
      const Weight lebesgue = Weight::uniform(grid);
      for (const ShiftInstance& inst : shifts) {
        ResultRecord rec;
        rec.weight_id = weight_spec_id(wspec);
        rec.p = p;
        rec.shift_id = inst.id;
        rec.i = inst.i;
        rec.ap = stats.ap;
        rec.ainfty_w = stats.ainfty_w;
        rec.ainfty_sigma = stats.ainfty_sigma;
        rec.sp = shift_testing_constant(inst.shift, w, sigma, p,
                                        TestingDirection::forward)
                     .value;
        rec.sp_star = shift_testing_constant(inst.shift, w, sigma, p,
                                             TestingDirection::adjoint)
                          .value;

        std::vector<GridFunction> probes =
            make_probes(grid, config.probe_count, config.seed, true);
        probes.push_back(abs(l2_ratio_maximizer(inst.shift, w, sigma)));
        for (const GridFunction& f : probes) {
          rec.r = std::max(
              rec.r, main_inequality_ratio(inst.shift, w, sigma, p, f, stats));
          const double denom = lp_norm(f, lebesgue, p);
          if (denom > 0.0) {
            rec.rho = std::max(
                rec.rho, lp_norm(inst.shift.apply(f), lebesgue, p) / denom);
          }
        }
        rec.dom_c = dom_c;

        // Fitted decay rate of the densest principal-cube class.
        std::vector<Cube> all_cubes;
        all_cubes.reserve(grid.cube_count());
        for (std::size_t id = 0; id < grid.cube_count(); ++id) {
          all_cubes.push_back(grid.cube_from_id(id));
        }
        const auto classes = scale_layers(all_cubes, inst.shift.complexity());
        std::optional<double> rate;
        std::size_t best_size = 0;
        for (std::size_t lambda = 0; lambda < classes.size(); ++lambda) {
          if (classes[lambda].empty()) continue;
          const auto forests = build_principal_forest(
              classes[lambda], w, sigma, p, static_cast<int>(lambda));
          for (const auto& forest : forests) {
            for (const Cube& principal : forest.principals()) {
              const auto members = forest.members_of(principal, grid);
              if (members.size() <= best_size) continue;
              const HaarShift restricted = inst.shift.restricted_to(members);
              if (restricted.components().empty()) continue;
              const std::vector<double> thresholds{1, 2, 3, 4, 5, 6, 7, 8};
              const DecayProfile profile =
                  decay_profile(restricted, sigma, w, principal, thresholds);
              if (profile.fitted_rate) {
                best_size = members.size();
                rate = profile.fitted_rate;
              }
            }
          }
        }
        rec.decay_c = rate.value_or(0.0);
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

namespace {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void emit(std::span<const ResultRecord> records, EmitFormat format,
          const std::string& path) {
  if (records.empty()) {
    throw std::invalid_argument("no records to emit");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open output path: " + path);
  }
  if (format == EmitFormat::csv) {
    out << "weight_id,p,shift_id,i,ap,ainfty_w,ainfty_sigma,Sp,SpStar,R,rho,"
           "domC,decay_c\n";
    for (const ResultRecord& r : records) {
      out << sanitize_id(r.weight_id) << ',' << format17(r.p) << ','
          << sanitize_id(r.shift_id) << ',' << r.i << ',' << format17(r.ap)
          << ',' << format17(r.ainfty_w) << ',' << format17(r.ainfty_sigma)
          << ',' << format17(r.sp) << ',' << format17(r.sp_star) << ','
          << format17(r.r) << ',' << format17(r.rho) << ','
          << format17(r.dom_c) << ',' << format17(r.decay_c) << '\n';
    }
  } else {
    out << records_to_json(records);
  }
  if (!out) {
    throw std::runtime_error("failed writing output path: " + path);
  }
}

std::vector<std::string> verify_records(
    std::span<const ResultRecord> records) {
  std::vector<std::string> violations;
  for (const ResultRecord& r : records) {
    for (const double v : {r.ap, r.ainfty_w, r.ainfty_sigma, r.sp, r.sp_star,
                           r.r, r.rho, r.dom_c, r.decay_c, r.p}) {
      if (!std::isfinite(v)) {
        violations.push_back("non-finite field in record " + r.weight_id +
                             "/" + r.shift_id);
        break;
      }
    }
  }

  // Uniform boundedness of R across each weight sweep once ap >= 10.
  std::map<std::pair<std::string, double>, std::pair<double, double>> groups;
  for (const ResultRecord& r : records) {
    if (r.ap < 10.0 || r.r <= 0.0) continue;
    const auto key = std::make_pair(r.shift_id, r.p);
    auto [it, fresh] = groups.try_emplace(key, r.r, r.r);
    if (!fresh) {
      it->second.first = std::min(it->second.first, r.r);
      it->second.second = std::max(it->second.second, r.r);
    }
  }
  for (const auto& [key, span] : groups) {
    if (span.second > 2.0 * span.first) {
      violations.push_back("ratio spread above 2 for shift " + key.first);
    }
  }

  // Growth of rho against i within each (weight, p) group.
  std::map<std::pair<std::string, double>, std::vector<std::pair<int, double>>>
      rho_groups;
  for (const ResultRecord& r : records) {
    if (r.i >= 1 && r.rho > 0.0) {
      rho_groups[{r.weight_id, r.p}].emplace_back(r.i, r.rho);
    }
  }
  for (const auto& [key, points] : rho_groups) {
    if (points.size() < 2) continue;
    std::vector<double> lx, ly;
    for (const auto& [i, rho] : points) {
      lx.push_back(std::log(static_cast<double>(i)));
      ly.push_back(std::log(rho));
    }
    bool distinct = false;
    for (std::size_t j = 1; j < lx.size(); ++j) distinct |= lx[j] != lx[0];
    if (!distinct) continue;
    if (least_squares_slope(lx, ly) > 1.3) {
      violations.push_back("rho growth exponent above 1.3 for weight " +
                           key.first);
    }
  }
  return violations;
}

}  // namespace dyadic
