// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: weight characteristics, shift application, the
// stopping-time decomposition, testing constants and experiment sweeps.
// Exit codes: 0 success, 2 validation error, 3 assertion failure in
// verification mode.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dyadic/experiment.hpp"
#include "dyadic/lerner.hpp"
#include "dyadic/serialization.hpp"
#include "dyadic/testing.hpp"

namespace {

using dyadic::Cube;
using dyadic::Grid;
using dyadic::GridFunction;
using dyadic::HaarShift;
using dyadic::Weight;
using Json = nlohmann::ordered_json;

constexpr int kValidationError = 2;
constexpr int kVerificationFailure = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON if the argument looks like a document, else a file path.
std::string text_or_file(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
  return slurp(arg);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

Json cube_json(const Cube& q, int dimension) {
  Json j;
  j["level"] = q.level;
  Json idx = Json::array();
  for (int a = 0; a < dimension; ++a) idx.push_back(q.index[a]);
  j["index"] = idx;
  return j;
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GridFunction read_function(const Grid& grid, const std::string& path) {
  const std::vector<double> values = dyadic::parse_value_list(slurp(path));
  if (values.size() != grid.cell_count()) {
    throw std::invalid_argument(
        "input has " + std::to_string(values.size()) + " values, grid needs " +
        std::to_string(grid.cell_count()));
  }
  return GridFunction(grid, std::vector<double>(values));
}

int run_constants(const std::string& weight_arg, const std::string& p_arg,
                  int d, int L, const std::string& out_path) {
  const Grid grid(d, L);
  const dyadic::WeightSpec spec =
      dyadic::weight_spec_from_json(text_or_file(weight_arg));
  const Weight w = dyadic::generate_weight(spec, grid);
  const std::vector<double> ps = dyadic::parse_value_list(p_arg);
  if (ps.empty()) throw std::invalid_argument("no p values given");

  Json out;
  out["weight"] = dyadic::weight_spec_id(spec);
  out["grid"] = {{"d", d}, {"L", L}};
  Json results = Json::array();
  for (const double p : ps) {
    const Weight sigma = dyadic::dual_weight(w, p);
    const auto [ap, cube] = dyadic::ap_two_weight(w, sigma, p);
    Json r;
    r["p"] = p;
    r["ap"] = ap;
    r["apCube"] = cube_json(cube, d);
    r["ainfty_w"] = dyadic::ainfty(w);
    r["ainfty_sigma"] = dyadic::ainfty(sigma);
    results.push_back(std::move(r));
  }
  out["results"] = std::move(results);
  write_output(out.dump(2) + "\n", out_path);
  return 0;
}

int run_apply(const std::string& shift_arg, const std::string& input_path,
              const std::string& op, double eps, double ups,
              const std::string& out_path) {
  const HaarShift shift = dyadic::shift_from_json(text_or_file(shift_arg));
  const GridFunction f = read_function(shift.grid(), input_path);
  GridFunction result = [&] {
    if (op == "apply") return shift.apply(f);
    if (op == "adjoint") return shift.adjoint_apply(f);
    if (op == "truncated") return shift.truncated_apply(f, eps, ups);
    if (op == "maximal") return shift.maximal_truncation(f);
    throw std::invalid_argument("unknown op: " + op);
  }();
  std::string text;
  for (std::size_t c = 0; c < result.size(); ++c) {
    text += format17(result[c]);
    text += '\n';
  }
  write_output(text, out_path);
  return 0;
}

int run_lerner(const std::string& input_path, const std::string& q0_arg,
               int d, const std::string& out_path) {
  const std::vector<double> values =
      dyadic::parse_value_list(slurp(input_path));
  int L = 0;
  while ((std::size_t{1} << (d * (L + 1))) <= values.size()) ++L;
  const Grid grid(d, L);
  if (grid.cell_count() != values.size()) {
    throw std::invalid_argument("value count is not a power of the cell base");
  }
  const GridFunction f(grid, std::vector<double>(values));
  const Cube q0 = q0_arg.empty() ? grid.root()
                                 : dyadic::cube_from_text(q0_arg, d);
  if (!grid.valid(q0)) throw std::invalid_argument("q0 outside the grid");

  const dyadic::SparseFamily family = dyadic::sparse_decomposition(f, q0);
  Json out;
  Json gens = Json::array();
  for (const auto& gen : family.generations) {
    Json row = Json::array();
    for (const Cube& q : gen) row.push_back(cube_json(q, d));
    gens.push_back(std::move(row));
  }
  out["generations"] = std::move(gens);
  out["dominationConstant"] = dyadic::domination_constant(f, q0);
  write_output(out.dump(2) + "\n", out_path);
  return 0;
}

int run_testing(const std::string& shift_arg, const std::string& weight_arg,
                double p, const std::string& sigma_arg,
                const std::string& out_path) {
  const HaarShift shift = dyadic::shift_from_json(text_or_file(shift_arg));
  const Grid& grid = shift.grid();
  const dyadic::WeightSpec wspec =
      dyadic::weight_spec_from_json(text_or_file(weight_arg));
  const Weight w = dyadic::generate_weight(wspec, grid);
  const Weight sigma =
      sigma_arg.empty()
          ? dyadic::dual_weight(w, p)
          : dyadic::generate_weight(
                dyadic::weight_spec_from_json(text_or_file(sigma_arg)), grid);

  const auto forward = dyadic::shift_testing_constant(
      shift, w, sigma, p, dyadic::TestingDirection::forward);
  const auto adjoint = dyadic::shift_testing_constant(
      shift, w, sigma, p, dyadic::TestingDirection::adjoint);

  Json out;
  out["Sp"] = forward.value;
  out["SpStar"] = adjoint.value;
  out["attainingCubes"] = {
      {"forward", cube_json(forward.attaining, grid.dimension())},
      {"adjoint", cube_json(adjoint.attaining, grid.dimension())}};

  // Principal-cube layers per scale class, plus the decay profile of the
  // best-populated class.
  std::vector<Cube> cubes;
  cubes.reserve(grid.cube_count());
  for (std::size_t id = 0; id < grid.cube_count(); ++id) {
    cubes.push_back(grid.cube_from_id(id));
  }
  const double ainfty_sigma = dyadic::ainfty(sigma);
  const auto classes = dyadic::scale_layers(cubes, shift.complexity());
  Json layers = Json::array();
  std::optional<dyadic::DecayProfile> best_profile;
  std::size_t best_members = 0;
  for (std::size_t lambda = 0; lambda < classes.size(); ++lambda) {
    if (classes[lambda].empty()) continue;
    const auto forests = dyadic::build_principal_forest(
        classes[lambda], w, sigma, p, static_cast<int>(lambda));
    for (const auto& forest : forests) {
      Json layer;
      layer["lambda"] = forest.scale_class;
      layer["a"] = forest.layer;
      Json principals = Json::array();
      for (const Cube& q : forest.principals()) {
        principals.push_back(cube_json(q, grid.dimension()));
      }
      layer["principals"] = std::move(principals);
      layer["carlesonRatio"] =
          dyadic::carleson_ratio(forest, sigma, grid.root(), ainfty_sigma);
      layers.push_back(std::move(layer));

      for (const Cube& principal : forest.principals()) {
        const auto members = forest.members_of(principal, grid);
        if (members.size() <= best_members) continue;
        const HaarShift restricted = shift.restricted_to(members);
        if (restricted.components().empty()) continue;
        const std::vector<double> thresholds{1, 2, 3, 4, 5, 6, 7, 8};
        best_profile = dyadic::decay_profile(restricted, sigma, w, principal,
                                             thresholds);
        best_members = members.size();
      }
    }
  }
  out["layers"] = std::move(layers);
  Json decay = Json::array();
  if (best_profile) {
    for (const auto& [t, measure] : best_profile->level_sets) {
      decay.push_back({{"t", t}, {"measure", measure}});
    }
  }
  out["decay"] = std::move(decay);
  if (best_profile && best_profile->fitted_rate) {
    out["fittedRate"] = *best_profile->fitted_rate;
  } else {
    out["fittedRate"] = nullptr;
  }
  write_output(out.dump(2) + "\n", out_path);
  return 0;
}

int run_sweep_cmd(const std::string& config_path, bool verify) {
  const dyadic::ExperimentConfig config =
      dyadic::config_from_json(slurp(config_path));
  const std::vector<dyadic::ResultRecord> records = dyadic::run_sweep(config);
  if (config.format == "csv" || config.format == "both") {
    dyadic::emit(records, dyadic::EmitFormat::csv,
                 config.output_path + ".csv");
    std::cout << "wrote " << config.output_path << ".csv\n";
  }
  if (config.format == "json" || config.format == "both") {
    dyadic::emit(records, dyadic::EmitFormat::json,
                 config.output_path + ".json");
    std::cout << "wrote " << config.output_path << ".json\n";
  }
  std::cout << records.size() << " sweep points\n";
  if (verify) {
    const auto violations = dyadic::verify_records(records);
    if (!violations.empty()) {
      for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
      return kVerificationFailure;
    }
    std::cout << "verification passed\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite dyadic grids: shifts, weights, testing constants"};
  app.require_subcommand(1);

  std::string weight_arg, p_list = "2", out_path;
  int d = 1, L = 8;
  auto* constants = app.add_subcommand(
      "constants", "weight characteristics for a weight family member");
  constants->add_option("--weight", weight_arg, "weight spec (JSON or file)")
      ->required();
  constants->add_option("--p", p_list, "comma-separated p values");
  constants->add_option("--d", d, "grid dimension (1 or 2)");
  constants->add_option("--L", L, "grid depth");
  constants->add_option("--output", out_path, "output file (default stdout)");

  std::string shift_arg, input_path, op = "apply";
  double eps = 0.0, ups = 1.0;
  auto* apply = app.add_subcommand("apply", "apply a shift to cell values");
  apply->add_option("--shift", shift_arg, "shift document (JSON or file)")
      ->required();
  apply->add_option("--input", input_path, "cell values (csv)")->required();
  apply->add_option("--op", op, "apply | adjoint | truncated | maximal");
  apply->add_option("--eps", eps, "truncation: smallest side length");
  apply->add_option("--ups", ups, "truncation: largest side length");
  apply->add_option("--output", out_path, "output file (default stdout)");

  std::string q0_arg;
  auto* lerner = app.add_subcommand(
      "lerner", "stopping-time decomposition of an input function");
  lerner->add_option("--input", input_path, "cell values (csv)")->required();
  lerner->add_option("--q0", q0_arg, "base cube as level:i0[,i1]");
  lerner->add_option("--d", d, "grid dimension (1 or 2)");
  lerner->add_option("--output", out_path, "output file (default stdout)");

  double p = 2.0;
  std::string sigma_arg;
  auto* testing = app.add_subcommand(
      "testing", "testing constants, layers and decay for a shift");
  testing->add_option("--shift", shift_arg, "shift document (JSON or file)")
      ->required();
  testing->add_option("--weight", weight_arg, "weight spec (JSON or file)")
      ->required();
  testing->add_option("--p", p, "exponent p");
  testing->add_option("--sigma", sigma_arg,
                      "source weight spec (default: dual of --weight)");
  testing->add_option("--output", out_path, "output file (default stdout)");

  std::string config_path;
  bool verify = false;
  auto* sweep = app.add_subcommand("sweep", "run an experiment sweep");
  sweep->add_option("--config", config_path, "experiment config (JSON file)")
      ->required();
  sweep->add_flag("--verify", verify, "check record invariants, exit 3 on failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kValidationError;
  }

  try {
    if (constants->parsed()) {
      return run_constants(weight_arg, p_list, d, L, out_path);
    }
    if (apply->parsed()) {
      return run_apply(shift_arg, input_path, op, eps, ups, out_path);
    }
    if (lerner->parsed()) {
      return run_lerner(input_path, q0_arg, d, out_path);
    }
    if (testing->parsed()) {
      return run_testing(shift_arg, weight_arg, p, sigma_arg, out_path);
    }
    if (sweep->parsed()) {
      return run_sweep_cmd(config_path, verify);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return 0;
}
