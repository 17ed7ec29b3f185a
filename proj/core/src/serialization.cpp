// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#include "dyadic/serialization.hpp"

#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

namespace dyadic {

namespace {

using Json = nlohmann::ordered_json;

Json cube_to_json_obj(const Cube& cube, int dimension) {
  Json j;
  j["level"] = cube.level;
  Json idx = Json::array();
  for (int a = 0; a < dimension; ++a) idx.push_back(cube.index[static_cast<std::size_t>(a)]);
  j["index"] = idx;
  return j;
}

Cube cube_from_json_obj(const Json& j, int dimension) {
  Cube cube;
  cube.level = j.at("level").get<int>();
  const auto& idx = j.at("index");
  if (static_cast<int>(idx.size()) != dimension) {
    throw std::invalid_argument("cube index arity does not match dimension");
  }
  for (int a = 0; a < dimension; ++a) {
    cube.index[static_cast<std::size_t>(a)] =
        idx.at(static_cast<std::size_t>(a)).get<std::uint32_t>();
  }
  return cube;
}

Json weight_spec_to_json_obj(const WeightSpec& spec) {
  Json j;
  switch (spec.kind) {
    case WeightSpec::Kind::power:
      j["kind"] = "power";
      j["alpha"] = spec.alpha;
      break;
    case WeightSpec::Kind::step:
      j["kind"] = "step";
      j["values"] = spec.values;
      break;
    case WeightSpec::Kind::randomized:
      j["kind"] = "randomized";
      j["seed"] = spec.seed;
      j["roughness"] = spec.roughness;
      break;
  }
  if (!spec.id.empty()) j["id"] = spec.id;
  return j;
}

WeightSpec weight_spec_from_json_obj(const Json& j) {
  WeightSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") {
    spec.kind = WeightSpec::Kind::power;
    spec.alpha = j.at("alpha").get<double>();
  } else if (kind == "step") {
    spec.kind = WeightSpec::Kind::step;
    spec.values = j.at("values").get<std::vector<double>>();
  } else if (kind == "randomized") {
    spec.kind = WeightSpec::Kind::randomized;
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.roughness = j.value("roughness", 1.0);
  } else {
    throw std::invalid_argument("unknown weight kind: " + kind);
  }
  spec.id = j.value("id", std::string{});
  return spec;
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string cube_to_text(const Cube& cube, int dimension) {
  std::string out = std::to_string(cube.level) + ":" +
                    std::to_string(cube.index[0]);
  if (dimension == 2) out += "," + std::to_string(cube.index[1]);
  return out;
}

Cube cube_from_text(std::string_view text, int dimension) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("cube text must look like level:i0[,i1]");
  }
  Cube cube;
  cube.level = std::atoi(std::string(text.substr(0, colon)).c_str());
  std::string rest(text.substr(colon + 1));
  const auto comma = rest.find(',');
  if (dimension == 1) {
    if (comma != std::string::npos) {
      throw std::invalid_argument("one index expected for d=1");
    }
    cube.index[0] = static_cast<std::uint32_t>(std::atoll(rest.c_str()));
  } else {
    if (comma == std::string::npos) {
      throw std::invalid_argument("two indices expected for d=2");
    }
    cube.index[0] = static_cast<std::uint32_t>(
        std::atoll(rest.substr(0, comma).c_str()));
    cube.index[1] = static_cast<std::uint32_t>(
        std::atoll(rest.substr(comma + 1).c_str()));
  }
  return cube;
}

std::string shift_to_json(const HaarShift& shift) {
  const int d = shift.grid().dimension();
  Json j;
  j["grid"] = {{"d", d}, {"L", shift.grid().depth()}};
  j["complexity"] = {shift.out_depth(), shift.in_depth()};
  j["positive"] = shift.positive();
  j["scale"] = shift.scale();
  Json comps = Json::array();
  for (const auto& comp : shift.components()) {
    Json jc;
    jc["cube"] = cube_to_json_obj(comp.cube, d);
    Json terms = Json::array();
    for (const auto& term : comp.terms) {
      Json jt;
      jt["out"] = cube_to_json_obj(term.out_cube, d);
      jt["in"] = cube_to_json_obj(term.in_cube, d);
      jt["out_coeffs"] = term.out_coeffs;
      jt["in_coeffs"] = term.in_coeffs;
      terms.push_back(std::move(jt));
    }
    jc["terms"] = std::move(terms);
    comps.push_back(std::move(jc));
  }
  j["components"] = std::move(comps);
  return j.dump(2);
}

HaarShift shift_from_json(std::string_view text) {
  const Json j = parse(text);
  const Grid grid(j.at("grid").at("d").get<int>(),
                  j.at("grid").at("L").get<int>());
  const int d = grid.dimension();
  const auto& complexity = j.at("complexity");
  std::vector<ShiftComponent> comps;
  for (const auto& jc : j.at("components")) {
    ShiftComponent comp;
    comp.cube = cube_from_json_obj(jc.at("cube"), d);
    for (const auto& jt : jc.at("terms")) {
      ShiftTerm term;
      term.out_cube = cube_from_json_obj(jt.at("out"), d);
      term.in_cube = cube_from_json_obj(jt.at("in"), d);
      term.out_coeffs = jt.at("out_coeffs").get<std::vector<double>>();
      term.in_coeffs = jt.at("in_coeffs").get<std::vector<double>>();
      comp.terms.push_back(std::move(term));
    }
    comps.push_back(std::move(comp));
  }
  return HaarShift(grid, complexity.at(0).get<int>(),
                   complexity.at(1).get<int>(), std::move(comps),
                   j.value("positive", false), j.value("scale", 1.0));
}

std::string weight_spec_to_json(const WeightSpec& spec) {
  return weight_spec_to_json_obj(spec).dump(2);
}

WeightSpec weight_spec_from_json(std::string_view text) {
  return weight_spec_from_json_obj(parse(text));
}

ExperimentConfig config_from_json(std::string_view text) {
  const Json j = parse(text);
  ExperimentConfig config;
  config.grid = Grid(j.at("grid").at("d").get<int>(),
                     j.at("grid").at("L").get<int>());
  if (j.contains("p")) config.p_values = j.at("p").get<std::vector<double>>();
  if (j.contains("shift")) {
    config.explicit_shift = shift_from_json(j.at("shift").dump());
    if (!(config.explicit_shift->grid() == config.grid)) {
      throw std::invalid_argument("shift grid does not match config grid");
    }
  }
  if (j.contains("positive_shift")) {
    const auto& jp = j.at("positive_shift");
    PositiveShiftParams params;
    params.i_min = jp.value("i_min", 1);
    params.i_max = jp.value("i_max", params.i_min);
    const std::string source = jp.value("source", std::string("lerner"));
    if (source == "lerner") {
      params.source = PositiveShiftParams::Source::lerner;
      params.family_seed = jp.value("family_seed", std::uint64_t{1});
    } else if (source == "explicit") {
      params.source = PositiveShiftParams::Source::explicit_cubes;
      for (const auto& jq : jp.at("cubes")) {
        params.cubes.push_back(
            cube_from_json_obj(jq, config.grid.dimension()));
      }
    } else {
      throw std::invalid_argument("unknown family source: " + source);
    }
    config.positive_shift = std::move(params);
  }
  if (j.contains("weights")) {
    for (const auto& jw : j.at("weights")) {
      config.weights.push_back(weight_spec_from_json_obj(jw));
    }
  }
  config.two_weight = j.value("two_weight", false);
  if (j.contains("sigma")) {
    config.sigma_spec = weight_spec_from_json_obj(j.at("sigma"));
  }
  config.probe_count = j.value("probe_count", 8);
  config.seed = j.value("seed", std::uint64_t{1});
  config.output_path = j.value("output", std::string("results"));
  config.format = j.value("format", std::string("csv"));
  if (config.format != "csv" && config.format != "json" &&
      config.format != "both") {
    throw std::invalid_argument("format must be csv, json or both");
  }
  return config;
}

std::string records_to_json(std::span<const ResultRecord> records) {
  Json arr = Json::array();
  for (const ResultRecord& r : records) {
    Json j;
    j["weight_id"] = r.weight_id;
    j["p"] = r.p;
    j["shift_id"] = r.shift_id;
    j["i"] = r.i;
    j["ap"] = r.ap;
    j["ainfty_w"] = r.ainfty_w;
    j["ainfty_sigma"] = r.ainfty_sigma;
    j["Sp"] = r.sp;
    j["SpStar"] = r.sp_star;
    j["R"] = r.r;
    j["rho"] = r.rho;
    j["domC"] = r.dom_c;
    j["decay_c"] = r.decay_c;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

std::vector<double> parse_value_list(std::string_view text) {
  std::vector<double> out;
  std::string token;
  const auto flush = [&] {
    if (token.empty()) return;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) {
      throw std::invalid_argument("cannot parse value: " + token);
    }
    out.push_back(v);
    token.clear();
  };
  for (const char c : text) {
    if (c == ',' || c == '\n' || c == '\r' || c == ' ' || c == '\t') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

}  // namespace dyadic
