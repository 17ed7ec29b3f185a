// SPDX-FileCopyrightText: © 2026 dyadic authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <string_view>

#include "dyadic/experiment.hpp"
#include "dyadic/shift.hpp"

namespace dyadic {

/// "level:i0" (d=1) or "level:i0,i1" (d=2).
std::string cube_to_text(const Cube& cube, int dimension);
Cube cube_from_text(std::string_view text, int dimension);

/// Shift document: {"grid": {"d", "L"}, "complexity": [m, n],
/// "positive": bool, "scale": s, "components": [{"cube", "terms": [...]}]}.
std::string shift_to_json(const HaarShift& shift);
HaarShift shift_from_json(std::string_view text);

std::string weight_spec_to_json(const WeightSpec& spec);
WeightSpec weight_spec_from_json(std::string_view text);

ExperimentConfig config_from_json(std::string_view text);

std::string records_to_json(std::span<const ResultRecord> records);

/// Doubles separated by commas, whitespace or newlines (the CLI's function
/// input format).
std::vector<double> parse_value_list(std::string_view text);

}  // namespace dyadic
