#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invlab/axis_burgers.hpp"
#include "invlab/dynamics.hpp"
#include "invlab/oracles.hpp"

namespace invlab::harness {

/// What a named initial condition resolves to: a periodic initial state for
/// the solver, or a closed-form family sampled on the grid.
struct PresetInfo {
  std::string name;
  ModelKind model;
  std::string description;
  bool oracle = false;
};

const std::vector<PresetInfo>& preset_registry();
const PresetInfo* find_preset(std::string_view name);

/// Initial state for the solver from a preset name or expressions.
/// Throws ValidationError for oracle presets and model mismatches.
State initial_state(ModelKind model, const Grid2D& grid, const std::string& ic,
                    const std::string& ic_omega);

/// Closed-form family behind an oracle preset.
oracles::OracleField oracle_preset(std::string_view name);

/// Grid sampling of oracle presets: x1 = j dx, x2 = k dy - ly/2.
double oracle_x1(const Grid2D& g, int j);
double oracle_x2(const Grid2D& g, int k);

/// Axis trace θ0(x1, 0) of a singular-scalar initial condition, with exact
/// first derivative.
burgers::AxisProfile axis_profile(const std::string& ic, double period = 2.0 * std::numbers::pi);

}  // namespace invlab::harness
