#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dengfan/barrier.hpp"
#include "dengfan/oracle.hpp"
#include "dengfan/scattering.hpp"

namespace dengfan::cli {

enum class OutputFormat { CSV, JSON };
enum class EnergyGrid { Linear, Log };
enum class Preset { Table1, Fig3, Fig4 };

struct RunConfig {
  BarrierParams params;
  // Sweeps produce one curve per value; empty means "use params".
  std::vector<double> v0_values;
  std::vector<double> q_values;  // sets q = q_tilde

  double e_min = 0.005;
  double e_max = 0.1;
  int n_points = 20;
  EnergyGrid grid = EnergyGrid::Linear;
  bool relative_energy = false;  // e_min/e_max in units of V_max

  std::optional<double> x_min;  // potential sampling; default -10/a
  std::optional<double> x_max;  // default +10/a

  MatchingMode mode = MatchingMode::CorrectedMatching;
  OutputFormat output_format = OutputFormat::CSV;
  bool oracle_enabled = false;
  std::optional<double> oracle_step;
  IntegratorMethod oracle_method = IntegratorMethod::RK4;
  std::size_t workers = 1;

  /// Energy-grid checks (0 < e_min < e_max, n_points >= 1) plus params.
  void validate_scan() const;
  /// Sampling checks for the potential command.
  void validate_potential() const;
};

/// Overwrites cfg with the preset's grid (and sweeps, for Fig4).
void apply_preset(RunConfig& cfg, Preset preset);

/// Curves selected by the sweeps: the cartesian product of v0_values and
/// q_values, or just params.
struct Curve {
  std::string label;  // "", "v0-1.15", "q-0.6", "v0-1.15_q-0.6"
  BarrierParams params;
};
std::vector<Curve> curves(const RunConfig& cfg);

/// Energies for one curve; relative grids are scaled by that curve's V_max.
std::vector<double> energy_grid(const RunConfig& cfg, const BarrierParams& params);

nlohmann::json to_json(const RunConfig& cfg);

/// Applies every key present in `doc` on top of `base`. Accepts either a
/// bare config object or a document with the config under "config" (the
/// echo embedded in JSON output). Throws Error{InvalidParameter} on unknown
/// enum strings or wrong types.
RunConfig from_json(const nlohmann::json& doc, RunConfig base = {});

RunConfig load_config_file(const std::string& path, RunConfig base = {});

}  // namespace dengfan::cli
