#pragma once

#include <string>
#include <vector>

#include "dengfan/cli/run_config.hpp"

namespace dengfan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

inline constexpr double kVerifyTolT = 1e-6;
inline constexpr double kVerifyTolR = 1e-6;
inline constexpr double kVerifyTolUnitarity = 1e-9;
inline constexpr double kReferenceTol = 1e-5;

/// One output document. Commands never touch the filesystem; the caller
/// decides whether artifacts go to stdout or to files named `name`.
struct Artifact {
  std::string name;
  std::string content;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<Artifact> artifacts;
  std::string diagnostics;  // human-readable notes for stderr
};

inline constexpr const char* kScatterHeader = "E,E_over_Vmax,T,R,unitarity_residual";
inline constexpr const char* kScatterOracleHeader = ",T_oracle,R_oracle,delta_T";

// Invalid configurations throw Error{InvalidParameter}; numerical failures
// are reported through exit_code.
CommandResult cmd_potential(const RunConfig& cfg);
CommandResult cmd_scatter(const RunConfig& cfg);
/// Always runs the oracle, whatever cfg.oracle_enabled says.
CommandResult cmd_verify(const RunConfig& cfg);

struct ReferenceCheck {
  MatchingMode mode;
  bool reproduces = false;
  double max_dT = 0.0;
  double max_dR = 0.0;
  std::string failure;  // set when the mode could not be evaluated
};

/// Evaluates the published reference table in the given mode.
ReferenceCheck check_reference_table(MatchingMode mode);

std::string format_number(double v);

}  // namespace dengfan::cli
