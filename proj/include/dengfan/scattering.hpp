#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dengfan/barrier.hpp"
#include "dengfan/errors.hpp"

namespace dengfan {

enum class MatchingMode {
  /// psi and dpsi/dx continuous at x = 0, with dy_L/dx = +a y_L and
  /// dy_R/dx = -a y_R. Reproduces the published table and conserves flux.
  CorrectedMatching,
  /// The closed-form ratios evaluated as printed, with the right-hand
  /// derivative built from zeta6 as printed (equal to zeta3). Kept for
  /// comparison only; it does not conserve flux.
  PaperLiteral,
};

std::string to_string(MatchingMode mode);

/// Everything entering the 2x2 matching system at x = 0. c4..c6 are
/// derivatives with respect to the local variable y (y_L = q e^{ax} on the
/// left, y_R = q~ e^{-ax} on the right), not with respect to x.
struct MatchCoefficients {
  double energy = 0.0;
  double rho1 = 0.0, rho2 = 0.0, rho3 = 0.0, rho4 = 0.0;
  Complex zeta1, zeta2, zeta3, zeta4, zeta5, zeta6;
  Complex lambda1, lambda2, lambda3;
  Complex c1, c2, c3, c4, c5, c6;
  /// c6 assembled with the printed zeta6 (= zeta3); used by PaperLiteral.
  Complex c6_printed;
  SideCoefficients left;
  SideCoefficients right;
};

struct ScatteringResult {
  double energy = 0.0;
  Complex r_amp;  ///< A2 / A1
  Complex t_amp;  ///< A4 / A1
  double R = 0.0;
  double T = 0.0;
  double unitarity_residual = 0.0;
  MatchingMode mode = MatchingMode::CorrectedMatching;
};

MatchCoefficients match_coefficients(double energy, const BarrierParams& params,
                                     BasisChoice left, BasisChoice right);

inline MatchCoefficients match_coefficients(double energy, const BarrierParams& params,
                                            TauBranch tau = TauBranch::Plus) {
  return match_coefficients(energy, params, BasisChoice{tau, RootSign::Principal},
                            BasisChoice{tau, RootSign::Principal});
}

/// Throws Error{SingularMatching} when the system determinant is below 1e-300.
ScatteringResult solve_amplitudes(const MatchCoefficients& mc,
                                  MatchingMode mode = MatchingMode::CorrectedMatching);

/// Convenience: match_coefficients followed by solve_amplitudes.
ScatteringResult scatter(double energy, const BarrierParams& params,
                         MatchingMode mode = MatchingMode::CorrectedMatching);

struct ScanEntry {
  double energy = 0.0;
  std::optional<ScatteringResult> result;
  std::optional<ErrorCode> error_code;
  std::string error;

  bool ok() const noexcept { return result.has_value(); }
};

/// One entry per energy, in input order. Energies must be positive and
/// strictly increasing (InvalidParameter otherwise); numerical failures at a
/// single energy are recorded in that entry. workers == 0 picks the hardware
/// concurrency; the output does not depend on the worker count.
std::vector<ScanEntry> scan(std::span<const double> energies, const BarrierParams& params,
                            MatchingMode mode = MatchingMode::CorrectedMatching,
                            std::size_t workers = 1);

}  // namespace dengfan
