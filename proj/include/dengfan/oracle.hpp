#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <utility>

#include "dengfan/barrier.hpp"

namespace dengfan {

enum class IntegratorMethod { RK4, Numerov };

struct IntegrationConfig {
  double x_max = 50.0;    ///< domain is [-x_max, x_max]
  double step = 1e-3;     ///< rounded down so that x = 0 is a grid node
  double decay_tol = 1e-12;
  IntegratorMethod method = IntegratorMethod::RK4;
  /// Runs with |R + T - 1| above this throw StepTooCoarse.
  double flux_tol = 1e-6;

  void validate() const;
};

struct OracleResult {
  double R = 0.0;
  double T = 0.0;
  double flux_residual = 0.0;
  double boundary_potential = 0.0;  ///< max |V(+-x_max)|
  double x_max = 0.0;
  double step = 0.0;                ///< step actually used
  std::size_t steps = 0;
};

using PotentialFn = std::function<double(double)>;

/// Coefficients (A, B) with psi = A e^{ikx} + B e^{-ikx} and
/// dpsi = ik (A e^{ikx} - B e^{-ikx}) at x.
std::pair<Complex, Complex> plane_wave_decompose(Complex psi, Complex dpsi, double k, double x);

/// Integrates psi'' + 2m (E - V) psi = 0 backwards from a pure outgoing wave
/// e^{ikx} at +x_max to -x_max and splits the result into incident and
/// reflected plane waves there.
///
/// The potential is sampled a hair inside each step at step endpoints, so a
/// jump located exactly on a grid node (x = 0 for q != q~, the edges of a
/// rectangular barrier) is integrated as two smooth pieces.
OracleResult integrate_scatter(double energy, const PotentialFn& potential, double mass,
                               const IntegrationConfig& cfg);

/// x_max = max(40/a, 10 x_e), doubled until |V(+-x_max)| <= 1e-12 max(E, 1);
/// step = min(1e-3, 0.02/k).
IntegrationConfig default_integration_config(double energy, const BarrierParams& params);

OracleResult oracle_scatter(double energy, const BarrierParams& params);
OracleResult oracle_scatter(double energy, const BarrierParams& params,
                            const IntegrationConfig& cfg);

}  // namespace dengfan
