#include "dengfan/scattering.hpp"

#include <cmath>

#include "dengfan/hypergeometric.hpp"
#include "dengfan/parallel.hpp"

namespace dengfan {

namespace {

constexpr double kSingularDeterminant = 1e-300;

// d/dy [ y^s (1-y)^tau F(y) ] at y = rho, where F' = lambda * F_shifted.
Complex local_derivative(double rho, Complex s, double tau, Complex f, Complex lambda,
                         Complex f_shifted) {
  const Complex ys = std::pow(rho, s);
  const double one_minus = 1.0 - rho;
  const double w = std::pow(one_minus, tau);
  return s * ys / rho * w * f - tau * ys * w / one_minus * f + ys * w * lambda * f_shifted;
}

}  // namespace

std::string to_string(MatchingMode mode) {
  return mode == MatchingMode::CorrectedMatching ? "corrected" : "paper";
}

MatchCoefficients match_coefficients(double energy, const BarrierParams& params,
                                     BasisChoice left, BasisChoice right) {
  MatchCoefficients mc;
  mc.energy = energy;
  mc.left = side_coefficients(energy, params, Side::Left, left);
  mc.right = side_coefficients(energy, params, Side::Right, right);

  mc.rho1 = params.q;
  mc.rho2 = 1.0 - params.q;
  mc.rho3 = params.q_tilde;
  mc.rho4 = 1.0 - params.q_tilde;

  const Complex al = mc.left.alpha, be = mc.left.beta, ga = mc.left.gamma;
  const Complex alt = mc.right.alpha, bet = mc.right.beta, gat = mc.right.gamma;

  mc.zeta1 = gauss_2f1(al, be, ga, mc.rho1);
  mc.zeta2 = gauss_2f1(al + 1.0 - ga, be + 1.0 - ga, 2.0 - ga, mc.rho1);
  mc.zeta3 = gauss_2f1(alt + 1.0 - gat, bet + 1.0 - gat, 2.0 - gat, mc.rho3);
  mc.zeta4 = gauss_2f1(al + 1.0, be + 1.0, ga + 1.0, mc.rho1);
  mc.zeta5 = gauss_2f1(al + 2.0 - ga, be + 2.0 - ga, 3.0 - ga, mc.rho1);
  mc.zeta6 = gauss_2f1(alt + 2.0 - gat, bet + 2.0 - gat, 3.0 - gat, mc.rho3);

  mc.lambda1 = al * be / ga;
  mc.lambda2 = (al + 1.0 - ga) * (be + 1.0 - ga) / (2.0 - ga);
  mc.lambda3 = (alt + 1.0 - gat) * (bet + 1.0 - gat) / (2.0 - gat);

  const Complex sl = mc.left.sigma, sr = mc.right.sigma;
  const double tl = mc.left.tau, tr = mc.right.tau;

  mc.c1 = std::pow(mc.rho1, sl) * std::pow(mc.rho2, tl) * mc.zeta1;
  mc.c2 = std::pow(mc.rho1, -sl) * std::pow(mc.rho2, tl) * mc.zeta2;
  mc.c3 = std::pow(mc.rho3, -sr) * std::pow(mc.rho4, tr) * mc.zeta3;
  mc.c4 = local_derivative(mc.rho1, sl, tl, mc.zeta1, mc.lambda1, mc.zeta4);
  mc.c5 = local_derivative(mc.rho1, -sl, tl, mc.zeta2, mc.lambda2, mc.zeta5);
  mc.c6 = local_derivative(mc.rho3, -sr, tr, mc.zeta3, mc.lambda3, mc.zeta6);
  mc.c6_printed = local_derivative(mc.rho3, -sr, tr, mc.zeta3, mc.lambda3, mc.zeta3);
  return mc;
}

ScatteringResult solve_amplitudes(const MatchCoefficients& mc, MatchingMode mode) {
  ScatteringResult out;
  out.energy = mc.energy;
  out.mode = mode;

  if (mode == MatchingMode::CorrectedMatching) {
    // With A1 = 1:
    //   c1 + c2 r = c3 t                     (psi)
    //   q (c4 + c5 r) = -q~ c6 t             (dpsi/dx; dy_L/dx = a y_L, dy_R/dx = -a y_R)
    const double q = mc.rho1;
    const double qt = mc.rho3;
    const Complex det = qt * mc.c2 * mc.c6 + q * mc.c3 * mc.c5;
    if (!(std::abs(det) >= kSingularDeterminant)) {
      throw Error(ErrorCode::SingularMatching,
                  "matching determinant vanishes at E = " + std::to_string(mc.energy));
    }
    out.r_amp = -(qt * mc.c1 * mc.c6 + q * mc.c3 * mc.c4) / det;
    out.t_amp = q * (mc.c1 * mc.c5 - mc.c2 * mc.c4) / det;
  } else {
    const Complex det = mc.c2 * mc.c6_printed - mc.c3 * mc.c5;
    if (!(std::abs(det) >= kSingularDeterminant)) {
      throw Error(ErrorCode::SingularMatching,
                  "printed-ratio determinant vanishes at E = " + std::to_string(mc.energy));
    }
    out.r_amp = (mc.c3 * mc.c4 - mc.c1 * mc.c6_printed) / det;
    out.t_amp = (mc.c2 * mc.c4 - mc.c1 * mc.c5) / det;
  }

  out.R = std::norm(out.r_amp);
  out.T = std::norm(out.t_amp);
  out.unitarity_residual = std::abs(out.R + out.T - 1.0);
  return out;
}

ScatteringResult scatter(double energy, const BarrierParams& params, MatchingMode mode) {
  return solve_amplitudes(match_coefficients(energy, params), mode);
}

std::vector<ScanEntry> scan(std::span<const double> energies, const BarrierParams& params,
                            MatchingMode mode, std::size_t workers) {
  params.validate();
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (!(energies[i] > 0.0)) {
      throw Error(ErrorCode::InvalidParameter, "scan energies must be > 0");
    }
    if (i > 0 && !(energies[i] > energies[i - 1])) {
      throw Error(ErrorCode::InvalidParameter, "scan energies must be strictly increasing");
    }
  }

  std::vector<ScanEntry> out(energies.size());
  auto evaluate = [&](std::size_t i) {
    ScanEntry& entry = out[i];
    entry.energy = energies[i];
    try {
      entry.result = scatter(energies[i], params, mode);
    } catch (const Error& e) {
      entry.error_code = e.code();
      entry.error = e.what();
    }
  };

  parallel_for(energies.size(), workers, evaluate);
  return out;
}

}  // namespace dengfan
