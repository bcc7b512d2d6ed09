#include "dengfan/barrier.hpp"

#include <cmath>
#include <string>

#include "dengfan/errors.hpp"

namespace dengfan {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, what);
}

}  // namespace

void BarrierParams::validate() const {
  require(std::isfinite(v0) && std::isfinite(a) && std::isfinite(x_e) &&
              std::isfinite(q) && std::isfinite(q_tilde) && std::isfinite(m),
          "barrier parameters must be finite");
  require(v0 >= 0.0, "v0 must be >= 0");
  require(a > 0.0, "a must be > 0");
  require(x_e >= 0.0, "x_e must be >= 0");
  require(m > 0.0, "mass must be > 0");
  require(q > 0.0 && q < 1.0, "q must lie in (0, 1)");
  require(q_tilde > 0.0 && q_tilde < 1.0, "q_tilde must lie in (0, 1)");
}

double compute_b(const BarrierParams& params) {
  params.validate();
  return std::exp(params.a * params.x_e) - params.q;
}

DerivedShape derived_shape(const BarrierParams& params) {
  return {compute_b(params), potential(0.0, params)};
}

double potential(double x, const BarrierParams& params) {
  const double b = compute_b(params);
  const double shift = x < 0.0 ? params.q : params.q_tilde;
  const double d = std::exp(params.a * std::abs(x)) - shift;
  if (std::isinf(d)) return 0.0;
  return params.v0 * b * (b / (d * d) - 2.0 / d);
}

double wave_number(double energy, double mass) {
  return std::sqrt(2.0 * mass * energy);
}

SideCoefficients side_coefficients(double energy, const BarrierParams& params,
                                   Side side, BasisChoice basis) {
  params.validate();
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw Error(ErrorCode::NonPositiveEnergy,
                "scattering energy must be finite and > 0, got " + std::to_string(energy));
  }

  const double m = params.m;
  const double a2 = params.a * params.a;
  const double b = compute_b(params);
  const double qs = side == Side::Left ? params.q : params.q_tilde;

  SideCoefficients s;
  s.side = side;
  s.energy = energy;
  s.chi1 = 2.0 * m * energy / a2 - 2.0 * m * params.v0 * b * b / (a2 * qs * qs) -
           4.0 * m * params.v0 * b / (a2 * qs);
  s.chi2 = 4.0 * m * params.v0 * b / (a2 * qs) - 4.0 * m * energy / a2;
  s.chi3 = 2.0 * m * energy / a2;
  s.epsilon = s.chi1 + s.chi2 + s.chi3;

  s.k = wave_number(energy, m);
  s.sigma = Complex(0.0, s.k / params.a);

  // epsilon <= 0 for every valid parameter set, so the discriminant is >= 1.
  const double disc = std::sqrt(1.0 - 4.0 * s.epsilon);
  s.tau = basis.tau == TauBranch::Plus ? 0.5 + 0.5 * disc : 0.5 - 0.5 * disc;

  Complex root = std::sqrt(Complex(-s.chi1, 0.0));
  if (basis.root == RootSign::Flipped) root = -root;
  s.alpha = s.sigma + s.tau - root;
  s.beta = s.sigma + s.tau + root;
  s.gamma = 1.0 + 2.0 * s.sigma;
  return s;
}

}  // namespace dengfan
