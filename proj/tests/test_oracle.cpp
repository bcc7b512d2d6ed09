#include <cmath>
#include <limits>

#include "doctest.h"

#include "dengfan/errors.hpp"
#include "dengfan/oracle.hpp"
#include "dengfan/reference_table.hpp"
#include "test_support.hpp"

using namespace dengfan;

namespace {

// T = [1 + V0^2 sinh^2(kappa L) / (4 E (V0 - E))]^-1, kappa = sqrt(2m(V0-E)).
double rectangular_transmission(double v0, double width, double e, double m) {
  const double kappa = std::sqrt(2.0 * m * (v0 - e));
  const double s = std::sinh(kappa * width);
  return 1.0 / (1.0 + v0 * v0 * s * s / (4.0 * e * (v0 - e)));
}

double rectangular(double x) { return std::abs(x) < 0.5 ? 2.0 : 0.0; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidParameter;
}

}  // namespace

TEST_CASE("closed-form rectangular barrier value") {
  // Frozen with mpmath: 1 / (1 + sinh(sqrt 2)^2).
  CHECK(rectangular_transmission(2.0, 1.0, 1.0, 1.0) ==
        doctest::Approx(0.21077109396613054).epsilon(1e-14));
}

TEST_CASE("plane-wave decomposition") {
  const double k = 1.3, x = 0.7;
  const Complex e = std::exp(Complex(0.0, k * x));
  auto [A, B] = plane_wave_decompose(e, Complex(0.0, k) * e, k, x);
  CHECK(std::abs(A - 1.0) < 1e-15);
  CHECK(std::abs(B) < 1e-15);

  std::tie(A, B) = plane_wave_decompose(std::cos(k * x), -k * std::sin(k * x), k, x);
  CHECK(std::abs(A - 0.5) < 1e-15);
  CHECK(std::abs(B - 0.5) < 1e-15);

  test::Draws d(3);
  for (int i = 0; i < 1000; ++i) {
    const Complex a0 = d.complex_box(-5, 5, -5, 5), b0 = d.complex_box(-5, 5, -5, 5);
    const double kk = d.uniform(0.01, 20.0), xx = d.uniform(-100.0, 100.0);
    const Complex ep = std::exp(Complex(0.0, kk * xx)), em = 1.0 / ep;
    const Complex psi = a0 * ep + b0 * em;
    const Complex dpsi = Complex(0.0, kk) * (a0 * ep - b0 * em);
    const auto [a1, b1] = plane_wave_decompose(psi, dpsi, kk, xx);
    CHECK(std::abs(a1 - a0) <= 1e-12 * std::max(1.0, std::abs(a0)));
    CHECK(std::abs(b1 - b0) <= 1e-12 * std::max(1.0, std::abs(b0)));
  }

  CHECK(code_of([] { plane_wave_decompose(1.0, 0.0, 0.0, 0.0); }) == ErrorCode::DegenerateBasis);
}

TEST_CASE("free propagation") {
  IntegrationConfig cfg;
  cfg.x_max = 10.0;
  for (auto method : {IntegratorMethod::RK4, IntegratorMethod::Numerov}) {
    cfg.method = method;
    const auto r = integrate_scatter(0.7, [](double) { return 0.0; }, 1.0, cfg);
    CHECK(r.T == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.R < 1e-18);
  }
}

TEST_CASE("rectangular barrier against the closed form") {
  IntegrationConfig cfg;
  cfg.x_max = 10.0;
  const double want = rectangular_transmission(2.0, 1.0, 1.0, 1.0);
  const auto rk = integrate_scatter(1.0, rectangular, 1.0, cfg);
  CHECK(std::abs(rk.T - want) <= 1e-6);
  CHECK(std::abs(rk.R - (1.0 - want)) <= 1e-6);
  CHECK(rk.flux_residual <= 1e-6);

  cfg.method = IntegratorMethod::Numerov;
  const auto nu = integrate_scatter(1.0, rectangular, 1.0, cfg);
  CHECK(std::abs(nu.T - want) <= 1e-6);
}

TEST_CASE("Deng-Fan barrier at E = 0.05") {
  const auto r = oracle_scatter(0.05, kReferenceParams);
  CHECK(std::abs(r.T - 0.0209209) <= 1e-5);
  CHECK(r.flux_residual <= 1e-6);
  CHECK(r.boundary_potential <= 1e-12);

  auto cfg = default_integration_config(0.05, kReferenceParams);
  cfg.method = IntegratorMethod::Numerov;
  CHECK(std::abs(oracle_scatter(0.05, kReferenceParams, cfg).T - 0.0209209) <= 1e-5);
}

TEST_CASE("default integration config") {
  const auto cfg = default_integration_config(0.05, kReferenceParams);
  CHECK(cfg.x_max == doctest::Approx(50.0));
  CHECK(cfg.step == doctest::Approx(1e-3));
  CHECK(cfg.method == IntegratorMethod::RK4);

  // Large k shrinks the step: 0.02/k with k = sqrt(2 * 1000).
  const auto hot = default_integration_config(1000.0, kReferenceParams);
  CHECK(hot.step == doctest::Approx(0.02 / std::sqrt(2000.0)));

  // A deep well leaves |V(50)| ~ 1e-9, which forces doubling.
  BarrierParams deep = kReferenceParams;
  deep.v0 = 1e8;
  const auto w = default_integration_config(0.05, deep);
  CHECK(w.x_max > 50.0);
  CHECK(std::abs(potential(w.x_max, deep)) <= 1e-12);
  CHECK(std::abs(potential(w.x_max / 2.0, deep)) > 1e-12);
}

TEST_CASE("oracle error paths") {
  IntegrationConfig cfg;
  cfg.x_max = 10.0;
  CHECK(code_of([&] { integrate_scatter(1.0, [](double) { return 1.0; }, 1.0, cfg); }) ==
        ErrorCode::BoundaryNotDecayed);
  CHECK(code_of([&] { integrate_scatter(0.0, rectangular, 1.0, cfg); }) ==
        ErrorCode::NonPositiveEnergy);

  IntegrationConfig bad = cfg;
  bad.step = 0.2;  // > x_max / 100
  CHECK(code_of([&] { integrate_scatter(1.0, rectangular, 1.0, bad); }) ==
        ErrorCode::InvalidParameter);

  auto coarse = default_integration_config(0.05, kReferenceParams);
  coarse.step = 0.4;
  CHECK(code_of([&] { oracle_scatter(0.05, kReferenceParams, coarse); }) ==
        ErrorCode::StepTooCoarse);
}

TEST_CASE("RK4 convergence order") {
  auto cfg = default_integration_config(0.05, kReferenceParams);
  cfg.flux_tol = std::numeric_limits<double>::infinity();
  double residual[3], transmission[3];
  const double steps[3] = {0.04, 0.02, 0.01};
  for (int i = 0; i < 3; ++i) {
    cfg.step = steps[i];
    const auto r = oracle_scatter(0.05, kReferenceParams, cfg);
    residual[i] = r.flux_residual;
    transmission[i] = r.T;
  }
  const double ratio1 = residual[0] / residual[1];
  const double ratio2 = residual[1] / residual[2];
  MESSAGE("flux residual ratios: " << ratio1 << ", " << ratio2);
  // |amplification| of RK4 on an oscillator is 1 - (kh)^6/144 per step, so the
  // flux drift over the whole domain goes like h^5 while T itself is h^4.
  CHECK(ratio1 > 24.0);
  CHECK(ratio1 < 40.0);
  CHECK(ratio2 > 24.0);
  CHECK(ratio2 < 40.0);

  const double d1 = std::abs(transmission[0] - transmission[1]);
  const double d2 = std::abs(transmission[1] - transmission[2]);
  CHECK(d1 / d2 > 10.0);
  CHECK(d1 / d2 < 24.0);
}
