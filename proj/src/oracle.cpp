#include "dengfan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "dengfan/errors.hpp"

namespace dengfan {

namespace {

constexpr double kNudge = 1e-9;  // fraction of a step
constexpr int kMaxDoublings = 40;

struct State {
  Complex psi;
  Complex dpsi;
};

State operator+(State l, State r) { return {l.psi + r.psi, l.dpsi + r.dpsi}; }
State operator*(double s, State v) { return {s * v.psi, s * v.dpsi}; }

double energy_scale(double energy) { return std::max(energy, 1.0); }

// Returns the final abscissa, -half_steps * h.
double run_rk4(double energy, const PotentialFn& potential, double mass, double h,
               std::size_t half_steps, State& state) {
  auto rhs = [&](double v, const State& y) -> State {
    return {y.dpsi, 2.0 * mass * (v - energy) * y.psi};
  };
  const auto n = static_cast<long>(half_steps);
  for (long i = n; i > -n; --i) {
    const double x0 = static_cast<double>(i) * h;
    const double x1 = static_cast<double>(i - 1) * h;
    const double v0 = potential(x0 - kNudge * h);
    const double vm = potential(0.5 * (x0 + x1));
    const double v1 = potential(x1 + kNudge * h);
    const State k1 = rhs(v0, state);
    const State k2 = rhs(vm, state + (-0.5 * h) * k1);
    const State k3 = rhs(vm, state + (-0.5 * h) * k2);
    const State k4 = rhs(v1, state + (-h) * k3);
    state = state + (-h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return -static_cast<double>(n) * h;
}

// Two-node plane-wave fit: psi(xa), psi(xb) -> (A, B).
std::pair<Complex, Complex> two_point_decompose(Complex psi_a, double xa, Complex psi_b,
                                                double xb, double k) {
  const Complex ea = std::exp(Complex(0.0, k * xa));
  const Complex eb = std::exp(Complex(0.0, k * xb));
  const Complex det = ea / eb - eb / ea;
  const Complex A = (psi_a / eb - psi_b / ea) / det;
  const Complex B = (ea * psi_b - eb * psi_a) / det;
  return {A, B};
}

std::pair<Complex, Complex> run_numerov(double energy, const PotentialFn& potential,
                                        double mass, double k, double h,
                                        std::size_t half_steps) {
  const auto n = static_cast<long>(half_steps);
  const double h2 = h * h / 12.0;
  auto g = [&](long i) {
    const double x = static_cast<double>(i) * h;
    const double v = 0.5 * (potential(x - kNudge * h) + potential(x + kNudge * h));
    return 2.0 * mass * (v - energy);
  };

  std::vector<Complex> psi(static_cast<std::size_t>(2 * n + 1));
  auto at = [&](long i) -> Complex& { return psi[static_cast<std::size_t>(n - i)]; };
  at(n) = std::exp(Complex(0.0, k * static_cast<double>(n) * h));
  at(n - 1) = std::exp(Complex(0.0, k * static_cast<double>(n - 1) * h));

  double g_prev = g(n);
  double g_cur = g(n - 1);
  for (long i = n - 1; i > -n; --i) {
    const double g_next = g(i - 1);
    at(i - 1) = (2.0 * (1.0 + 5.0 * h2 * g_cur) * at(i) - (1.0 - h2 * g_prev) * at(i + 1)) /
                (1.0 - h2 * g_next);
    g_prev = g_cur;
    g_cur = g_next;
  }

  // Fit over roughly a quarter wavelength, staying in the outer quarter of
  // the domain.
  const long quarter = std::lround(0.5 * std::numbers::pi / (k * h));
  const long sep = std::clamp(quarter, 1L, std::max(1L, n / 4));
  return two_point_decompose(at(-n), -static_cast<double>(n) * h, at(-n + sep),
                             -static_cast<double>(n - sep) * h, k);
}

}  // namespace

void IntegrationConfig::validate() const {
  if (!(x_max > 0.0) || !(step > 0.0) || !(decay_tol > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "integration config needs x_max, step, decay_tol > 0");
  }
  if (step > x_max / 100.0) {
    throw Error(ErrorCode::InvalidParameter, "integration step must be <= x_max / 100");
  }
  if (!(flux_tol > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "flux_tol must be > 0");
  }
}

std::pair<Complex, Complex> plane_wave_decompose(Complex psi, Complex dpsi, double k, double x) {
  if (!(k > 0.0)) {
    throw Error(ErrorCode::DegenerateBasis, "plane-wave decomposition needs k > 0");
  }
  const Complex ratio = dpsi / Complex(0.0, k);
  const Complex A = 0.5 * (psi + ratio) * std::exp(Complex(0.0, -k * x));
  const Complex B = 0.5 * (psi - ratio) * std::exp(Complex(0.0, k * x));
  return {A, B};
}

OracleResult integrate_scatter(double energy, const PotentialFn& potential, double mass,
                               const IntegrationConfig& cfg) {
  cfg.validate();
  if (!(energy > 0.0)) throw Error(ErrorCode::NonPositiveEnergy, "oracle energy must be > 0");
  if (!(mass > 0.0)) throw Error(ErrorCode::InvalidParameter, "mass must be > 0");

  OracleResult out;
  out.boundary_potential = std::max(std::abs(potential(cfg.x_max)), std::abs(potential(-cfg.x_max)));
  if (!(out.boundary_potential <= cfg.decay_tol * energy_scale(energy))) {
    throw Error(ErrorCode::BoundaryNotDecayed,
                "|V(+-x_max)| = " + std::to_string(out.boundary_potential) +
                    " exceeds decay_tol; enlarge x_max");
  }

  const double k = std::sqrt(2.0 * mass * energy);
  const auto half_steps = static_cast<std::size_t>(std::ceil(cfg.x_max / cfg.step));
  const double h = cfg.x_max / static_cast<double>(half_steps);
  out.x_max = static_cast<double>(half_steps) * h;
  out.step = h;
  out.steps = 2 * half_steps;

  Complex A, B;
  if (cfg.method == IntegratorMethod::RK4) {
    const double top = static_cast<double>(half_steps) * h;
    const Complex wave = std::exp(Complex(0.0, k * top));
    State state{wave, Complex(0.0, k) * wave};
    const double x_end = run_rk4(energy, potential, mass, h, half_steps, state);
    std::tie(A, B) = plane_wave_decompose(state.psi, state.dpsi, k, x_end);
  } else {
    std::tie(A, B) = run_numerov(energy, potential, mass, k, h, half_steps);
  }

  const double incident = std::norm(A);
  out.T = 1.0 / incident;
  out.R = std::norm(B) / incident;
  out.flux_residual = std::abs(out.R + out.T - 1.0);
  if (!(out.flux_residual <= cfg.flux_tol)) {
    throw Error(ErrorCode::StepTooCoarse,
                "flux residual " + std::to_string(out.flux_residual) + " at E = " +
                    std::to_string(energy) + " with step " + std::to_string(h));
  }
  return out;
}

IntegrationConfig default_integration_config(double energy, const BarrierParams& params) {
  params.validate();
  if (!(energy > 0.0)) throw Error(ErrorCode::NonPositiveEnergy, "oracle energy must be > 0");

  IntegrationConfig cfg;
  cfg.x_max = std::max(40.0 / params.a, 10.0 * params.x_e);
  const double bound = cfg.decay_tol * energy_scale(energy);
  auto decayed = [&](double x) {
    return std::abs(potential(x, params)) <= bound && std::abs(potential(-x, params)) <= bound;
  };
  int doublings = 0;
  while (!decayed(cfg.x_max)) {
    if (++doublings > kMaxDoublings) {
      throw Error(ErrorCode::BoundaryNotDecayed, "potential does not decay within reach");
    }
    cfg.x_max *= 2.0;
  }
  cfg.step = std::min(1e-3, 0.02 / wave_number(energy, params.m));
  return cfg;
}

OracleResult oracle_scatter(double energy, const BarrierParams& params) {
  return oracle_scatter(energy, params, default_integration_config(energy, params));
}

OracleResult oracle_scatter(double energy, const BarrierParams& params,
                            const IntegrationConfig& cfg) {
  return integrate_scatter(
      energy, [&params](double x) { return potential(x, params); }, params.m, cfg);
}

}  // namespace dengfan
