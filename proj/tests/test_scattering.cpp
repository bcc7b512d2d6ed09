#include <cmath>
#include <vector>

#include "doctest.h"

#include "dengfan/errors.hpp"
#include "dengfan/hypergeometric.hpp"
#include "dengfan/oracle.hpp"
#include "dengfan/reference_table.hpp"
#include "dengfan/scattering.hpp"
#include "test_support.hpp"

using namespace dengfan;

namespace {

// Plain long-double summation of a fixed number of terms, no stopping rule.
Complex brute_force_2f1(Complex a, Complex b, Complex c, double z, int terms) {
  using LC = std::complex<long double>;
  LC sum = 1.0L, term = 1.0L;
  for (int n = 0; n < terms; ++n) {
    const long double nn = n;
    term *= (LC(a) + nn) * (LC(b) + nn) / ((LC(c) + nn) * (nn + 1.0L)) * static_cast<long double>(z);
    sum += term;
  }
  return Complex(sum);
}

}  // namespace

TEST_CASE("reference table is reproduced in corrected mode") {
  for (const auto& row : kReferenceTable) {
    const auto r = scatter(row.energy, kReferenceParams);
    CHECK(std::abs(r.T - row.T) <= 1e-5);
    CHECK(std::abs(r.R - row.R) <= 1e-5);
    CHECK(r.unitarity_residual <= 1e-9);
  }
}

TEST_CASE("corrected mode against an mpmath prototype") {
  // Independent evaluation with mpmath.hyp2f1 at 30 digits.
  struct Row {
    double e, T, R;
  };
  for (const Row row : {Row{0.005, 0.0992153077, 0.900784692}, Row{0.01, 0.0559169882, 0.944083012},
                        Row{0.05, 0.0209208872, 0.979079113}, Row{0.1, 0.0176180372, 0.982381963}}) {
    const auto r = scatter(row.e, kReferenceParams);
    CHECK(r.T == doctest::Approx(row.T).epsilon(2e-9));
    CHECK(r.R == doctest::Approx(row.R).epsilon(2e-9));
  }
}

TEST_CASE("literal mode breaks flux conservation") {
  const auto r = scatter(0.005, kReferenceParams, MatchingMode::PaperLiteral);
  CHECK(r.mode == MatchingMode::PaperLiteral);
  CHECK(r.R > 1.0);
  CHECK(r.unitarity_residual > 1e-3);
  CHECK(std::abs(r.T - kReferenceTable[0].T) > 1e-2);
}

TEST_CASE("match coefficients structure") {
  const auto mc = match_coefficients(0.05, kReferenceParams);
  CHECK(mc.rho1 == 0.8);
  CHECK(mc.rho2 == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(mc.rho3 == 0.8);
  CHECK(mc.rho4 == doctest::Approx(0.2).epsilon(1e-15));
  // Symmetric barrier: right-hand quantities repeat the left-hand ones.
  CHECK(mc.zeta3 == mc.zeta2);
  CHECK(mc.lambda3 == mc.lambda2);
  CHECK(mc.c6_printed != mc.c6);

  const Complex al = mc.left.alpha, be = mc.left.beta, ga = mc.left.gamma;
  const Complex alt = mc.right.alpha, bet = mc.right.beta, gat = mc.right.gamma;
  const Complex expect[] = {
      brute_force_2f1(al, be, ga, 0.8, 100000),
      brute_force_2f1(al + 1.0 - ga, be + 1.0 - ga, 2.0 - ga, 0.8, 100000),
      brute_force_2f1(alt + 1.0 - gat, bet + 1.0 - gat, 2.0 - gat, 0.8, 100000),
      brute_force_2f1(al + 1.0, be + 1.0, ga + 1.0, 0.8, 100000),
      brute_force_2f1(al + 2.0 - ga, be + 2.0 - ga, 3.0 - ga, 0.8, 100000),
      brute_force_2f1(alt + 2.0 - gat, bet + 2.0 - gat, 3.0 - gat, 0.8, 100000)};
  const Complex got[] = {mc.zeta1, mc.zeta2, mc.zeta3, mc.zeta4, mc.zeta5, mc.zeta6};
  for (int i = 0; i < 6; ++i) CHECK(test::rel_err(got[i], expect[i]) < 1e-13);

  CHECK(std::abs(mc.lambda1 - al * be / ga) == 0.0);
}

TEST_CASE("c4..c6 are y-derivatives of the region solutions") {
  // Central differences of y^s (1-y)^tau 2F1(...) around y = rho.
  const auto mc = match_coefficients(0.03, kReferenceParams);
  const auto& L = mc.left;
  auto psi1 = [&](double y) {
    return std::pow(y, L.sigma) * std::pow(1.0 - y, L.tau) * gauss_2f1(L.alpha, L.beta, L.gamma, y);
  };
  auto psi2 = [&](double y) {
    return std::pow(y, -L.sigma) * std::pow(1.0 - y, L.tau) *
           gauss_2f1(L.alpha + 1.0 - L.gamma, L.beta + 1.0 - L.gamma, 2.0 - L.gamma, y);
  };
  const double h = 1e-6;
  CHECK(test::rel_err(mc.c4, (psi1(0.8 + h) - psi1(0.8 - h)) / (2 * h)) < 1e-7);
  CHECK(test::rel_err(mc.c5, (psi2(0.8 + h) - psi2(0.8 - h)) / (2 * h)) < 1e-7);
  // Symmetric case: the right solution has the same form as psi2.
  CHECK(test::rel_err(mc.c6, (psi2(0.8 + h) - psi2(0.8 - h)) / (2 * h)) < 1e-7);
}

TEST_CASE("free particle transmits fully") {
  BarrierParams p = kReferenceParams;
  p.v0 = 0.0;
  for (double e : {0.01, 0.5, 3.0}) {
    const auto r = scatter(e, p);
    CHECK(r.T == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.R < 1e-20);
  }
}

TEST_CASE("transmission tends to 1 as V0 shrinks") {
  double prev_gap = 1.0;
  for (int k = 0; k < 12; ++k) {
    BarrierParams p = kReferenceParams;
    p.v0 = 0.05 * std::pow(0.5, k);
    const double gap = 1.0 - scatter(0.05, p).T;
    CHECK(gap >= 0.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-4);
}

TEST_CASE("R and T do not depend on the basis choice") {
  test::Draws d(99);
  for (int i = 0; i < 30; ++i) {
    BarrierParams p{d.uniform(0.0, 2.0),  d.uniform(0.4, 1.5), d.uniform(0.0, 1.5),
                    d.uniform(0.2, 0.85), d.uniform(0.2, 0.85), 1.0};
    const double e = std::exp(d.uniform(std::log(1e-3), std::log(20.0)));
    const auto base = solve_amplitudes(match_coefficients(e, p, {}, {}));
    for (auto tl : {TauBranch::Plus, TauBranch::Minus}) {
      for (auto tr : {TauBranch::Plus, TauBranch::Minus}) {
        for (auto rl : {RootSign::Principal, RootSign::Flipped}) {
          for (auto rr : {RootSign::Principal, RootSign::Flipped}) {
            const auto r = solve_amplitudes(match_coefficients(e, p, {tl, rl}, {tr, rr}));
            CHECK(std::abs(r.T - base.T) <= 1e-10);
            CHECK(std::abs(r.R - base.R) <= 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("asymmetric barrier conserves flux and matches the oracle") {
  for (auto [q, qt] : {std::pair{0.8, 0.7}, std::pair{0.7, 0.8}, std::pair{0.5, 0.9}}) {
    BarrierParams p = kReferenceParams;
    p.q = q;
    p.q_tilde = qt;
    for (double e : {0.01, 0.2, 2.0}) {
      const auto a = scatter(e, p);
      CHECK(a.unitarity_residual <= 1e-9);
      const auto o = oracle_scatter(e, p);
      CHECK(std::abs(a.T - o.T) <= 1e-6);
      CHECK(std::abs(a.R - o.R) <= 1e-6);
    }
  }
}

TEST_CASE("incidence from the right gives the same transmission") {
  for (double qt : {0.8, 0.6}) {
    BarrierParams p = kReferenceParams;
    p.q_tilde = qt;
    for (double e : {0.02, 0.4}) {
      const auto a = scatter(e, p);
      auto cfg = default_integration_config(e, p);
      const auto mirrored = integrate_scatter(
          e, [&](double x) { return potential(-x, p); }, p.m, cfg);
      CHECK(std::abs(a.T - mirrored.T) <= 1e-6);
    }
  }
}

TEST_CASE("singular systems are reported") {
  MatchCoefficients mc;
  mc.rho1 = mc.rho3 = 0.5;
  for (auto mode : {MatchingMode::CorrectedMatching, MatchingMode::PaperLiteral}) {
    try {
      solve_amplitudes(mc, mode);
      FAIL("expected SingularMatching");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SingularMatching);
    }
  }
}

TEST_CASE("scan keeps order and is independent of the worker count") {
  std::vector<double> grid;
  for (int i = 1; i <= 64; ++i) grid.push_back(0.01 * i * i);
  const auto serial = scan(grid, kReferenceParams, MatchingMode::CorrectedMatching, 1);
  const auto parallel = scan(grid, kReferenceParams, MatchingMode::CorrectedMatching, 8);
  REQUIRE(serial.size() == grid.size());
  REQUIRE(parallel.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(serial[i].energy == grid[i]);
    REQUIRE(serial[i].ok());
    REQUIRE(parallel[i].ok());
    CHECK(serial[i].result->T == parallel[i].result->T);
    CHECK(serial[i].result->R == parallel[i].result->R);
  }

  const double single[] = {0.05};
  const auto one = scan(single, kReferenceParams);
  REQUIRE(one.size() == 1);
  const auto direct = scatter(0.05, kReferenceParams);
  CHECK(one[0].result->T == direct.T);
  CHECK(one[0].result->R == direct.R);
  CHECK(one[0].result->r_amp == direct.r_amp);
}

TEST_CASE("scan rejects malformed grids") {
  const double decreasing[] = {0.2, 0.1};
  const double nonpositive[] = {0.0, 0.1};
  const double repeated[] = {0.1, 0.1};
  for (std::span<const double> g : {std::span<const double>(decreasing),
                                    std::span<const double>(nonpositive),
                                    std::span<const double>(repeated)}) {
    try {
      scan(g, kReferenceParams);
      FAIL("expected InvalidParameter");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidParameter);
    }
  }
}

TEST_CASE("high energies approach full transmission") {
  const double vmax = derived_shape(kReferenceParams).v_max;
  CHECK(scatter(5.0 * vmax, kReferenceParams).T >= 0.99);
  double prev = 0.0;
  for (int i = 0; i <= 30; ++i) {
    const double e = vmax * std::pow(50.0, i / 30.0);
    const double t = scatter(e, kReferenceParams).T;
    CHECK(t > prev);
    CHECK(t <= 1.0 + 1e-12);
    prev = t;
  }
}
