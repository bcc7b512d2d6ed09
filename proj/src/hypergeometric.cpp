#include "dengfan/hypergeometric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "dengfan/errors.hpp"

namespace dengfan {

namespace {

using LongComplex = std::complex<long double>;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Auto switches to the connection formula beyond this |z|.
constexpr double kConnectionThreshold = 0.9;
// c-a-b closer than this to an integer counts as degenerate: the two gamma
// ratios then cancel catastrophically.
constexpr double kDegenerateDistance = 1e-6;
// Peak term over |sum| beyond which Auto tries the Euler-transformed series.
constexpr long double kCancellationLimit = 1e3L;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool near_integer(Complex z, double tol) {
  return std::abs(z.imag()) <= tol && std::abs(z.real() - std::round(z.real())) <= tol;
}

// Lanczos for Re(z) >= 0.5.
Complex lngamma_lanczos(Complex z) {
  z -= 1.0;
  Complex x = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    x += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  }
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// peak, when given, receives the largest |term| seen; peak / |sum| measures
// how many digits were lost to cancellation.
Hyp2F1Result sum_series(Complex a, Complex b, Complex c, Complex z, double rel_tol,
                        std::size_t max_terms, long double* peak = nullptr) {
  const LongComplex la(a), lb(b), lc(c), lz(z);
  LongComplex sum = 1.0L;
  LongComplex term = 1.0L;
  long double prev = 1.0L;
  long double prev_tail = INFINITY;
  const long double lzabs = std::abs(lz);
  for (std::size_t n = 0; n < max_terms; ++n) {
    const long double nn = static_cast<long double>(n);
    term *= (la + nn) * (lb + nn) / ((lc + nn) * (nn + 1.0L)) * lz;
    sum += term;
    const long double mag = std::abs(term);
    if (peak) *peak = std::max(*peak, mag);
    if (mag == 0.0L) return {Complex(sum), Hyp2F1Path::Series, n + 1};
    // The remaining terms shrink roughly geometrically, so bound the tail by
    // mag * r / (1 - r) rather than by the last term alone.
    const long double ratio = std::max(mag / prev, lzabs);
    if (ratio < 1.0L) {
      const long double tail = mag * std::max(1.0L, ratio / (1.0L - ratio));
      const long double scale = rel_tol * std::abs(sum);
      if (tail <= scale && prev_tail <= scale) return {Complex(sum), Hyp2F1Path::Series, n + 1};
      prev_tail = tail;
    } else {
      prev_tail = INFINITY;
    }
    prev = mag;
  }
  throw Error(ErrorCode::NoConvergence,
              "2F1 series did not reach rel_tol within " + std::to_string(max_terms) + " terms");
}

// Direct series, or Euler's (1-z)^(c-a-b) 2F1(c-a, c-b; c; z) when the direct
// terms cancel badly. Large negative a (the tau- basis) is the usual culprit.
Hyp2F1Result series_auto(Complex a, Complex b, Complex c, Complex z, double rel_tol,
                         std::size_t max_terms) {
  long double peak = 1.0L;
  auto direct = sum_series(a, b, c, z, rel_tol, max_terms, &peak);
  const long double lost = peak / std::abs(LongComplex(direct.value));
  if (!(lost > kCancellationLimit)) return direct;
  long double euler_peak = 1.0L;
  Hyp2F1Result euler;
  try {
    euler = sum_series(c - a, c - b, c, z, rel_tol, max_terms, &euler_peak);
  } catch (const Error&) {
    return direct;
  }
  const long double euler_lost = euler_peak / std::abs(LongComplex(euler.value));
  if (!(euler_lost < lost)) return direct;
  euler.value *= std::pow(1.0 - z, c - a - b);
  euler.path = Hyp2F1Path::Euler;
  euler.terms += direct.terms;
  return euler;
}

// Gamma(num1) Gamma(num2) / (Gamma(den1) Gamma(den2)); zero when a
// denominator argument sits on a pole.
Complex gamma_ratio(Complex num1, Complex num2, Complex den1, Complex den2) {
  if (is_nonpositive_integer(den1) || is_nonpositive_integer(den2)) return 0.0;
  return std::exp(lngamma_complex(num1) + lngamma_complex(num2) - lngamma_complex(den1) -
                  lngamma_complex(den2));
}

Hyp2F1Result connection(Complex a, Complex b, Complex c, Complex z, double rel_tol,
                        std::size_t max_terms) {
  const Complex w = 1.0 - z;
  if (!(std::abs(w) < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "1-z connection requires |1 - z| < 1");
  }
  const Complex s = c - a - b;
  if (near_integer(s, kDegenerateDistance)) {
    throw Error(ErrorCode::ConnectionDegenerate, "c - a - b is an integer");
  }
  const Complex first_coeff = gamma_ratio(c, s, c - a, c - b);
  const Complex second_coeff = gamma_ratio(c, -s, a, b);

  Hyp2F1Result out{0.0, Hyp2F1Path::Connection, 0};
  if (first_coeff != 0.0) {
    const auto f = sum_series(a, b, 1.0 - s, w, rel_tol, max_terms);
    out.value += first_coeff * f.value;
    out.terms += f.terms;
  }
  if (second_coeff != 0.0) {
    const auto f = sum_series(c - a, c - b, 1.0 + s, w, rel_tol, max_terms);
    out.value += second_coeff * std::pow(w, s) * f.value;
    out.terms += f.terms;
  }
  return out;
}

}  // namespace

bool is_nonpositive_integer(Complex z) {
  const double tol = 1e-14 * std::max(1.0, std::abs(z.real()));
  return z.real() < 0.5 && near_integer(z, tol);
}

Complex lngamma_complex(Complex z) {
  if (!finite(z)) throw Error(ErrorCode::InvalidParameter, "lngamma argument must be finite");
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorCode::PoleAtNonPositiveInteger, "Gamma has a pole at non-positive integers");
  }
  if (z.real() >= 0.5) return lngamma_lanczos(z);

  // Shift right with lnG(z) = lnG(z+n) - sum log(z+k); principal logs keep the
  // branch cut on the negative real axis.
  const auto n = static_cast<long>(std::ceil(0.5 - z.real()));
  Complex shift = 0.0;
  for (long k = 0; k < n; ++k) shift += std::log(z + static_cast<double>(k));
  return lngamma_lanczos(z + static_cast<double>(n)) - shift;
}

Hyp2F1Result gauss_2f1_detailed(const Hyp2F1Request& req) {
  if (!finite(req.a) || !finite(req.b) || !finite(req.c) || !finite(req.z)) {
    throw Error(ErrorCode::InvalidParameter, "2F1 arguments must be finite");
  }
  if (!(req.rel_tol > 0.0) || req.max_terms < 1) {
    throw Error(ErrorCode::InvalidParameter, "2F1 needs rel_tol > 0 and max_terms >= 1");
  }
  if (is_nonpositive_integer(req.c)) {
    throw Error(ErrorCode::PoleAtC, "c is zero or a negative integer");
  }

  Complex a = req.a;
  Complex b = req.b;
  if (b.real() < a.real() || (b.real() == a.real() && b.imag() < a.imag())) std::swap(a, b);
  const Complex c = req.c;
  const Complex z = req.z;

  if (z == 0.0) return {1.0, Hyp2F1Path::Series, 0};

  const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (terminating) return sum_series(a, b, c, z, req.rel_tol, req.max_terms);

  if (z == 1.0) {
    if (!((c - a - b).real() > 0.0)) {
      throw Error(ErrorCode::NoConvergence, "2F1 diverges at z = 1 unless Re(c-a-b) > 0");
    }
    return {gamma_ratio(c, c - a - b, c - a, c - b), Hyp2F1Path::GaussSum, 0};
  }
  if (!(std::abs(z) < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "2F1 is only evaluated for |z| < 1 or z = 1");
  }

  switch (req.method) {
    case Hyp2F1Method::Series:
      return sum_series(a, b, c, z, req.rel_tol, req.max_terms);
    case Hyp2F1Method::Connection:
      return connection(a, b, c, z, req.rel_tol, req.max_terms);
    case Hyp2F1Method::Auto:
      break;
  }

  if (std::abs(z) < kConnectionThreshold || !(std::abs(1.0 - z) < 1.0)) {
    return series_auto(a, b, c, z, req.rel_tol, req.max_terms);
  }
  if (near_integer(c - a - b, kDegenerateDistance)) {
    auto out = series_auto(a, b, c, z, req.rel_tol, req.max_terms);
    out.connection_degenerate = true;
    return out;
  }
  return connection(a, b, c, z, req.rel_tol, req.max_terms);
}

Complex gauss_2f1(const Hyp2F1Request& req) { return gauss_2f1_detailed(req).value; }

Complex gauss_2f1_derivative(Complex a, Complex b, Complex c, Complex z) {
  if (is_nonpositive_integer(c)) {
    throw Error(ErrorCode::PoleAtC, "c is zero or a negative integer");
  }
  return a * b / c * gauss_2f1(a + 1.0, b + 1.0, c + 1.0, z);
}

}  // namespace dengfan
