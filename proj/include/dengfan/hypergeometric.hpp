#pragma once

#include <complex>
#include <cstddef>

namespace dengfan {

using Complex = std::complex<double>;

enum class Hyp2F1Method {
  Auto,        ///< power series (Euler-transformed if it cancels badly),
               ///< switching to the 1-z connection for |z| >= 0.9
  Series,      ///< direct power series only
  Connection,  ///< 1-z connection formula; throws ConnectionDegenerate if c-a-b is an integer
};

enum class Hyp2F1Path { Series, Euler, Connection, GaussSum };

struct Hyp2F1Request {
  Complex a;
  Complex b;
  Complex c;
  Complex z;
  double rel_tol = 1e-15;
  std::size_t max_terms = 20000;
  Hyp2F1Method method = Hyp2F1Method::Auto;
};

struct Hyp2F1Result {
  Complex value;
  Hyp2F1Path path = Hyp2F1Path::Series;
  std::size_t terms = 0;
  // Set when Auto wanted the connection path but c-a-b was an integer.
  bool connection_degenerate = false;
};

/// Gauss hypergeometric function 2F1(a, b; c; z) for |z| < 1, and z = 1 via
/// Gauss's summation when Re(c - a - b) > 0.
///
/// The series is summed until the estimated geometric tail falls below
/// rel_tol * |partial sum| on two consecutive terms. Parameters are put in a canonical order first,
/// so swapping a and b gives bit-identical results.
Hyp2F1Result gauss_2f1_detailed(const Hyp2F1Request& req);

Complex gauss_2f1(const Hyp2F1Request& req);

inline Complex gauss_2f1(Complex a, Complex b, Complex c, Complex z) {
  return gauss_2f1(Hyp2F1Request{a, b, c, z});
}

/// d/dz 2F1(a, b; c; z) = (ab/c) 2F1(a+1, b+1; c+1; z).
Complex gauss_2f1_derivative(Complex a, Complex b, Complex c, Complex z);

/// Principal branch of log Gamma: analytic off the negative real axis and
/// satisfying lnG(z+1) = lnG(z) + log(z) with the principal log.
/// Lanczos approximation, g = 7, nine coefficients.
Complex lngamma_complex(Complex z);

/// True when z is (numerically) 0, -1, -2, ...
bool is_nonpositive_integer(Complex z);

}  // namespace dengfan
