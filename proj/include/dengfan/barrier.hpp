#pragma once

#include <complex>

namespace dengfan {

using Complex = std::complex<double>;

/// Physical inputs of the symmetric barrier-type shifted Deng-Fan potential.
/// Atomic-style units with hbar = 1.
struct BarrierParams {
  double v0 = 1.25;       ///< dissociation energy
  double a = 0.8;         ///< inverse range
  double x_e = 0.8;       ///< equilibrium distance
  double q = 0.8;         ///< deformation for x < 0
  double q_tilde = 0.8;   ///< deformation for x > 0
  double m = 1.0;         ///< particle mass

  bool symmetric() const noexcept { return q == q_tilde; }

  /// Throws Error{InvalidParameter} unless v0 >= 0, a > 0, x_e >= 0, m > 0
  /// and both deformations lie strictly inside (0, 1).
  void validate() const;

  friend bool operator==(const BarrierParams&, const BarrierParams&) = default;
};

enum class Side { Left, Right };
enum class TauBranch { Plus, Minus };
/// Sign in front of sqrt(-chi1); Flipped exchanges alpha and beta.
enum class RootSign { Principal, Flipped };

struct BasisChoice {
  TauBranch tau = TauBranch::Plus;
  RootSign root = RootSign::Principal;
};

struct DerivedShape {
  double b = 0.0;
  double v_max = 0.0;
};

/// Per-region parameter algebra of the hypergeometric solution. For the
/// right region chi1..chi3 hold the quantities usually written chi4..chi6.
struct SideCoefficients {
  Side side = Side::Left;
  double energy = 0.0;
  double chi1 = 0.0;
  double chi2 = 0.0;
  double chi3 = 0.0;
  double epsilon = 0.0;
  Complex sigma;
  double tau = 0.0;
  Complex alpha;
  Complex beta;
  Complex gamma;
  double k = 0.0;
};

/// b = e^{a x_e} - q. Always built from the left deformation q; both regions
/// share it.
double compute_b(const BarrierParams& params);

DerivedShape derived_shape(const BarrierParams& params);

/// V(x) with deformation q for x < 0 and q_tilde for x >= 0.
double potential(double x, const BarrierParams& params);

double wave_number(double energy, double mass);

SideCoefficients side_coefficients(double energy, const BarrierParams& params,
                                   Side side, BasisChoice basis = {});

inline SideCoefficients side_coefficients(double energy,
                                          const BarrierParams& params,
                                          Side side, TauBranch tau) {
  return side_coefficients(energy, params, side, BasisChoice{tau, RootSign::Principal});
}

}  // namespace dengfan
