#pragma once

// Scalar special functions used by the propagator, wavefunction and
// verification code: log-gamma, generalized Laguerre polynomials, modified
// Bessel functions I of real order and complex argument, and the deformed
// exponential of Wigner-Dunkl mechanics.
//
// All functions are pure and may be called concurrently.

#include <complex>

namespace dunkl {

using Complex = std::complex<double>;

/// |z| up to which I_order(z) is summed from its ascending series; larger
/// arguments use the large-argument (Hankel) expansion.
inline constexpr double kBesselSeriesRadius = 20.0;

/// Largest |Re z| accepted by the Bessel routines. e^700 is still finite in
/// double precision; beyond that the result overflows and OverflowError is
/// thrown instead.
inline constexpr double kBesselOverflowBudget = 700.0;

/// True when both parts are finite.
bool is_finite(Complex z);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Generalized Laguerre polynomial L_n^theta(x) by the forward three-term
/// recurrence. Requires n >= 0 and theta > -1.
double laguerre(int n, double theta, double x);

/// Modified Bessel function I_order(z), principal branch
/// (z^order = exp(order * Log z), Arg z in (-pi, pi]). order >= -1/2.
Complex bessel_i(double order, Complex z);

/// Regularized form (z/2)^(-order) I_order(z). This is an entire, even
/// function of z with value 1/Gamma(order+1) at the origin, so it carries no
/// branch ambiguity.
Complex bessel_i_scaled(double order, Complex z);

/// Ascending series of bessel_i_scaled, accumulated in extended precision.
/// Exposed so the two regimes can be cross-checked.
Complex bessel_i_scaled_series(double order, Complex z);

/// Large-|z| expansion of bessel_i_scaled (both exponentials retained, so it
/// stays valid on and beyond the imaginary axis).
Complex bessel_i_scaled_asymptotic(double order, Complex z);

/// Deformed exponential
///   Gamma(nu+1/2) (2/w)^(nu-1/2) [I_{nu-1/2}(w) + sign I_{nu+1/2}(w)].
/// `sign` is the real sign sgn(x_i x_f) in {-1, 0, +1}; `w` carries the
/// modulus and the complex phase. Evaluated through bessel_i_scaled, which
/// agrees with the principal-branch product everywhere except on the
/// negative real axis of w and is continuous at w = 0 (value 1). For real
/// w > 0 with sign = -1 the two Bessel terms nearly cancel, so that case uses
/// the equivalent e^{-w} 1F1(nu; 2nu+1; 2w) series instead.
Complex deformed_exp(double nu, int sign, Complex w);

/// Relative gap |LHS_N - RHS| / |RHS| of the Hille-Hardy bilinear formula
///   sum_{n<N} n!/Gamma(n+theta+1) L_n(X) L_n(Y) Z^n e^{-(X+Y)/2}
///     = (XYZ)^{-theta/2}/(1-Z) exp[-(X+Y)(1+Z)/(2(1-Z))] I_theta(2 sqrt(XYZ)/(1-Z)).
/// Requires theta > -1, X, Y > 0, |Z| < 1 and N >= 1.
double hille_hardy_gap(double theta, double X, double Y, Complex Z, int N);

}  // namespace dunkl
