#pragma once

// Exact propagators of the Wigner-Dunkl oscillator with time-dependent mass
// and frequency. The full kernel splits into reflection sectors,
//
//   K(x_f, t_f; x_i, t_i) = K_+ + sgn(x_f x_i) K_-,
//
// normalized against the Dunkl measure |x|^{2 nu} dx. Every closed form is
// evaluated only inside the first caustic cell 0 < S < pi.

#include "dunkl/specfun.hpp"
#include "dunkl/tdsystem.hpp"

namespace dunkl {

/// Reflection sector. e = +1 (even) or -1 (odd); lambda = nu - e/2 is both
/// the centrifugal index and the Bessel order (nu - 1/2 even, nu + 1/2 odd).
struct Parity {
  int e;
  double lambda;

  static Parity even(double nu) { return {+1, nu - 0.5}; }
  static Parity odd(double nu) { return {-1, nu + 0.5}; }
  static Parity from_sign(int e, double nu);

  double bessel_order() const { return lambda; }
  bool is_even() const { return e > 0; }
  const char* name() const { return e > 0 ? "even" : "odd"; }
};

struct KernelQuery {
  double x_i;
  double t_i;
  double x_f;
  double t_f;
  PhysicsConfig config;
};

/// Values of the auxiliary solution and the mass at both ends of a time
/// interval; everything a kernel needs beyond the phase time.
struct EndpointData {
  double rho_i;
  double rho_f;
  double rho_dot_i;
  double rho_dot_f;
  double m_i;
  double m_f;
};

EndpointData endpoint_data(const Scenario& scenario, const AuxSolution& aux, double t_i,
                           double t_f);

/// Phase time for a query, already checked against the caustic policy:
/// CausticError unless 0 < S < pi with |sin S| >= 1e-8.
double checked_phase_time(const Scenario& scenario, const AuxSolution& aux, double t_i,
                          double t_f);

/// Throws CausticError when |sin S| < 1e-8. Complex S is allowed so that
/// damped (S - i eps) and Wick-rotated (S = -i tau) evaluations share the
/// code path.
void check_caustic(Complex S);

/// Kernel of one parity sector in the transformed coordinates Q = |x|/rho:
///   (rho_f rho_i)^{-(nu+1/2)} (Q_f Q_i)^{-(nu-1/2)}
///   exp[(i/2hbar)(m_f rho_f rho'_f Q_f^2 - m_i rho_i rho'_i Q_i^2)]
///   / (2 i hbar sin S) exp[-(Q_i^2+Q_f^2) cot S / (2 i hbar)]
///   I_lambda(Q_i Q_f / (i hbar sin S)).
Complex kernel_q(const Parity& parity, double Q_i, double Q_f, Complex S, const EndpointData& ends,
                 const PhysicsConfig& config);

/// x-space sector kernel K_+ (even) or K_- (odd). Depends on |x_i|, |x_f|
/// only; DomainError when an endpoint is zero.
Complex kernel_radial(const Parity& parity, const KernelQuery& q, const Scenario& scenario,
                      const AuxSolution& aux);

/// Same as kernel_radial with precomputed endpoint data and a (possibly
/// complexified) phase time.
Complex kernel_radial_at(const Parity& parity, double x_i, double x_f, const EndpointData& ends,
                         Complex S, const PhysicsConfig& config);

/// Analytic continuation of a sector kernel to complex radial coordinates,
/// written through the entire function bessel_i_scaled so no branch cut
/// crosses the first quadrant. For real positive coordinates it equals
/// kernel_radial_at. Used for contour-rotated compositions.
Complex sector_kernel_analytic(const Parity& parity, Complex y_i, Complex y_f,
                               const EndpointData& ends, Complex S, const PhysicsConfig& config);

struct KernelParts {
  Complex full;
  Complex plus;
  Complex minus;
};

/// K = K_+ + sgn(x_f x_i) K_-, with the parts.
KernelParts kernel_parts(const KernelQuery& q, const Scenario& scenario, const AuxSolution& aux);
KernelParts kernel_parts_at(double x_i, double x_f, const EndpointData& ends, Complex S,
                            const PhysicsConfig& config);

Complex kernel_full(const KernelQuery& q, const Scenario& scenario, const AuxSolution& aux);

/// kernel_full with the phase time replaced by S (e.g. S - i eps).
Complex kernel_full_at_phase(const KernelQuery& q, const Scenario& scenario,
                             const AuxSolution& aux, Complex S);

/// Deformed-exponential form of the full kernel:
///   Gamma(nu+1/2)^{-1} (2 i hbar rho_i rho_f sin S)^{-(nu+1/2)}
///   exp[-cot S/(2 i hbar) (x_i^2/rho_i^2 + x_f^2/rho_f^2)]
///   exp[(i/2hbar)(m_f rho'_f/rho_f x_f^2 - m_i rho'_i/rho_i x_i^2)]
///   E_nu(|x_i x_f| / (i hbar rho_i rho_f sin S); sgn(x_i x_f)).
Complex kernel_deformed_exp(const KernelQuery& q, const Scenario& scenario,
                            const AuxSolution& aux);

/// Stationary oscillator with mass m and frequency omega (the Constant
/// scenario run through the general formula with rho = (m omega)^{-1/2}).
Complex kernel_static(double m, double omega, const KernelQuery& q);

/// Caldirola-Kanai oscillator, m(t) = m0 e^{kt}.
Complex kernel_ck(double m0, double k, double omega0, const KernelQuery& q);

/// Pulsating mass, m(t) = m0 cos^2(upsilon t). MassNodeError if the mass
/// vanishes on [t_i, t_f].
Complex kernel_pulsating(double m0, double upsilon, double omega0, const KernelQuery& q);

}  // namespace dunkl
