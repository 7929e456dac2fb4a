#include "dunkl/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kCausticGuard = 1e-8;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

void check_query(const KernelQuery& q) {
  q.config.validate();
  if (!(q.t_f > q.t_i)) throw DomainError("kernel query needs t_f > t_i");
  if (!std::isfinite(q.x_i) || !std::isfinite(q.x_f)) throw DomainError("non-finite endpoint");
}

void check_nonzero(double x_i, double x_f) {
  if (x_i == 0.0 || x_f == 0.0) {
    throw DomainError("sector kernels are singular at a zero endpoint");
  }
}

// Real phase time restricted to the first caustic cell.
void check_cell(double S) {
  if (!(S > 0.0 && S < std::numbers::pi) || std::abs(std::sin(S)) < kCausticGuard) {
    throw CausticError("phase time S = " + std::to_string(S) + " is outside (0, pi)");
  }
}

Complex finite_or_throw(Complex value, const char* what) {
  if (!is_finite(value)) throw OverflowError(std::string(what) + ": non-finite kernel value");
  return value;
}

}  // namespace

Parity Parity::from_sign(int e, double nu) {
  if (e == 1) return even(nu);
  if (e == -1) return odd(nu);
  throw DomainError("parity sign must be +1 or -1");
}

EndpointData endpoint_data(const Scenario& scenario, const AuxSolution& aux, double t_i,
                           double t_f) {
  return {aux.rho(t_i),     aux.rho(t_f),      aux.rho_dot(t_i),
          aux.rho_dot(t_f), scenario.mass(t_i), scenario.mass(t_f)};
}

void check_caustic(Complex S) {
  if (std::abs(std::sin(S)) < kCausticGuard) {
    throw CausticError("kernel evaluated at a caustic (|sin S| < 1e-8)");
  }
}

double checked_phase_time(const Scenario& scenario, const AuxSolution& aux, double t_i,
                          double t_f) {
  const double S = phase_time(aux, scenario, t_i, t_f);
  check_cell(S);
  return S;
}

Complex kernel_q(const Parity& parity, double Q_i, double Q_f, Complex S, const EndpointData& e,
                 const PhysicsConfig& config) {
  config.validate();
  if (!(Q_i > 0.0) || !(Q_f > 0.0)) throw DomainError("kernel_q needs Q_i, Q_f > 0");
  check_caustic(S);
  const double hbar = config.hbar;
  const double nu = config.nu;
  const Complex sinS = std::sin(S);
  const Complex cotS = std::cos(S) / sinS;
  const double prefactor =
      std::pow(e.rho_f * e.rho_i, -(nu + 0.5)) * std::pow(Q_f * Q_i, -(nu - 0.5));
  // d rho / ds = rho^2 m rho', so (d rho/ds)/rho = m rho rho'.
  const double boundary = e.m_f * e.rho_f * e.rho_dot_f * Q_f * Q_f -
                          e.m_i * e.rho_i * e.rho_dot_i * Q_i * Q_i;
  const Complex exponent =
      kI / (2.0 * hbar) * boundary - (Q_i * Q_i + Q_f * Q_f) * cotS / (2.0 * kI * hbar);
  const Complex w = Q_i * Q_f / (kI * hbar * sinS);
  return finite_or_throw(prefactor * std::exp(exponent) / (2.0 * kI * hbar * sinS) *
                             bessel_i(parity.bessel_order(), w),
                         "kernel_q");
}

Complex kernel_radial_at(const Parity& parity, double x_i, double x_f, const EndpointData& e,
                         Complex S, const PhysicsConfig& config) {
  check_nonzero(x_i, x_f);
  check_caustic(S);
  const double hbar = config.hbar;
  const double nu = config.nu;
  const double a = std::abs(x_f * x_i);
  const Complex sinS = std::sin(S);
  const Complex cotS = std::cos(S) / sinS;
  const double prefactor = 1.0 / (e.rho_f * e.rho_i * std::pow(a, nu - 0.5));
  const double boundary = e.m_f * e.rho_dot_f / e.rho_f * x_f * x_f -
                          e.m_i * e.rho_dot_i / e.rho_i * x_i * x_i;
  const double spread = x_i * x_i / (e.rho_i * e.rho_i) + x_f * x_f / (e.rho_f * e.rho_f);
  const Complex exponent = kI / (2.0 * hbar) * boundary - cotS / (2.0 * kI * hbar) * spread;
  const Complex w = a / (kI * hbar * e.rho_i * e.rho_f * sinS);
  return finite_or_throw(prefactor * std::exp(exponent) / (2.0 * kI * hbar * sinS) *
                             bessel_i(parity.bessel_order(), w),
                         "kernel_radial");
}

Complex kernel_radial(const Parity& parity, const KernelQuery& q, const Scenario& scenario,
                      const AuxSolution& aux) {
  check_query(q);
  check_nonzero(q.x_i, q.x_f);
  const double S = checked_phase_time(scenario, aux, q.t_i, q.t_f);
  return kernel_radial_at(parity, q.x_i, q.x_f, endpoint_data(scenario, aux, q.t_i, q.t_f), S,
                          q.config);
}

Complex sector_kernel_analytic(const Parity& parity, Complex y_i, Complex y_f,
                               const EndpointData& e, Complex S, const PhysicsConfig& config) {
  check_caustic(S);
  const double hbar = config.hbar;
  const double nu = config.nu;
  const Complex sinS = std::sin(S);
  const Complex cotS = std::cos(S) / sinS;
  const double rr = e.rho_i * e.rho_f;
  const Complex boundary = e.m_f * e.rho_dot_f / e.rho_f * y_f * y_f -
                           e.m_i * e.rho_dot_i / e.rho_i * y_i * y_i;
  const Complex spread = y_i * y_i / (e.rho_i * e.rho_i) + y_f * y_f / (e.rho_f * e.rho_f);
  const Complex exponent = kI / (2.0 * hbar) * boundary - cotS / (2.0 * kI * hbar) * spread;
  const Complex w = y_i * y_f / (kI * hbar * rr * sinS);
  const Complex base = 2.0 * kI * hbar * sinS;
  Complex value;
  if (parity.is_even()) {
    value = std::pow(rr, -(nu + 0.5)) * std::pow(base, -(nu + 0.5)) * std::exp(exponent) *
            bessel_i_scaled(nu - 0.5, w);
  } else {
    value = y_i * y_f * std::pow(rr, -(nu + 1.5)) * std::pow(base, -(nu + 1.5)) *
            std::exp(exponent) * bessel_i_scaled(nu + 0.5, w);
  }
  return finite_or_throw(value, "sector_kernel_analytic");
}

KernelParts kernel_parts_at(double x_i, double x_f, const EndpointData& ends, Complex S,
                            const PhysicsConfig& config) {
  const Complex plus = kernel_radial_at(Parity::even(config.nu), x_i, x_f, ends, S, config);
  const Complex minus = kernel_radial_at(Parity::odd(config.nu), x_i, x_f, ends, S, config);
  return {plus + static_cast<double>(sign_of(x_i * x_f)) * minus, plus, minus};
}

KernelParts kernel_parts(const KernelQuery& q, const Scenario& scenario, const AuxSolution& aux) {
  check_query(q);
  check_nonzero(q.x_i, q.x_f);
  const double S = checked_phase_time(scenario, aux, q.t_i, q.t_f);
  return kernel_parts_at(q.x_i, q.x_f, endpoint_data(scenario, aux, q.t_i, q.t_f), S, q.config);
}

Complex kernel_full(const KernelQuery& q, const Scenario& scenario, const AuxSolution& aux) {
  return kernel_parts(q, scenario, aux).full;
}

Complex kernel_full_at_phase(const KernelQuery& q, const Scenario& scenario,
                             const AuxSolution& aux, Complex S) {
  check_query(q);
  check_nonzero(q.x_i, q.x_f);
  return kernel_parts_at(q.x_i, q.x_f, endpoint_data(scenario, aux, q.t_i, q.t_f), S, q.config)
      .full;
}

Complex kernel_deformed_exp(const KernelQuery& q, const Scenario& scenario,
                            const AuxSolution& aux) {
  check_query(q);
  const double S = checked_phase_time(scenario, aux, q.t_i, q.t_f);
  const EndpointData e = endpoint_data(scenario, aux, q.t_i, q.t_f);
  const double hbar = q.config.hbar;
  const double nu = q.config.nu;
  const double rr = e.rho_i * e.rho_f;
  const double sinS = std::sin(S);
  const double cotS = std::cos(S) / sinS;
  const double spread =
      q.x_i * q.x_i / (e.rho_i * e.rho_i) + q.x_f * q.x_f / (e.rho_f * e.rho_f);
  const double boundary = e.m_f * e.rho_dot_f / e.rho_f * q.x_f * q.x_f -
                          e.m_i * e.rho_dot_i / e.rho_i * q.x_i * q.x_i;
  const Complex w = std::abs(q.x_i * q.x_f) / (kI * hbar * rr * sinS);
  const Complex value = std::pow(2.0 * kI * hbar * rr * sinS, -(nu + 0.5)) / std::tgamma(nu + 0.5) *
                        std::exp(-cotS / (2.0 * kI * hbar) * spread + kI / (2.0 * hbar) * boundary) *
                        deformed_exp(nu, sign_of(q.x_i * q.x_f), w);
  return finite_or_throw(value, "kernel_deformed_exp");
}

Complex kernel_static(double m, double omega, const KernelQuery& q) {
  check_query(q);
  if (!(m > 0.0) || !(omega > 0.0)) throw DomainError("kernel_static needs m, omega > 0");
  const double hbar = q.config.hbar;
  const double nu = q.config.nu;
  const double S = omega * (q.t_f - q.t_i);
  check_cell(S);
  const double scale = m * omega;
  const Complex c = scale / (2.0 * kI * hbar * std::sin(S));
  const Complex w = scale * std::abs(q.x_i * q.x_f) / (kI * hbar * std::sin(S));
  const Complex gauss =
      std::exp(kI * scale / (2.0 * hbar) * (q.x_i * q.x_i + q.x_f * q.x_f) / std::tan(S));
  return finite_or_throw(std::pow(c, nu + 0.5) / std::tgamma(nu + 0.5) *
                             deformed_exp(nu, sign_of(q.x_i * q.x_f), w) * gauss,
                         "kernel_static");
}

Complex kernel_ck(double m0, double k, double omega0, const KernelQuery& q) {
  check_query(q);
  if (!(m0 > 0.0) || !(omega0 > 0.0)) throw DomainError("kernel_ck needs m0, omega0 > 0");
  const double mu = reduced_frequency(omega0, k);
  const double hbar = q.config.hbar;
  const double nu = q.config.nu;
  const double S = mu * (q.t_f - q.t_i);
  check_cell(S);
  const double scale = m0 * mu * std::exp(k / 2.0 * (q.t_f + q.t_i));
  const Complex c = scale / (2.0 * kI * hbar * std::sin(S));
  const Complex w = scale * std::abs(q.x_i * q.x_f) / (kI * hbar * std::sin(S));
  const double grown_f = std::exp(k * q.t_f) * q.x_f * q.x_f;
  const double grown_i = std::exp(k * q.t_i) * q.x_i * q.x_i;
  const Complex phase = kI * m0 * mu / (2.0 * hbar) * (grown_f + grown_i) / std::tan(S) -
                        kI * m0 * k / (4.0 * hbar) * (grown_f - grown_i);
  return finite_or_throw(std::pow(c, nu + 0.5) / std::tgamma(nu + 0.5) *
                             deformed_exp(nu, sign_of(q.x_i * q.x_f), w) * std::exp(phase),
                         "kernel_ck");
}

Complex kernel_pulsating(double m0, double upsilon, double omega0, const KernelQuery& q) {
  check_query(q);
  if (!(m0 > 0.0) || !(omega0 > 0.0)) throw DomainError("kernel_pulsating needs m0, omega0 > 0");
  Scenario::pulsating(m0, upsilon, omega0).check_positive_mass(q.t_i, q.t_f);
  const double eta = augmented_frequency(omega0, upsilon);
  const double hbar = q.config.hbar;
  const double nu = q.config.nu;
  const double S = eta * (q.t_f - q.t_i);
  check_cell(S);
  const double cos_i = std::cos(upsilon * q.t_i);
  const double cos_f = std::cos(upsilon * q.t_f);
  // No node lies between t_i and t_f, so cos_i cos_f > 0.
  const double scale = m0 * eta * cos_i * cos_f;
  const Complex c = scale / (2.0 * kI * hbar * std::sin(S));
  const Complex w = scale * std::abs(q.x_i * q.x_f) / (kI * hbar * std::sin(S));
  const double sq_f = q.x_f * q.x_f * cos_f * cos_f;
  const double sq_i = q.x_i * q.x_i * cos_i * cos_i;
  const Complex phase =
      kI * m0 * eta / (2.0 * hbar) * (sq_f + sq_i) / std::tan(S) +
      kI * m0 * upsilon / (2.0 * hbar) *
          (sq_f * std::tan(upsilon * q.t_f) - sq_i * std::tan(upsilon * q.t_i));
  return finite_or_throw(std::pow(c, nu + 0.5) / std::tgamma(nu + 0.5) *
                             deformed_exp(nu, sign_of(q.x_i * q.x_f), w) * std::exp(phase),
                         "kernel_pulsating");
}

}  // namespace dunkl
