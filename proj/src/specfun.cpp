#include "dunkl/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

using LongComplex = std::complex<long double>;

void check_order(double order) {
  if (!(order >= -0.5)) {
    throw DomainError("bessel_i: order must be >= -1/2, got " + std::to_string(order));
  }
}

void check_budget(Complex z) {
  if (!is_finite(z)) throw DomainError("bessel_i: non-finite argument");
  if (std::abs(z.real()) > kBesselOverflowBudget) {
    throw OverflowError("bessel_i: |Re z| = " + std::to_string(std::abs(z.real())) +
                        " exceeds the overflow budget of " +
                        std::to_string(kBesselOverflowBudget));
  }
}

// sum_k (z^2/4)^k / (k! Gamma(k+order+1)). Terms grow up to k ~ |z|/2 before
// decaying; for arguments near the imaginary axis the sum cancels down by
// roughly e^{|z|-|Re z|}, which the 64-bit long double mantissa absorbs for
// |z| <= kBesselSeriesRadius.
LongComplex scaled_series(long double order, LongComplex z) {
  const LongComplex q = z * z / 4.0L;
  LongComplex term = 1.0L / std::tgamma(order + 1.0L);
  LongComplex sum = term;
  const long double eps = std::numeric_limits<long double>::epsilon();
  const long double kmin = std::abs(z) / 2.0L;
  for (int k = 1; k < 10000; ++k) {
    term *= q / (static_cast<long double>(k) * (static_cast<long double>(k) + order));
    sum += term;
    if (k > kmin && std::abs(term) <= eps * std::abs(sum)) break;
  }
  return sum;
}

// I_order(z) from the Hankel large-argument expansion, for Re z >= 0. The
// subdominant e^{-z} branch is kept so the result stays accurate when z is on
// the imaginary axis, where both branches have equal size.
Complex asymptotic_i(double order, Complex z) {
  const double mu = 4.0 * order * order;
  Complex inv_z = 1.0 / z;
  Complex sum_alt = 1.0;   // sum (-1)^k a_k / z^k
  Complex sum_plain = 1.0; // sum a_k / z^k
  Complex power = 1.0;
  double a = 1.0;
  double last = std::numeric_limits<double>::infinity();
  const double abs_z = std::abs(z);
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (8.0 * k);
    power *= inv_z;
    const Complex term = a * power;
    const double size = std::abs(term);
    if (size > last && k > abs_z) break;  // expansion began to diverge
    sum_plain += term;
    sum_alt += (k % 2 == 0) ? term : -term;
    last = size;
    if (size < 1e-18 * std::abs(sum_plain)) break;
    if (a == 0.0) break;  // half-integer order: expansion terminates
  }
  const Complex root = std::sqrt(2.0 * std::numbers::pi * z);
  const double s = (z.imag() >= 0.0) ? 1.0 : -1.0;
  const Complex i(0.0, 1.0);
  const Complex connection = s * i * std::exp(s * i * order * std::numbers::pi);
  return (std::exp(z) * sum_alt + connection * std::exp(-z) * sum_plain) / root;
}

// e^{-x} M(nu, 2 nu + 1, 2x) for real x > 0, which equals deformed_exp(nu, -1, x)
// without the cancellation between the two Bessel terms.
long double kummer_reflected(long double nu, long double x) {
  const long double z = 2.0L * x;
  const long double b = 2.0L * nu + 1.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  const long double eps = std::numeric_limits<long double>::epsilon();
  for (int k = 0; k < 100000; ++k) {
    term *= (nu + k) / (b + k) * z / (k + 1.0L);
    sum += term;
    if (k > z && std::abs(term) <= eps * std::abs(sum)) break;
  }
  return std::exp(-x) * sum;
}

}  // namespace

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double laguerre(int n, double theta, double x) {
  if (n < 0) throw DomainError("laguerre: degree must be non-negative");
  if (!(theta > -1.0)) throw DomainError("laguerre: theta must exceed -1");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + theta - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + theta - x) * cur - (k + theta) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex bessel_i_scaled_series(double order, Complex z) {
  check_order(order);
  check_budget(z);
  const LongComplex r = scaled_series(order, LongComplex(z.real(), z.imag()));
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

Complex bessel_i_scaled_asymptotic(double order, Complex z) {
  check_order(order);
  check_budget(z);
  if (z == Complex(0.0)) throw DomainError("bessel_i: asymptotic expansion needs z != 0");
  if (z.real() < 0.0) z = -z;  // even function
  const Complex value = asymptotic_i(order, z) / std::pow(z / 2.0, order);
  if (!is_finite(value)) throw OverflowError("bessel_i: result overflowed");
  return value;
}

Complex bessel_i_scaled(double order, Complex z) {
  if (std::abs(z) <= kBesselSeriesRadius) return bessel_i_scaled_series(order, z);
  return bessel_i_scaled_asymptotic(order, z);
}

Complex bessel_i(double order, Complex z) {
  check_order(order);
  check_budget(z);
  if (z == Complex(0.0)) {
    if (order == 0.0) return 1.0;
    if (order > 0.0) return 0.0;
    throw OverflowError("bessel_i: I_order(0) is infinite for negative order");
  }
  const Complex value = std::pow(z / 2.0, order) * bessel_i_scaled(order, z);
  if (!is_finite(value)) throw OverflowError("bessel_i: result overflowed");
  return value;
}

Complex deformed_exp(double nu, int sign, Complex w) {
  if (!(nu > -0.5)) throw DomainError("deformed_exp: nu must exceed -1/2");
  if (sign < -1 || sign > 1) throw DomainError("deformed_exp: sign must be -1, 0 or +1");
  if (sign == -1 && w.imag() == 0.0 && w.real() > 0.0) {
    check_budget(w);
    return static_cast<double>(kummer_reflected(nu, w.real()));
  }
  const Complex even = bessel_i_scaled(nu - 0.5, w);
  Complex value = even;
  if (sign != 0) value += static_cast<double>(sign) * (w / 2.0) * bessel_i_scaled(nu + 0.5, w);
  value *= std::tgamma(nu + 0.5);
  if (!is_finite(value)) throw OverflowError("deformed_exp: result overflowed");
  return value;
}

double hille_hardy_gap(double theta, double X, double Y, Complex Z, int N) {
  if (!(theta > -1.0)) throw DomainError("hille_hardy_gap: theta must exceed -1");
  if (!(X > 0.0) || !(Y > 0.0)) throw DomainError("hille_hardy_gap: X and Y must be positive");
  if (!(std::abs(Z) < 1.0)) throw DomainError("hille_hardy_gap: |Z| must be < 1");
  if (N < 1) throw DomainError("hille_hardy_gap: N must be >= 1");

  // Truncated bilinear sum, running the Laguerre recurrence in both arguments.
  double lx_prev = 0.0, lx = 1.0, ly_prev = 0.0, ly = 1.0;
  Complex zn = 1.0;
  Complex lhs = 0.0;
  for (int n = 0; n < N; ++n) {
    const double weight = std::exp(std::lgamma(n + 1.0) - std::lgamma(n + theta + 1.0));
    lhs += weight * lx * ly * zn;
    const double lx_next = ((2.0 * n + 1.0 + theta - X) * lx - (n + theta) * lx_prev) / (n + 1.0);
    const double ly_next = ((2.0 * n + 1.0 + theta - Y) * ly - (n + theta) * ly_prev) / (n + 1.0);
    lx_prev = lx;
    lx = lx_next;
    ly_prev = ly;
    ly = ly_next;
    zn *= Z;
  }
  lhs *= std::exp(-(X + Y) / 2.0);

  // (XYZ)^{-theta/2} I_theta(w) = (1-Z)^{-theta} Ibar_theta(w), w = 2 sqrt(XYZ)/(1-Z).
  const Complex one_minus = 1.0 - Z;
  const Complex w = 2.0 * std::sqrt(X * Y * Z) / one_minus;
  const Complex rhs = std::pow(one_minus, -1.0 - theta) *
                      std::exp(-(X + Y) * (1.0 + Z) / (2.0 * one_minus)) *
                      bessel_i_scaled(theta, w);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

}  // namespace dunkl
