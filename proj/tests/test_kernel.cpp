#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "dunkl/errors.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/spectral.hpp"
#include "dunkl/verify.hpp"

using namespace dunkl;

namespace {

constexpr Complex kI(0.0, 1.0);

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

KernelQuery query(double x_i, double t_i, double x_f, double t_f, double nu) {
  return {x_i, t_i, x_f, t_f, PhysicsConfig{1.0, nu}};
}

// Displaced Gaussian and its image under the Dunkl oscillator Hamiltonian
// H = -D^2/2 + x^2/2 (m = omega = hbar = 1), all derivatives by hand.
double gauss(double x) { return std::exp(-(x - 0.5) * (x - 0.5) / 8.0); }

double hamiltonian_gauss(double x, double nu) {
  const double g = gauss(x);
  const double d1 = -(x - 0.5) / 4.0 * g;
  const double d2 = ((x - 0.5) * (x - 0.5) / 16.0 - 0.25) * g;
  const double dunkl2 = d2 + 2.0 * nu / x * d1 - nu / (x * x) * (g - gauss(-x));
  return -0.5 * dunkl2 + 0.5 * x * x * g;
}

// int K(x_f, x_i) g(x_i) |x_i|^{2 nu} dx_i over the full line, by quadrature
// on the positive half and its mirror.
Complex smear(double x_f, double S, double nu, double scale) {
  const PhysicsConfig config{1.0, nu};
  const EndpointData ends{1.0, 1.0, 0.0, 0.0, 1.0, 1.0};
  const QuadratureRule rule = build_quadrature(nu, 12.0, 10000, 16);
  Complex sum = 0.0;
  for (std::size_t r = 0; r < rule.size(); ++r) {
    const double y = rule.nodes[r];
    const KernelParts right = kernel_parts_at(y, x_f, ends, S, config);
    const KernelParts left = kernel_parts_at(-y, x_f, ends, S, config);
    sum += rule.weights[r] * (right.full * gauss(y) + left.full * gauss(-y));
  }
  return scale * sum;
}

}  // namespace

TEST_CASE("parity bookkeeping") {
  CHECK(Parity::even(0.7).bessel_order() == doctest::Approx(0.2));
  CHECK(Parity::odd(0.7).bessel_order() == doctest::Approx(1.2));
  CHECK(Parity::from_sign(-1, 0.3).lambda == doctest::Approx(0.8));
  CHECK_THROWS_AS(Parity::from_sign(0, 0.3), DomainError);
}

TEST_CASE("closed forms match frozen high-precision values") {
  CHECK(rel(kernel_ck(1, 0.2, 1, query(0.6, 0, 1.1, 1, 0.7)),
            Complex(-0.08790190064917743107, -0.59226057226762807527)) < 1e-12);
  CHECK(rel(kernel_ck(1, 0.2, 1, query(0.6, 0, -1.1, 1, 0.7)),
            Complex(0.33530907367305101544, -0.49605156457069723070)) < 1e-12);
  CHECK(rel(kernel_ck(1, 0.0, 1, query(0.6, 0, 1.1, 1, 0.7)),
            Complex(-0.07793775819289051493, -0.53533071804153833330)) < 1e-12);
  CHECK(rel(kernel_static(1, 1, query(0.6, 0, 1.1, 1, 0.7)),
            Complex(-0.07793775819289051493, -0.53533071804153833330)) < 1e-12);
  CHECK(rel(kernel_pulsating(1, 0.5, 1, query(0.6, 0, 1.1, 1, 0.7)),
            Complex(-0.06968536124467606828, -0.48914877368979871591)) < 1e-12);
  CHECK(rel(kernel_pulsating(1, 0.5, 1, query(-0.6, 0.3, 1.1, 1.5, 0.7)),
            Complex(0.06719173851165077185, -0.35954045635286832478)) < 1e-12);
}

TEST_CASE("closed forms agree with the general formula") {
  const Scenario ck = Scenario::caldirola_kanai(1.3, 0.4, 1.1);
  const Scenario pu = Scenario::pulsating(0.9, 0.3, 1.2);
  for (double nu : {0.0, 0.35, 1.4}) {
    for (auto [xi, xf] : {std::pair{0.4, 1.2}, {-0.8, 0.3}, {1.7, -2.2}}) {
      const KernelQuery q = query(xi, 0.2, xf, 1.1, nu);
      CHECK(rel(kernel_ck(1.3, 0.4, 1.1, q), kernel_full(q, ck, ermakov_closed_form(ck))) < 1e-12);
      CHECK(rel(kernel_pulsating(0.9, 0.3, 1.2, q), kernel_full(q, pu, ermakov_closed_form(pu))) < 1e-12);
      CHECK(rel(kernel_deformed_exp(q, ck, ermakov_closed_form(ck)), kernel_full(q, ck, ermakov_closed_form(ck))) <
            1e-12);
    }
  }
}

TEST_CASE("sector assembly and symmetries") {
  const Scenario s = Scenario::constant(1.2, 0.8);
  const AuxSolution a = ermakov_closed_form(s);
  for (auto [xi, xf] : {std::pair{0.4, 1.2}, {-0.8, 0.3}, {1.7, -2.2}}) {
    const KernelQuery q = query(xi, 0.0, xf, 1.3, 0.6);
    const KernelParts p = kernel_parts(q, s, a);
    const double sgn = (xi * xf > 0) ? 1.0 : -1.0;
    CHECK(std::abs(p.full - (p.plus + sgn * p.minus)) < 1e-15 * std::abs(p.full) + 1e-300);
    CHECK(rel(p.plus, kernel_radial(Parity::even(0.6), q, s, a)) < 1e-14);
    CHECK(rel(p.minus, kernel_radial(Parity::odd(0.6), q, s, a)) < 1e-14);
    // Stationary kernels are symmetric and invariant under the joint reflection.
    CHECK(rel(kernel_full(query(xf, 0.0, xi, 1.3, 0.6), s, a), p.full) < 1e-13);
    CHECK(rel(kernel_full(query(-xi, 0.0, -xf, 1.3, 0.6), s, a), p.full) < 1e-13);
  }
}

TEST_CASE("kernel_q is the radial kernel in transformed coordinates") {
  const Scenario s = Scenario::caldirola_kanai(1, 0.2, 1);
  const AuxSolution a = ermakov_closed_form(s);
  const EndpointData ends = endpoint_data(s, a, 0.1, 1.2);
  const double S = checked_phase_time(s, a, 0.1, 1.2);
  const PhysicsConfig config{1.0, 0.45};
  for (const Parity& p : {Parity::even(0.45), Parity::odd(0.45)}) {
    const Complex direct = kernel_radial_at(p, 0.7, 1.4, ends, S, config);
    const Complex viaq = kernel_q(p, 0.7 / ends.rho_i, 1.4 / ends.rho_f, S, ends, config);
    CHECK(rel(viaq, direct) < 1e-13);
    CHECK(rel(sector_kernel_analytic(p, 0.7, 1.4, ends, S, config), direct) < 1e-12);
  }
}

TEST_CASE("nu = 0 reduces to the textbook oscillator") {
  for (double T : {0.4, std::numbers::pi / 2, 2.5}) {
    const double xi = 0.3, xf = -1.1;
    const Complex k = kernel_static(1.0, 1.0, query(xi, 0.0, xf, T, 0.0));
    CHECK(rel(k, textbook_oscillator_kernel(1.0, 1.0, xi, xf, T, 1.0)) < 1e-12);
  }
  const Complex quarter = kernel_static(1.0, 1.0, query(0.3, 0.0, 0.9, std::numbers::pi / 2, 0.0));
  CHECK(std::abs(quarter) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("short-time kernel acts as the identity on the Dunkl measure") {
  const double nu = 0.7;
  const double eps = 1e-3;
  for (double xf : {0.5, -1.3, 2.0}) {
    // First-order Taylor target g - i eps H g leaves an O(eps^2) residue.
    const Complex target = gauss(xf) - kI * eps * hamiltonian_gauss(xf, nu);
    const Complex got = smear(xf, eps, nu, 1.0);
    CAPTURE(xf);
    CHECK(std::abs(got - target) < 1e-4 * std::abs(target));
  }
}

TEST_CASE("normalization quoted without the 2^nu factor fails the identity test") {
  const double nu = 0.7;
  const Complex got = smear(0.5, 1e-3, nu, std::pow(2.0, -nu));
  CHECK(std::abs(got - gauss(0.5)) > 0.3 * gauss(0.5));
}

TEST_CASE("kernel does not depend on which Ermakov solution is used") {
  const Scenario c = Scenario::constant(1, 1);
  const AuxSolution pinney = ermakov_integrate(c, 2.0, 0.0, {0.0, 3.0}, 1e-12);
  for (auto [ti, tf] : {std::pair{0.0, 1.0}, {0.5, 2.1}}) {
    for (auto [xi, xf] : {std::pair{0.4, 1.2}, {-0.8, 0.3}}) {
      const KernelQuery q = query(xi, ti, xf, tf, 0.6);
      CHECK(rel(kernel_full(q, c, pinney), kernel_static(1, 1, q)) < 1e-7);
    }
  }
}

TEST_CASE("caustics and invalid queries") {
  const Scenario c = Scenario::constant(1, 1);
  const AuxSolution a = ermakov_closed_form(c);
  CHECK_THROWS_AS(kernel_full(query(0.3, 0.0, 0.5, std::numbers::pi, 0.5), c, a), CausticError);
  CHECK_THROWS_AS(kernel_full(query(0.3, 0.0, 0.5, 4.0, 0.5), c, a), CausticError);
  CHECK_THROWS_AS(kernel_static(1, 1, query(0.3, 0.0, 0.5, 4.0, 0.5)), CausticError);
  CHECK_THROWS_AS(check_caustic(Complex(1e-9, 0.0)), CausticError);
  CHECK_NOTHROW(check_caustic(Complex(1.0, -0.1)));
  CHECK_THROWS_AS(kernel_full(query(0.0, 0.0, 0.5, 1.0, 0.5), c, a), DomainError);
  CHECK_THROWS_AS(kernel_radial(Parity::even(0.5), query(0.3, 0.0, 0.0, 1.0, 0.5), c, a), DomainError);
  CHECK_THROWS_AS(kernel_full(query(0.3, 1.0, 0.5, 1.0, 0.5), c, a), DomainError);
  CHECK_THROWS_AS(kernel_ck(1, 3.0, 1, query(0.3, 0.0, 0.5, 1.0, 0.5)), RegimeError);
  CHECK_THROWS_AS(kernel_pulsating(1, 0.5, 1, query(0.3, 2.0, 0.5, 4.0, 0.5)), MassNodeError);
}
