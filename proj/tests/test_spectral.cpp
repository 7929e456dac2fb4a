#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "dunkl/errors.hpp"
#include "dunkl/spectral.hpp"

using namespace dunkl;

namespace {

constexpr Complex kI(0.0, 1.0);

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

double integrate(const QuadratureRule& rule, double (*f)(double)) {
  double sum = 0.0;
  for (std::size_t r = 0; r < rule.size(); ++r) sum += rule.weights[r] * f(rule.nodes[r]);
  return sum;
}

double gram_defect(const Scenario& s, const AuxSolution& a, double t, double nu, int n_max) {
  const PhysicsConfig config{1.0, nu};
  const double x_max = std::sqrt(100.0 + 8.0 * n_max) * a.rho(t);
  const QuadratureRule rule = build_quadrature(nu, x_max, 40, 16);
  double worst = 0.0;
  for (int e : {+1, -1}) {
    const Parity p = Parity::from_sign(e, nu);
    std::vector<SampledFunction> samples;
    for (int n = 0; n <= n_max; ++n)
      samples.push_back(sample_with_parity(rule, e, [&](double x) { return wavefn(p, n, x, t, s, a, config); }));
    for (int n = 0; n <= n_max; ++n) {
      for (int k = 0; k <= n_max; ++k) {
        const Complex g = dunkl_inner(samples[n], samples[k], rule);
        worst = std::max(worst, std::abs(g - (n == k ? 1.0 : 0.0)));
      }
    }
  }
  // Opposite parities are orthogonal by symmetry.
  const Parity ev = Parity::even(nu), od = Parity::odd(nu);
  const SampledFunction f = sample(rule, [&](double x) { return wavefn(ev, 1, x, t, s, a, config); });
  const SampledFunction g = sample(rule, [&](double x) { return wavefn(od, 2, x, t, s, a, config); });
  worst = std::max(worst, std::abs(dunkl_inner(f, g, rule)));
  return worst;
}

}  // namespace

TEST_CASE("quadrature integrates the Dunkl weight") {
  CHECK(integrate(build_quadrature(0.7, 1.0, 4, 12), [](double) { return 1.0; }) ==
        doctest::Approx(1.0 / 2.4).epsilon(1e-13));
  CHECK(integrate(build_quadrature(0.0, 1.0, 3, 8), [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate(build_quadrature(0.7, 12.0, 24, 16), [](double x) { return std::exp(-x * x); }) ==
        doctest::Approx(std::tgamma(1.2) / 2.0).epsilon(1e-12));
  CHECK(integrate(build_quadrature(-0.3, 1.0, 4, 12), [](double x) { return x * x; }) ==
        doctest::Approx(1.0 / 2.4).epsilon(1e-12));
  const QuadratureRule r = build_quadrature(0.4, 3.0, 5, 10);
  CHECK(refine(r).panels == 10);
  CHECK(refine(r).size() > r.size());
  CHECK_THROWS_AS(build_quadrature(-0.6, 1.0, 4, 8), DomainError);
  CHECK_THROWS_AS(build_quadrature(0.2, 1.0, 0, 8), DomainError);
}

TEST_CASE("Gauss-Jacobi rule is exact for polynomials") {
  std::vector<double> nodes, weights;
  for (double c : {-0.6, 0.0, 1.4}) {
    gauss_jacobi_unit(8, c, nodes, weights);
    for (int p = 0; p < 16; ++p) {
      double sum = 0.0;
      for (std::size_t j = 0; j < nodes.size(); ++j) sum += weights[j] * std::pow(nodes[j], p);
      CHECK(sum == doctest::Approx(1.0 / (p + c + 1.0)).epsilon(1e-13));
    }
  }
}

TEST_CASE("eigenfunctions are orthonormal at several times") {
  const Scenario ck = Scenario::caldirola_kanai(1, 0.2, 1);
  const Scenario pu = Scenario::pulsating(1, 0.5, 1);
  for (double t : {0.0, 1.3}) {
    CHECK(gram_defect(ck, ermakov_closed_form(ck), t, 0.7, 12) < 1e-8);
    CHECK(gram_defect(pu, ermakov_closed_form(pu), t, 0.35, 12) < 1e-8);
  }
  const Scenario c = Scenario::constant(1, 1);
  const AuxSolution pinney = ermakov_integrate(c, 2.0, 0.0, {0.0, 2.0}, 1e-11);
  CHECK(gram_defect(c, pinney, 1.5, 1.1, 8) < 1e-8);
}

TEST_CASE("Caldirola-Kanai closed eigenfunctions match the general form") {
  const Scenario s = Scenario::caldirola_kanai(1.1, 0.3, 0.9);
  const AuxSolution a = ermakov_closed_form(s);
  const PhysicsConfig config{1.0, 0.6};
  for (int e : {+1, -1}) {
    const Parity p = Parity::from_sign(e, 0.6);
    for (int n : {0, 1, 4}) {
      for (double x : {0.3, -1.2, 2.0}) {
        for (double t : {0.0, 0.8}) {
          CHECK(rel(wavefn_ck(p, n, x, t, 1.1, 0.3, 0.9, config), wavefn(p, n, x, t, s, a, config)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("ground state of the stationary oscillator") {
  const Scenario c = Scenario::constant(1, 1);
  const AuxSolution a = ermakov_closed_form(c);
  const double nu = 0.8;
  const PhysicsConfig config{1.0, nu};
  for (double x : {0.2, 1.0, -1.7}) {
    const Complex expected = std::exp(-x * x / 2.0) / std::sqrt(std::tgamma(nu + 0.5)) *
                             std::exp(-kI * (nu + 0.5) * 0.9);
    CHECK(rel(wavefn(Parity::even(nu), 0, x, 0.9, c, a, config), expected) < 1e-13);
  }
  // Odd states change sign under reflection; even ones do not.
  CHECK(rel(wavefn(Parity::odd(nu), 3, -0.7, 0.4, c, a, config), -wavefn(Parity::odd(nu), 3, 0.7, 0.4, c, a, config)) <
        1e-15);
  CHECK(rel(wavefn(Parity::even(nu), 3, -0.7, 0.4, c, a, config), wavefn(Parity::even(nu), 3, 0.7, 0.4, c, a, config)) <
        1e-15);
  CHECK_THROWS_AS(wavefn(Parity::even(nu), -1, 0.5, 0.0, c, a, config), DomainError);
}

TEST_CASE("damped spectral sums converge towards the damped kernel") {
  const Scenario s = Scenario::caldirola_kanai(1, 0.2, 1);
  const AuxSolution a = ermakov_closed_form(s);
  const KernelQuery q{0.6, 0.0, 1.1, 1.0, PhysicsConfig{1.0, 0.7}};
  const double S = checked_phase_time(s, a, q.t_i, q.t_f);
  const double eps = 0.05;
  const Complex exact = kernel_full_at_phase(q, s, a, Complex(S, -eps));
  double previous = 1e300;
  for (int N : {25, 50, 100, 200, 400}) {
    const double err = rel(spectral_kernel(q, s, a, N, eps), exact);
    CAPTURE(N);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-12);
}

TEST_CASE("Wick-rotated spectral sum matches the kernel") {
  const Scenario c = Scenario::constant(1, 1);
  const AuxSolution a = ermakov_closed_form(c);
  for (double nu : {0.0, 0.7, 1.5}) {
    for (auto [xi, xf] : {std::pair{0.6, 1.1}, {-0.4, 0.9}}) {
      const KernelQuery q{xi, 0.0, xf, 1.0, PhysicsConfig{1.0, nu}};
      const Complex S(0.0, -1.0);
      CHECK(rel(spectral_kernel_at_phase(q, c, a, 200, S), kernel_full_at_phase(q, c, a, S)) < 1e-12);
    }
  }
}
