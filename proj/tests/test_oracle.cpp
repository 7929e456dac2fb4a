#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "dunkl/errors.hpp"
#include "dunkl/oracle.hpp"

using namespace dunkl;

namespace {

constexpr Complex kI(0.0, 1.0);

std::vector<double> symmetric_grid(double half_width, double h) {
  std::vector<double> x;
  const int n = static_cast<int>(std::lround(half_width / h));
  for (int j = -n; j < n; ++j) x.push_back((j + 0.5) * h);
  return x;
}

// psi = (1 + x) e^{-x^2/2}: even part e^{-x^2/2}, odd part x e^{-x^2/2}.
Complex mixed(double x) { return (1.0 + x) * std::exp(-x * x / 2.0); }

// D^2 of the even part is (x^2 - 1 - 2 nu) g and of the odd part (x^2 - 3 - 2 nu) x g.
Complex mixed_dunkl2(double x, double nu) {
  const double g = std::exp(-x * x / 2.0);
  return (x * x - 1.0 - 2.0 * nu) * g + (x * x - 3.0 - 2.0 * nu) * x * g;
}

// Parity projections of a displaced Gaussian, smooth across y = 0.
std::function<Complex(double)> projected(int e, double x0, double sigma) {
  return [=](double y) {
    const double a = std::exp(-(y - x0) * (y - x0) / (2.0 * sigma * sigma));
    const double b = std::exp(-(y + x0) * (y + x0) / (2.0 * sigma * sigma));
    return Complex(0.5 * (a + e * b));
  };
}

// Largest error over nodes with |x| >= x_min.
double max_error(double h, double nu, double x_min = 0.0) {
  const std::vector<double> x = symmetric_grid(8.0, h);
  std::vector<Complex> psi;
  for (double v : x) psi.push_back(mixed(v));
  const std::vector<Complex> d = dunkl_apply(x, psi, nu);
  double worst = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (std::abs(x[j]) >= x_min) worst = std::max(worst, std::abs(d[j] - mixed_dunkl2(x[j], nu)));
  return worst;
}

}  // namespace

TEST_CASE("dunkl_apply reproduces analytic derivatives at second order") {
  CHECK(max_error(0.01, 0.0) < 0.3 * max_error(0.02, 0.0));
  for (double nu : {0.5, 1.3}) {
    CAPTURE(nu);
    // Away from the origin the stencil is second order.
    CHECK(max_error(0.01, nu, 0.5) < 0.3 * max_error(0.02, nu, 0.5));
    CHECK(max_error(0.01, nu, 0.5) < 1e-3);
    // The 2 nu / x factor amplifies the O(h^2) slope error to O(h) at the innermost nodes.
    CHECK(max_error(0.01, nu) < 0.6 * max_error(0.02, nu));
  }
  // Constants lie in the kernel of D^2.
  const std::vector<double> x = symmetric_grid(3.0, 0.1);
  const std::vector<Complex> one(x.size(), 1.0);
  for (const Complex& v : dunkl_apply(x, one, 0.7)) CHECK(std::abs(v) < 1e-10);
  // So is x: the derivative and reflection terms cancel.
  std::vector<Complex> lin;
  for (double v : x) lin.push_back(v);
  for (const Complex& v : dunkl_apply(x, lin, 0.9)) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("dunkl_apply rejects unsuitable grids") {
  CHECK_THROWS_AS(dunkl_apply({-1.0, 0.0, 1.0}, {1.0, 1.0, 1.0}, 0.5), GridError);
  CHECK_THROWS_AS(dunkl_apply({-1.5, -0.5, 0.5, 1.0}, {1.0, 1.0, 1.0, 1.0}, 0.5), GridError);
  CHECK_THROWS_AS(dunkl_apply({-1.5, -0.5, 0.5, 1.5}, {1.0, 1.0, 1.0}, 0.5), GridError);
}

TEST_CASE("radial grids and packet utilities") {
  CHECK_THROWS_AS(RadialGrid(1.0, 0.3), GridError);
  const RadialGrid g(2.0, 0.5);
  CHECK(g.size() == 4);
  CHECK(g.nodes().front() == 0.25);
  CHECK(g == RadialGrid(2.0, 0.5));

  const WavePacket p = make_packet(Parity::even(0.6), 0.6, RadialGrid(8.0, 0.01),
                                   [](double y) { return Complex(std::exp(-y * y / 2.0)); }, 0.0);
  // int_0^inf y^{2 nu} e^{-y^2} dy = Gamma(nu + 1/2)/2.
  CHECK(norm(p) * norm(p) == doctest::Approx(std::tgamma(1.1) / 2.0).epsilon(1e-4));
  CHECK(l2_distance(p, p) == 0.0);
  WavePacket q = p;
  for (Complex& v : q.u) v = -v;
  CHECK(l2_distance(q, p) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(packet_psi(p)[3] - std::exp(-p.grid.nodes()[3] * p.grid.nodes()[3] / 2.0)) < 1e-14);

  const WavePacket other = make_packet(Parity::even(0.6), 0.6, RadialGrid(8.0, 0.02),
                                       [](double y) { return Complex(std::exp(-y * y / 2.0)); }, 0.0);
  CHECK_THROWS_AS(l2_distance(p, other), GridError);
  WavePacket odd = p;
  odd.parity = Parity::odd(0.6);
  CHECK_THROWS_AS(l2_distance(odd, p), GridError);
}

TEST_CASE("Crank-Nicolson conserves the norm and keeps eigenstates stationary") {
  const double nu = 0.7;
  const PhysicsConfig config{1.0, nu};
  const Scenario c = Scenario::constant(1, 1);
  const RadialGrid grid(10.0, 0.005);
  const WavePacket ground = make_packet(Parity::even(nu), nu, grid,
                                        [](double y) { return Complex(std::exp(-y * y / 2.0)); }, 0.0);
  const double T = 1.0;
  const WavePacket out = cn_evolve(ground, c, harmonic_potential(c), T, 2000, config);
  CHECK(std::abs(norm(out) - norm(ground)) < 1e-10 * norm(ground));
  CHECK(out.t == T);

  // The state only picks up the phase of the ground energy nu + 1/2.
  Complex overlap = 0.0;
  const std::vector<double> w = flat_weights(ground);
  for (std::size_t j = 0; j < grid.size(); ++j) overlap += w[j] * std::conj(ground.u[j]) * out.u[j];
  overlap /= norm(ground) * norm(ground);
  CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-6);
  CHECK(std::abs(overlap - std::exp(-kI * (nu + 0.5) * T)) < 1e-4);

  // The odd ground state x e^{-x^2/2} has energy nu + 3/2.
  const WavePacket odd = make_packet(Parity::odd(nu), nu, grid,
                                     [](double y) { return Complex(y * std::exp(-y * y / 2.0)); }, 0.0);
  const WavePacket odd_out = cn_evolve(odd, c, harmonic_potential(c), T, 2000, config);
  Complex odd_overlap = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) odd_overlap += w[j] * std::conj(odd.u[j]) * odd_out.u[j];
  odd_overlap /= norm(odd) * norm(odd);
  CHECK(std::abs(odd_overlap - std::exp(-kI * (nu + 1.5) * T)) < 1e-4);

  CHECK_THROWS_AS(cn_evolve(make_packet(Parity::even(0.0), 0.0, grid, [](double) { return Complex(1.0); }, 0.0), c,
                            harmonic_potential(c), 1.0, 10, PhysicsConfig{1.0, 0.0}),
                  DomainError);
}

TEST_CASE("kernel evolution against Crank-Nicolson") {
  const double nu = 0.7;
  const PhysicsConfig config{1.0, nu};
  const Scenario s = Scenario::caldirola_kanai(1, 0.2, 1);
  const AuxSolution a = ermakov_closed_form(s);
  const RadialGrid grid(12.0, 0.01);
  const QuadratureRule rule = build_quadrature(nu, 12.0, 48, 16);
  for (int e : {+1, -1}) {
    const Parity p = Parity::from_sign(e, nu);
    const WavePacket start = make_packet(p, nu, grid, projected(e, 1.5, 1.0), 0.0);
    const WavePacket cn = cn_evolve(start, s, harmonic_potential(s), 1.0, 2000, config);
    const WavePacket ker = kernel_evolve(start, s, a, 1.0, rule, config);
    CAPTURE(e);
    CHECK(l2_distance(ker, cn) < 1e-3);
    // Exact evolution is unitary; what remains is the grid's O(h^2) norm error.
    CHECK(std::abs(norm(ker) - norm(start)) < 1e-4 * norm(start));

    const KernelEvolveOptions unchecked{0.0};
    const WavePacket half = kernel_evolve(start, s, a, 0.5, rule, config, unchecked);
    const WavePacket both = kernel_evolve(half, s, a, 1.0, rule, config, unchecked);
    CHECK(l2_distance(both, ker) < 1e-3);
  }
}

TEST_CASE("short-time kernel evolution leaves the packet unchanged") {
  const double nu = 0.7;
  const PhysicsConfig config{1.0, nu};
  const Scenario s = Scenario::caldirola_kanai(1, 0.2, 1);
  const AuxSolution a = ermakov_closed_form(s);
  // The kernel oscillates on the scale eps / y, so the rule must be fine.
  const QuadratureRule rule = build_quadrature(nu, 8.0, 2500, 16);
  for (int e : {+1, -1}) {
    const WavePacket start = make_packet(Parity::from_sign(e, nu), nu, RadialGrid(8.0, 0.04), projected(e, 1.5, 1.0), 0.0);
    const WavePacket blink = kernel_evolve(start, s, a, 1e-3, rule, config, KernelEvolveOptions{0.0});
    CHECK(l2_distance(blink, start) < 1e-2);
  }
}

TEST_CASE("cn-vs-kernel discrepancy falls at second order in h") {
  const double nu = 0.7;
  const PhysicsConfig config{1.0, nu};
  const Scenario s = Scenario::caldirola_kanai(1, 0.2, 1);
  const AuxSolution a = ermakov_closed_form(s);
  const QuadratureRule rule = build_quadrature(nu, 12.0, 48, 16);
  auto discrepancy = [&](double h) {
    const WavePacket start = make_packet(Parity::even(nu), nu, RadialGrid(12.0, h), projected(+1, 1.0, 0.7), 0.0);
    const WavePacket cn = cn_evolve(start, s, harmonic_potential(s), 1.0, 2000, config);
    return l2_distance(kernel_evolve(start, s, a, 1.0, rule, config), cn);
  };
  const double coarse = discrepancy(0.04);
  const double fine = discrepancy(0.02);
  CAPTURE(coarse);
  CAPTURE(fine);
  CHECK(coarse / fine > 3.0);
  CHECK(coarse / fine < 5.0);
}

TEST_CASE("kernel evolution reports unresolved quadrature") {
  const double nu = 0.7;
  const PhysicsConfig config{1.0, nu};
  const Scenario c = Scenario::constant(1, 1);
  const AuxSolution a = ermakov_closed_form(c);
  const WavePacket start = make_packet(Parity::even(nu), nu, RadialGrid(12.0, 0.01),
                                       [](double y) { return Complex(std::exp(-(y - 2.0) * (y - 2.0) * 4.0)); }, 0.0);
  CHECK_THROWS_AS(kernel_evolve(start, c, a, 0.05, build_quadrature(nu, 12.0, 4, 6), config),
                  QuadratureResolutionError);
}
