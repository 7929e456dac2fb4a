#include "dunkl/spectral.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

constexpr Complex kI{0.0, 1.0};

// Fraction of the first panel kept at each geometric subdivision, and the
// number of subdivisions.
constexpr double kGrading = 0.25;
constexpr int kGradedLevels = 4;

void check_level(int n) {
  if (n < 0) throw DomainError("wavefunction index must be non-negative");
}

// sqrt(n! / (hbar^{lambda+1} Gamma(n+lambda+1) rho^{2 lambda+2})).
double normalization(int n, double lambda, double rho, double hbar) {
  const double log_sq = std::lgamma(n + 1.0) - std::lgamma(n + lambda + 1.0) -
                        (lambda + 1.0) * std::log(hbar) - (2.0 * lambda + 2.0) * std::log(rho);
  return std::exp(0.5 * log_sq);
}

// Parts of Psi_n that do not depend on n, other than the polynomial and the
// dynamical phase: parity factor times the quadratic exponential.
Complex envelope(const Parity& parity, double x, double rho, double rho_dot, double m,
                 double hbar) {
  const Complex quad = (kI * m * rho * rho_dot - 1.0) * x * x / (2.0 * hbar * rho * rho);
  const double factor = parity.is_even() ? 1.0 : x;
  return factor * std::exp(quad);
}

}  // namespace

Complex wavefn_at(const Parity& parity, int n, double x, double rho, double rho_dot, double m,
                  Complex s, const PhysicsConfig& config) {
  config.validate();
  check_level(n);
  const double lambda = parity.bessel_order();
  const double hbar = config.hbar;
  const double arg = x * x / (hbar * rho * rho);
  const Complex value = normalization(n, lambda, rho, hbar) * laguerre(n, lambda, arg) *
                        envelope(parity, x, rho, rho_dot, m, hbar) *
                        std::exp(-kI * (2.0 * n + lambda + 1.0) * s);
  if (!is_finite(value)) throw OverflowError("wavefn: non-finite value");
  return value;
}

Complex wavefn(const Parity& parity, int n, double x, double t, const Scenario& scenario,
               const AuxSolution& aux, const PhysicsConfig& config) {
  const double s = phase_time(aux, scenario, 0.0, t);
  return wavefn_at(parity, n, x, aux.rho(t), aux.rho_dot(t), scenario.mass(t), s, config);
}

Complex wavefn_ck(const Parity& parity, int n, double x, double t, double m0, double k,
                  double omega0, const PhysicsConfig& config) {
  config.validate();
  check_level(n);
  const double mu = reduced_frequency(omega0, k);
  const double hbar = config.hbar;
  const double lambda = parity.bessel_order();
  const double grown = m0 * std::exp(k * t);
  const double log_sq = std::lgamma(n + 1.0) + (lambda + 1.0) * std::log(m0 * mu / hbar) -
                        std::lgamma(n + lambda + 1.0);
  const double factor = parity.is_even() ? 1.0 : x;
  const Complex exponent =
      -grown / (2.0 * hbar) * (kI * k / 2.0 + mu) * x * x +
      (k / 2.0 * (lambda + 1.0) - kI * mu * (2.0 * n + lambda + 1.0)) * t;
  const Complex value = std::exp(0.5 * log_sq) * factor *
                        laguerre(n, lambda, mu * grown * x * x / hbar) * std::exp(exponent);
  if (!is_finite(value)) throw OverflowError("wavefn_ck: non-finite value");
  return value;
}

void gauss_jacobi_unit(int order, double c, std::vector<double>& nodes,
                       std::vector<double>& weights) {
  if (order < 1) throw DomainError("quadrature order must be >= 1");
  if (!(c > -1.0)) throw DomainError("Gauss-Jacobi exponent must exceed -1");
  // Golub-Welsch for the weight (1+s)^c on [-1, 1], then s = 2x - 1.
  const double a = 0.0;
  const double b = c;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  for (int n = 0; n < order; ++n) {
    const double s = 2.0 * n + a + b;
    J(n, n) = (n == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (n + 1 < order) {
      const double m = n + 1.0;
      const double sm = 2.0 * m + a + b;
      const double off = std::sqrt(4.0 * m * (m + a) * (m + b) * (m + a + b) /
                                   (sm * sm * (sm + 1.0) * (sm - 1.0)));
      J(n, n + 1) = off;
      J(n + 1, n) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
  if (eig.info() != Eigen::Success) throw DomainError("Gauss-Jacobi eigen solve failed");
  // Total mass of (1+s)^c on [-1,1] is 2^{c+1}/(c+1); mapping to [0,1] with
  // weight x^c divides by 2^{c+1}.
  const double mass = 1.0 / (c + 1.0);
  nodes.resize(order);
  weights.resize(order);
  for (int j = 0; j < order; ++j) {
    const double v = eig.eigenvectors()(0, j);
    nodes[j] = 0.5 * (eig.eigenvalues()(j) + 1.0);
    weights[j] = mass * v * v;
  }
}

QuadratureRule build_quadrature(double nu, double x_max, int panels, int order) {
  if (!(nu > -0.5)) throw DomainError("build_quadrature: nu must exceed -1/2");
  if (!(x_max > 0.0) || !std::isfinite(x_max)) throw DomainError("build_quadrature: x_max must be positive");
  if (panels < 1 || order < 1) throw DomainError("build_quadrature: panels and order must be >= 1");
  QuadratureRule rule;
  rule.nu = nu;
  rule.x_max = x_max;
  rule.panels = panels;
  rule.order = order;
  const double c = 2.0 * nu;

  std::vector<double> jx, jw, gx, gw;
  gauss_jacobi_unit(order, c, jx, jw);
  gauss_jacobi_unit(order, 0.0, gx, gw);

  auto add_legendre = [&](double lo, double hi) {
    const double width = hi - lo;
    for (int j = 0; j < order; ++j) {
      const double x = lo + width * gx[j];
      rule.nodes.push_back(x);
      rule.weights.push_back(width * gw[j] * std::pow(x, c));
    }
  };

  const double panel = x_max / panels;
  double inner = panel * std::pow(kGrading, kGradedLevels);
  for (int j = 0; j < order; ++j) {
    rule.nodes.push_back(inner * jx[j]);
    rule.weights.push_back(std::pow(inner, c + 1.0) * jw[j]);
  }
  for (int level = kGradedLevels; level > 0; --level) {
    const double hi = inner / kGrading;
    add_legendre(inner, hi);
    inner = hi;
  }
  for (int p = 1; p < panels; ++p) add_legendre(p * panel, (p + 1) * panel);
  return rule;
}

QuadratureRule refine(const QuadratureRule& rule) {
  return build_quadrature(rule.nu, rule.x_max, 2 * rule.panels, rule.order);
}

SampledFunction sample(const QuadratureRule& rule, const std::function<Complex(double)>& f) {
  SampledFunction out;
  out.positive.reserve(rule.size());
  out.negative.reserve(rule.size());
  for (double x : rule.nodes) {
    out.positive.push_back(f(x));
    out.negative.push_back(f(-x));
  }
  return out;
}

SampledFunction sample_with_parity(const QuadratureRule& rule, int e,
                                   const std::function<Complex(double)>& f) {
  if (e != 1 && e != -1) throw DomainError("parity sign must be +1 or -1");
  SampledFunction out;
  out.parity = e;
  out.positive.reserve(rule.size());
  out.negative.reserve(rule.size());
  for (double x : rule.nodes) {
    const Complex v = f(x);
    out.positive.push_back(v);
    out.negative.push_back(static_cast<double>(e) * v);
  }
  return out;
}

Complex dunkl_inner(const SampledFunction& f, const SampledFunction& g,
                    const QuadratureRule& rule) {
  const std::size_t n = rule.size();
  if (f.positive.size() != n || g.positive.size() != n || f.negative.size() != n ||
      g.negative.size() != n) {
    throw DomainError("dunkl_inner: samples do not match the rule");
  }
  if (f.parity && g.parity && *f.parity != *g.parity) return 0.0;
  Complex pos = 0.0;
  Complex neg = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    pos += rule.weights[j] * std::conj(f.positive[j]) * g.positive[j];
    neg += rule.weights[j] * std::conj(f.negative[j]) * g.negative[j];
  }
  if (f.parity && g.parity) return 2.0 * pos;
  return pos + neg;
}

Complex spectral_kernel_at_phase(const KernelQuery& q, const Scenario& scenario,
                                 const AuxSolution& aux, int N, Complex S) {
  q.config.validate();
  if (N < 1) throw DomainError("spectral_kernel: N must be >= 1");
  const double hbar = q.config.hbar;
  const double rho_i = aux.rho(q.t_i);
  const double rho_f = aux.rho(q.t_f);
  const double u_i = q.x_i * q.x_i / (hbar * rho_i * rho_i);
  const double u_f = q.x_f * q.x_f / (hbar * rho_f * rho_f);
  Complex total = 0.0;
  for (const Parity parity : {Parity::even(q.config.nu), Parity::odd(q.config.nu)}) {
    const double lambda = parity.bessel_order();
    const Complex env = envelope(parity, q.x_f, rho_f, aux.rho_dot(q.t_f), scenario.mass(q.t_f), hbar) *
                        std::conj(envelope(parity, q.x_i, rho_i, aux.rho_dot(q.t_i),
                                           scenario.mass(q.t_i), hbar));
    // Product of the two normalizations without the n-dependent factor.
    const double base = std::exp(-(lambda + 1.0) * std::log(hbar) -
                                 (lambda + 1.0) * std::log(rho_i * rho_f));
    const Complex step = std::exp(-2.0 * kI * S);
    Complex phase = std::exp(-kI * (lambda + 1.0) * S);
    double li_prev = 0.0, li = 1.0, lf_prev = 0.0, lf = 1.0;
    Complex sector = 0.0;
    for (int n = 0; n < N; ++n) {
      const double ratio = std::exp(std::lgamma(n + 1.0) - std::lgamma(n + lambda + 1.0));
      sector += ratio * li * lf * phase;
      const double li_next = ((2.0 * n + 1.0 + lambda - u_i) * li - (n + lambda) * li_prev) / (n + 1.0);
      const double lf_next = ((2.0 * n + 1.0 + lambda - u_f) * lf - (n + lambda) * lf_prev) / (n + 1.0);
      li_prev = li;
      li = li_next;
      lf_prev = lf;
      lf = lf_next;
      phase *= step;
    }
    total += base * env * sector;
  }
  if (!is_finite(total)) throw OverflowError("spectral_kernel: non-finite sum");
  return total;
}

Complex spectral_kernel(const KernelQuery& q, const Scenario& scenario, const AuxSolution& aux,
                        int N, double damping) {
  if (!(damping >= 0.0)) throw DomainError("spectral_kernel: damping must be >= 0");
  const double S = phase_time(aux, scenario, q.t_i, q.t_f);
  return spectral_kernel_at_phase(q, scenario, aux, N, Complex(S, -damping));
}

}  // namespace dunkl
