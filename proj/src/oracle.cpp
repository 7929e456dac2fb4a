#include "dunkl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

constexpr Complex kI{0.0, 1.0};

// int_{lo}^{hi} y^{2 kappa} dy.
double cell_weight(double lo, double hi, double kappa) {
  const double p = 2.0 * kappa + 1.0;
  return (std::pow(hi, p) - std::pow(lo, p)) / p;
}

std::vector<double> cell_weights(const RadialGrid& grid, double kappa) {
  std::vector<double> w(grid.size());
  const double h = grid.h();
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = cell_weight(j * h, (j + 1) * h, kappa);
  return w;
}

std::vector<Complex> to_phi(const WavePacket& p) {
  std::vector<Complex> phi(p.u.size());
  const double kappa = p.kappa();
  for (std::size_t j = 0; j < phi.size(); ++j) phi[j] = p.u[j] / std::pow(p.grid.nodes()[j], kappa);
  return phi;
}

void check_same(const WavePacket& a, const WavePacket& b) {
  if (!(a.grid == b.grid) || a.u.size() != b.u.size()) throw GridError("packets live on different grids");
  if (a.parity.e != b.parity.e || a.nu != b.nu) throw GridError("packets belong to different sectors");
}

// phi (an even function of y) at arbitrary y >= 0 by six-point Lagrange
// interpolation, mirroring nodes across y = 0 and treating phi as zero past
// the outer boundary.
Complex interpolate_phi(const std::vector<Complex>& phi, double h, double y) {
  const long n = static_cast<long>(phi.size());
  const double s = y / h - 0.5;  // fractional node index
  const long j = static_cast<long>(std::floor(s));
  Complex value = 0.0;
  for (long k = j - 2; k <= j + 3; ++k) {
    double basis = 1.0;
    for (long l = j - 2; l <= j + 3; ++l) {
      if (l != k) basis *= (s - static_cast<double>(l)) / static_cast<double>(k - l);
    }
    const long idx = (k < 0) ? -k - 1 : k;
    if (idx < n) value += basis * phi[idx];
  }
  return value;
}

}  // namespace

RadialGrid::RadialGrid(double y_max, double h) : y_max_(y_max), h_(h) {
  if (!(h > 0.0) || !(y_max > 0.0) || !std::isfinite(y_max)) throw GridError("grid needs h > 0 and y_max > 0");
  const double cells = y_max / h;
  const double rounded = std::round(cells);
  if (rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * rounded) {
    throw GridError("y_max / h must be an integer");
  }
  const auto n = static_cast<std::size_t>(rounded);
  nodes_.resize(n);
  for (std::size_t j = 0; j < n; ++j) nodes_[j] = (static_cast<double>(j) + 0.5) * h;
}

WavePacket make_packet(const Parity& parity, double nu, const RadialGrid& grid,
                       const std::function<Complex(double)>& psi, double t) {
  WavePacket p{parity, nu, grid, {}, t};
  p.u.reserve(grid.size());
  for (double y : grid.nodes()) p.u.push_back(std::pow(y, nu) * psi(y));
  return p;
}

std::vector<Complex> packet_psi(const WavePacket& packet) {
  std::vector<Complex> psi(packet.u.size());
  for (std::size_t j = 0; j < psi.size(); ++j) {
    psi[j] = packet.u[j] / std::pow(packet.grid.nodes()[j], packet.nu);
  }
  return psi;
}

std::vector<double> flat_weights(const WavePacket& packet) {
  const double kappa = packet.kappa();
  std::vector<double> w = cell_weights(packet.grid, kappa);
  for (std::size_t j = 0; j < w.size(); ++j) w[j] /= std::pow(packet.grid.nodes()[j], 2.0 * kappa);
  return w;
}

double norm(const WavePacket& packet) {
  const std::vector<double> w = flat_weights(packet);
  double sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) sum += w[j] * std::norm(packet.u[j]);
  return std::sqrt(sum);
}

double l2_distance(const WavePacket& a, const WavePacket& b) {
  check_same(a, b);
  const std::vector<double> w = flat_weights(b);
  double diff = 0.0;
  double ref = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    diff += w[j] * std::norm(a.u[j] - b.u[j]);
    ref += w[j] * std::norm(b.u[j]);
  }
  if (!(ref > 0.0)) throw GridError("l2_distance: reference packet has zero norm");
  return std::sqrt(diff / ref);
}

std::vector<Complex> dunkl_apply(const std::vector<double>& x, const std::vector<Complex>& psi,
                                 double nu) {
  const std::size_t n = x.size();
  if (psi.size() != n) throw GridError("dunkl_apply: sample count mismatch");
  if (n < 4 || n % 2 != 0) throw GridError("dunkl_apply: need an even number (>= 4) of nodes");
  const double h = x[1] - x[0];
  if (!(h > 0.0)) throw GridError("dunkl_apply: nodes must increase");
  const double scale = std::max(std::abs(x.front()), std::abs(x.back()));
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(x[j] + x[n - 1 - j]) > 1e-12 * scale) throw GridError("dunkl_apply: grid is not symmetric about 0");
    if (j > 0 && std::abs((x[j] - x[j - 1]) - h) > 1e-9 * h) throw GridError("dunkl_apply: grid is not uniform");
    if (x[j] == 0.0) throw GridError("dunkl_apply: grid must exclude 0");
  }
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex d1, d2;
    if (j == 0) {
      d1 = (-3.0 * psi[0] + 4.0 * psi[1] - psi[2]) / (2.0 * h);
      d2 = (2.0 * psi[0] - 5.0 * psi[1] + 4.0 * psi[2] - psi[3]) / (h * h);
    } else if (j == n - 1) {
      d1 = (3.0 * psi[j] - 4.0 * psi[j - 1] + psi[j - 2]) / (2.0 * h);
      d2 = (2.0 * psi[j] - 5.0 * psi[j - 1] + 4.0 * psi[j - 2] - psi[j - 3]) / (h * h);
    } else {
      d1 = (psi[j + 1] - psi[j - 1]) / (2.0 * h);
      d2 = (psi[j + 1] - 2.0 * psi[j] + psi[j - 1]) / (h * h);
    }
    const double xj = x[j];
    out[j] = d2 + (2.0 * nu / xj) * d1 - (nu / (xj * xj)) * (psi[j] - psi[n - 1 - j]);
  }
  return out;
}

Potential harmonic_potential(const Scenario& scenario) {
  return {[scenario](double y, double t) {
    const double w = scenario.omega(t);
    return 0.5 * scenario.mass(t) * w * w * y * y;
  }};
}

WavePacket cn_evolve(const WavePacket& packet, const Scenario& scenario,
                     const Potential& potential, double t_f, int steps,
                     const PhysicsConfig& config) {
  config.validate();
  if (!(packet.nu > 0.0)) throw DomainError("cn_evolve: the reduced solver requires nu > 0");
  if (steps < 1) throw DomainError("cn_evolve: steps must be >= 1");
  if (!(t_f > packet.t)) throw DomainError("cn_evolve: t_f must exceed the packet time");
  if (packet.u.size() != packet.grid.size() || packet.grid.size() < 2) {
    throw GridError("cn_evolve: degenerate grid");
  }
  scenario.check_positive_mass(packet.t, t_f);

  const std::size_t n = packet.grid.size();
  const double h = packet.grid.h();
  const double kappa = packet.kappa();
  const double hbar = config.hbar;
  const std::vector<double>& y = packet.grid.nodes();
  const std::vector<double> w = cell_weights(packet.grid, kappa);

  // Face conductances y_face^{2 kappa} / distance; face j sits between nodes
  // j-1 and j. Face 0 (y = 0) carries no flux; the outer face is the
  // Dirichlet wall half a cell beyond the last node.
  std::vector<double> face(n + 1);
  face[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) face[j] = std::pow(j * h, 2.0 * kappa) / h;
  face[n] = std::pow(n * h, 2.0 * kappa) / (0.5 * h);

  std::vector<Complex> phi = to_phi(packet);
  std::vector<Complex> rhs(n), diag(n), upper(n), c_prime(n), d_prime(n);
  std::vector<double> a_diag(n), a_off(n);
  const double dt = (t_f - packet.t) / steps;
  const double alpha = dt / (2.0 * hbar);

  for (int step = 0; step < steps; ++step) {
    const double t_mid = packet.t + (step + 0.5) * dt;
    const double kin = hbar * hbar / (2.0 * scenario.mass(t_mid));
    for (std::size_t j = 0; j < n; ++j) {
      a_diag[j] = kin * (face[j] + face[j + 1]) + w[j] * potential.value(y[j], t_mid);
      a_off[j] = -kin * face[j + 1];  // couples j and j+1
    }
    for (std::size_t j = 0; j < n; ++j) {
      Complex a_phi = a_diag[j] * phi[j];
      if (j > 0) a_phi += a_off[j - 1] * phi[j - 1];
      if (j + 1 < n) a_phi += a_off[j] * phi[j + 1];
      rhs[j] = w[j] * phi[j] - kI * alpha * a_phi;
      diag[j] = w[j] + kI * alpha * a_diag[j];
      upper[j] = kI * alpha * a_off[j];
    }
    // Thomas algorithm; the matrix is symmetric so lower == upper shifted.
    c_prime[0] = upper[0] / diag[0];
    d_prime[0] = rhs[0] / diag[0];
    for (std::size_t j = 1; j < n; ++j) {
      const Complex denom = diag[j] - upper[j - 1] * c_prime[j - 1];
      c_prime[j] = upper[j] / denom;
      d_prime[j] = (rhs[j] - upper[j - 1] * d_prime[j - 1]) / denom;
    }
    phi[n - 1] = d_prime[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) phi[j] = d_prime[j] - c_prime[j] * phi[j + 1];
  }

  WavePacket out = packet;
  out.t = t_f;
  for (std::size_t j = 0; j < n; ++j) out.u[j] = phi[j] * std::pow(y[j], kappa);
  for (const Complex& v : out.u) {
    if (!is_finite(v)) throw StepFailureError("cn_evolve: non-finite state");
  }
  return out;
}

namespace {

std::vector<Complex> quadrature_evolve(const WavePacket& packet, const EndpointData& ends,
                                       double S, const QuadratureRule& rule,
                                       const PhysicsConfig& config) {
  const std::vector<Complex> phi = to_phi(packet);
  const double h = packet.grid.h();
  const bool even = packet.parity.is_even();
  std::vector<Complex> psi_i(rule.size());
  double peak = 0.0;
  for (std::size_t r = 0; r < rule.size(); ++r) {
    const double yr = rule.nodes[r];
    const Complex p = interpolate_phi(phi, h, yr);
    psi_i[r] = even ? p : yr * p;
    peak = std::max(peak, std::abs(psi_i[r]));
  }
  const std::vector<double>& y = packet.grid.nodes();
  std::vector<Complex> u_f(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    Complex acc = 0.0;
    for (std::size_t r = 0; r < rule.size(); ++r) {
      if (std::abs(psi_i[r]) <= 1e-18 * peak) continue;
      acc += rule.weights[r] *
             sector_kernel_analytic(packet.parity, rule.nodes[r], y[j], ends, S, config) *
             psi_i[r];
    }
    u_f[j] = 2.0 * std::pow(y[j], packet.nu) * acc;
  }
  return u_f;
}

}  // namespace

WavePacket kernel_evolve(const WavePacket& packet, const Scenario& scenario,
                         const AuxSolution& aux, double t_f, const QuadratureRule& rule,
                         const PhysicsConfig& config, KernelEvolveOptions options) {
  config.validate();
  if (config.nu != packet.nu || rule.nu != packet.nu) {
    throw DomainError("kernel_evolve: nu of config, rule and packet must agree");
  }
  if (!(t_f > packet.t)) throw DomainError("kernel_evolve: t_f must exceed the packet time");
  const double S = checked_phase_time(scenario, aux, packet.t, t_f);
  const EndpointData ends = endpoint_data(scenario, aux, packet.t, t_f);

  WavePacket out = packet;
  out.t = t_f;
  out.u = quadrature_evolve(packet, ends, S, rule, config);
  if (options.resolution_tol > 0.0) {
    WavePacket fine = out;
    fine.u = quadrature_evolve(packet, ends, S, refine(rule), config);
    const double gap = l2_distance(out, fine);
    if (!(gap <= options.resolution_tol)) {
      throw QuadratureResolutionError("kernel_evolve: quadrature unresolved (refined rule moves the result by " +
                                      std::to_string(gap) + ")");
    }
    out.u = std::move(fine.u);
  }
  return out;
}

}  // namespace dunkl
