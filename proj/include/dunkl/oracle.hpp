#pragma once

// Independent numerical evolution used to check the closed-form kernels.
//
// A state in one parity sector is stored through its reduced function
// u(y) = y^nu psi(y), y = |x|, on a staggered grid y_j = (j + 1/2) h. The
// Crank-Nicolson solver works with phi = u / y^kappa (kappa = nu for the even
// sector, nu + 1 for the odd one), which satisfies
//
//   i hbar phi_t = -(hbar^2 / 2m) y^{-2 kappa} (y^{2 kappa} phi_y)_y + V phi,
//
// and discretizes it by finite volumes with cell weights int y^{2 kappa} dy.
// The scheme is exactly unitary in the weighted discrete norm and second
// order in h even though u itself is not smooth at y = 0.

#include <functional>
#include <vector>

#include "dunkl/kernel.hpp"
#include "dunkl/spectral.hpp"
#include "dunkl/specfun.hpp"
#include "dunkl/tdsystem.hpp"

namespace dunkl {

class RadialGrid {
 public:
  /// Uniform grid on (0, y_max] with nodes (j + 1/2) h; y_max / h must be an
  /// integer (GridError otherwise).
  RadialGrid(double y_max, double h);

  double y_max() const { return y_max_; }
  double h() const { return h_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }

  bool operator==(const RadialGrid& other) const {
    return y_max_ == other.y_max_ && h_ == other.h_;
  }

 private:
  double y_max_;
  double h_;
  std::vector<double> nodes_;
};

struct WavePacket {
  Parity parity;
  double nu;
  RadialGrid grid;
  std::vector<Complex> u;
  double t;

  /// kappa = lambda + 1/2.
  double kappa() const { return parity.bessel_order() + 0.5; }
};

/// Packet from psi restricted to y > 0 (u_j = y_j^nu psi(y_j)).
WavePacket make_packet(const Parity& parity, double nu, const RadialGrid& grid,
                       const std::function<Complex(double)>& psi, double t);

/// psi(y_j) = u_j / y_j^nu.
std::vector<Complex> packet_psi(const WavePacket& packet);

/// Weights of the flat reduced measure dy on the grid, consistent with the
/// solver's conserved norm.
std::vector<double> flat_weights(const WavePacket& packet);

/// sqrt(int |u|^2 dy).
double norm(const WavePacket& packet);

/// ||a - b|| / ||b|| under dy. GridError for mismatched grids or parities.
double l2_distance(const WavePacket& a, const WavePacket& b);

/// D^2 psi = psi'' + (2 nu/x) psi' - (nu/x^2)(psi(x) - psi(-x)) by centered
/// second-order differences on a uniform grid symmetric about 0 that
/// excludes 0. The two outermost nodes use one-sided second-order stencils.
/// GridError for non-symmetric or non-uniform grids.
std::vector<Complex> dunkl_apply(const std::vector<double>& x, const std::vector<Complex>& psi,
                                 double nu);

/// Radial potential V(y, t), to be added to the kinetic term.
struct Potential {
  std::function<double(double y, double t)> value;
};

/// V = m(t) omega(t)^2 y^2 / 2 for the scenario.
Potential harmonic_potential(const Scenario& scenario);

/// Crank-Nicolson evolution from packet.t to t_f in `steps` equal steps,
/// with m(t) and V evaluated at the step midpoints. Requires nu > 0.
WavePacket cn_evolve(const WavePacket& packet, const Scenario& scenario,
                     const Potential& potential, double t_f, int steps,
                     const PhysicsConfig& config);

struct KernelEvolveOptions {
  /// When positive, the evolution is repeated with a refined rule and a
  /// QuadratureResolutionError is raised if the two results differ by more
  /// than this relative L2 amount.
  double resolution_tol = 1e-6;
};

/// Evolution by quadrature against the sector kernel:
///   u_f(y_f) = int_0^inf 2 (y_f y_i)^nu K_parity(y_f, y_i) u_i(y_i) dy_i.
/// The initial state is interpolated onto the rule (sixth-order Lagrange in
/// phi) and the result is sampled on the packet's grid.
WavePacket kernel_evolve(const WavePacket& packet, const Scenario& scenario,
                         const AuxSolution& aux, double t_f, const QuadratureRule& rule,
                         const PhysicsConfig& config, KernelEvolveOptions options = {});

}  // namespace dunkl
