#pragma once

// Time-dependent eigenfunctions of the Dunkl oscillator, quadrature for the
// measure |x|^{2 nu} dx, and the truncated spectral form of the propagator.

#include <functional>
#include <optional>
#include <vector>

#include "dunkl/kernel.hpp"
#include "dunkl/specfun.hpp"
#include "dunkl/tdsystem.hpp"

namespace dunkl {

struct WaveSample {
  double x;
  double t;
  Complex value;
};

/// Psi_{n,parity}(x, t). The dynamical phase uses s(t) = int_0^t d sigma/(rho^2 m).
///   even: sqrt(n!/(hbar^{nu+1/2} Gamma(n+nu+1/2) rho^{2nu+1})) L_n^{nu-1/2}(x^2/(hbar rho^2))
///   odd:  sqrt(n!/(hbar^{nu+3/2} Gamma(n+nu+3/2) rho^{2nu+3})) x L_n^{nu+1/2}(x^2/(hbar rho^2))
/// each times exp[(i m rho rho' - 1) x^2/(2 hbar rho^2) - i(2n + nu + 1/2 or 3/2) s(t)].
Complex wavefn(const Parity& parity, int n, double x, double t, const Scenario& scenario,
               const AuxSolution& aux, const PhysicsConfig& config);

/// Same with the auxiliary data and the phase time s supplied directly; s may
/// be complex (damped or imaginary-time continuation).
Complex wavefn_at(const Parity& parity, int n, double x, double rho, double rho_dot, double m,
                  Complex s, const PhysicsConfig& config);

/// Caldirola-Kanai eigenfunction in closed form,
///   sqrt(n! (m0 mu/hbar)^{nu+1/2} / Gamma(n+nu+1/2)) L_n^{nu-1/2}(mu m0 e^{kt} x^2/hbar)
///   exp[-(m0 e^{kt}/2hbar)(ik/2 + mu) x^2 + (k/2 (nu+1/2) - i mu (2n+nu+1/2)) t]
/// for the even sector, and the x-weighted analogue with nu+1/2 -> nu+3/2
/// for the odd one.
Complex wavefn_ck(const Parity& parity, int n, double x, double t, double m0, double k,
                  double omega0, const PhysicsConfig& config);

/// Nodes and weights on [0, x_max]; the weights already contain x^{2 nu}.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double nu = 0.0;
  double x_max = 0.0;
  int panels = 0;
  int order = 0;

  std::size_t size() const { return nodes.size(); }
};

/// Composite Gauss rule for int_0^{x_max} f(x) x^{2 nu} dx. `panels` uniform
/// panels of `order` points each; the panel touching 0 is split into
/// geometrically shrinking pieces, the innermost carrying a Gauss-Jacobi
/// rule for the x^{2 nu} weight so the singular endpoint is integrated
/// exactly for polynomial f.
QuadratureRule build_quadrature(double nu, double x_max, int panels, int order);

/// The same rule with twice as many panels.
QuadratureRule refine(const QuadratureRule& rule);

/// Gauss-Jacobi nodes/weights on [0, 1] for the weight x^c (c > -1).
void gauss_jacobi_unit(int order, double c, std::vector<double>& nodes,
                       std::vector<double>& weights);

/// A full-line function sampled at the rule nodes (`positive`) and at their
/// mirror images (`negative`). A known parity lets dunkl_inner skip
/// integrals that vanish by symmetry.
struct SampledFunction {
  std::vector<Complex> positive;
  std::vector<Complex> negative;
  std::optional<int> parity;
};

SampledFunction sample(const QuadratureRule& rule, const std::function<Complex(double)>& f);
/// Samples only x > 0 and fills the mirror by symmetry (e = +1 even, -1 odd).
SampledFunction sample_with_parity(const QuadratureRule& rule, int e,
                                   const std::function<Complex(double)>& f);

/// int_{-inf}^{inf} conj(f) g |x|^{2 nu} dx over the rule's range.
Complex dunkl_inner(const SampledFunction& f, const SampledFunction& g,
                    const QuadratureRule& rule);

/// N-term spectral sum sum_n [Psi_{n,+}(f) Psi*_{n,+}(i) + Psi_{n,-}(f) Psi*_{n,-}(i)]
/// with the phase time replaced by S - i damping.
Complex spectral_kernel(const KernelQuery& q, const Scenario& scenario, const AuxSolution& aux,
                        int N, double damping);

/// The same sum at an arbitrary complex phase time S (e.g. -i tau).
Complex spectral_kernel_at_phase(const KernelQuery& q, const Scenario& scenario,
                                 const AuxSolution& aux, int N, Complex S);

}  // namespace dunkl
