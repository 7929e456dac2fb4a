#pragma once

// Time-dependent oscillator data: mass and frequency laws m(t), omega(t),
// solutions rho(t) of the auxiliary (Ermakov) equation
//
//   rho'' + (m'/m) rho' + omega^2 rho = 1 / (m^2 rho^3),
//
// the phase time S = int dt / (rho^2 m), and the effective frequency
// Omega^2 = m^2 rho^3 (rho'' + (m'/m) rho') whose constraint
// Omega^2 + m^2 rho^4 omega^2 = 1 every Ermakov solution satisfies.

#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dunkl {

/// Physical constants shared by every evaluation. Natural units: hbar
/// defaults to 1; nu is the Wigner parameter.
struct PhysicsConfig {
  double hbar = 1.0;
  double nu = 0.0;

  /// Throws DomainError unless hbar > 0 and nu > -1/2.
  void validate() const;
};

struct ConstantOscillator {
  double m0;
  double omega0;
};

/// m(t) = m0 e^{k t}, constant omega0.
struct CaldirolaKanai {
  double m0;
  double k;
  double omega0;
};

/// m(t) = m0 cos^2(upsilon t), constant omega0.
struct PulsatingMass {
  double m0;
  double upsilon;
  double omega0;
};

/// Sampled m(t) and omega(t), interpolated by monotone piecewise cubics.
class TabulatedProfile {
 public:
  /// `t` strictly increasing with at least four samples, `m` positive,
  /// `omega` non-negative, all of the same length.
  TabulatedProfile(std::vector<double> t, std::vector<double> m, std::vector<double> omega);

  /// Reads `t,m[,omega]` CSV. When the omega column is absent every sample
  /// uses `default_omega`.
  static TabulatedProfile from_csv(const std::filesystem::path& path, double default_omega);

  double t_min() const { return t_.front(); }
  double t_max() const { return t_.back(); }
  const std::vector<double>& times() const { return t_; }

  double mass(double t) const;
  double mass_rate(double t) const;
  double omega(double t) const;

 private:
  void check_range(double t) const;

  struct Interp;
  std::vector<double> t_;
  std::shared_ptr<const Interp> interp_;
};

/// Declarative description of m(t) and omega(t). Immutable; cheap to copy.
class Scenario {
 public:
  using Kind = std::variant<ConstantOscillator, CaldirolaKanai, PulsatingMass, TabulatedProfile>;

  static Scenario constant(double m0, double omega0);
  static Scenario caldirola_kanai(double m0, double k, double omega0);
  static Scenario pulsating(double m0, double upsilon, double omega0);
  static Scenario tabulated(TabulatedProfile profile);

  const Kind& kind() const { return kind_; }
  std::string name() const;

  /// m(t); throws MassNodeError where the mass vanishes and DomainError
  /// outside a tabulated range.
  double mass(double t) const;
  /// dm/dt.
  double mass_rate(double t) const;
  double omega(double t) const;

  /// Throws MassNodeError if m vanishes anywhere on [t0, t1].
  void check_positive_mass(double t0, double t1) const;

 private:
  explicit Scenario(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

double mass_at(const Scenario& scenario, double t);

enum class AuxOrigin { ClosedForm, Numeric };

/// A positive solution rho(t) of the auxiliary equation together with its
/// first two derivatives. ClosedForm solutions are analytic; Numeric ones are
/// quintic Hermite interpolants of an adaptive Runge-Kutta solve. Immutable
/// and safe to share across threads.
class AuxSolution {
 public:
  AuxOrigin origin() const;
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }

  /// Ermakov-residual tolerance the solution is expected to meet:
  /// 1e-12 for closed forms, 1e-8 for numeric solves.
  double declared_tolerance() const;

  double rho(double t) const;
  double rho_dot(double t) const;
  /// Analytic for closed forms; second derivative of the interpolant for
  /// numeric solutions (never the ODE right-hand side).
  double rho_ddot(double t) const;

  /// dS/dt = 1/(rho^2 m) for closed forms, which is constant; NaN for
  /// numeric solutions.
  double closed_phase_rate() const;

  /// Number of accepted integrator steps (0 for closed forms).
  std::size_t step_count() const;

  struct Closed;
  struct Numeric;

 private:
  friend AuxSolution ermakov_closed_form(const Scenario&);
  friend AuxSolution ermakov_integrate(const Scenario&, double, double, std::pair<double, double>,
                                       double);
  AuxSolution() = default;
  void check_domain(double t) const;

  std::variant<std::shared_ptr<const Closed>, std::shared_ptr<const Numeric>> impl_;
  double t_min_ = 0.0;
  double t_max_ = 0.0;
};

/// Closed-form rho for Constant (rho = (m0 omega0)^{-1/2}), Caldirola-Kanai
/// (rho = e^{-kt/2}/sqrt(m0 mu), mu = sqrt(omega0^2 - k^2/4)) and pulsating
/// mass (rho = 1/(sqrt(m0 eta) |cos upsilon t|), eta = sqrt(omega0^2 + upsilon^2)).
/// Throws UnsupportedScenarioError for tabulated scenarios and RegimeError
/// outside the oscillatory regime.
AuxSolution ermakov_closed_form(const Scenario& scenario);

/// Reduced frequency mu = sqrt(omega0^2 - k^2/4); RegimeError unless positive.
double reduced_frequency(double omega0, double k);
/// Augmented frequency eta = sqrt(omega0^2 + upsilon^2).
double augmented_frequency(double omega0, double upsilon);

/// Initial conditions rho = 1/sqrt(m omega), rho' = 0 at t.
std::pair<double, double> default_initial_conditions(const Scenario& scenario, double t);

/// Numeric Ermakov solve on t_span = [t0, t1] with an embedded
/// Dormand-Prince 5(4) pair. Each accepted step satisfies
/// (local error)/(step) <= tol with a mixed absolute/relative scale. Throws
/// SingularityError when rho drops below 1e-8 and StepFailureError when the
/// step size underflows.
AuxSolution ermakov_integrate(const Scenario& scenario, double rho0, double rho_dot0,
                              std::pair<double, double> t_span, double tol);

/// Phase time S(t_i, t_f) = int_{t_i}^{t_f} d sigma / (rho^2 m); signed, so
/// S(t_f, t_i) = -S(t_i, t_f). Closed forms use rate * (t_f - t_i); numeric
/// solutions use adaptive Gauss-Kronrod quadrature (absolute error < 1e-10).
double phase_time(const AuxSolution& aux, const Scenario& scenario, double t_i, double t_f);

/// rho'' + (m'/m) rho' + omega^2 rho - 1/(m^2 rho^3).
double ermakov_residual(const Scenario& scenario, const AuxSolution& aux, double t);

/// Omega^2 = m^2 rho^3 (rho'' + (m'/m) rho').
double omega_eff_sq(const Scenario& scenario, const AuxSolution& aux, double t);

/// Omega^2 + m^2 rho^4 omega^2 - 1.
double constraint_residual(const Scenario& scenario, const AuxSolution& aux, double t);

}  // namespace dunkl
