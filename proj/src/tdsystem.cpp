#include "dunkl/tdsystem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

// pchip.hpp in Boost 1.74 uses isnan without including its declaration.
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/interpolators/quintic_hermite.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

constexpr double kNodeTolerance = 1e-12;  // |cos(upsilon t)| below this is a mass node
constexpr double kRhoFloor = 1e-8;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  return cells;
}

}  // namespace

void PhysicsConfig::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("hbar must be positive");
  if (!(nu > -0.5) || !std::isfinite(nu)) throw DomainError("nu must exceed -1/2");
}

// ---------------------------------------------------------------------------
// Tabulated profiles

struct TabulatedProfile::Interp {
  boost::math::interpolators::pchip<std::vector<double>> mass;
  boost::math::interpolators::pchip<std::vector<double>> omega;
};

TabulatedProfile::TabulatedProfile(std::vector<double> t, std::vector<double> m,
                                   std::vector<double> omega)
    : t_(t) {
  if (t.size() < 4) throw DomainError("tabulated scenario needs at least four samples");
  if (m.size() != t.size() || omega.size() != t.size()) {
    throw DomainError("tabulated scenario columns differ in length");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i])) throw DomainError("tabulated times must be finite");
    if (i > 0 && !(t[i] > t[i - 1])) throw DomainError("tabulated times must increase strictly");
    require_positive(m[i], "tabulated mass");
    if (!(omega[i] >= 0.0)) throw DomainError("tabulated omega must be non-negative");
  }
  auto t_copy = t;
  interp_ = std::make_shared<const Interp>(
      Interp{boost::math::interpolators::pchip<std::vector<double>>(std::move(t), std::move(m)),
             boost::math::interpolators::pchip<std::vector<double>>(std::move(t_copy),
                                                                    std::move(omega))});
}

TabulatedProfile TabulatedProfile::from_csv(const std::filesystem::path& path,
                                            double default_omega) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tabulated scenario file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty tabulated scenario file");
  const auto header = split_csv(line);
  const bool has_omega = header.size() == 3 && header[2] == "omega";
  if (header.size() < 2 || header[0] != "t" || header[1] != "m" ||
      (header.size() == 3 && !has_omega) || header.size() > 3) {
    throw ConfigError("tabulated scenario header must be t,m[,omega]");
  }
  std::vector<double> t, m, omega;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw ConfigError("wrong column count on line " + std::to_string(line_no));
    }
    try {
      std::size_t used = 0;
      auto parse = [&](const std::string& s) {
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      };
      t.push_back(parse(cells[0]));
      m.push_back(parse(cells[1]));
      omega.push_back(has_omega ? parse(cells[2]) : default_omega);
    } catch (const std::logic_error&) {
      throw ConfigError("malformed number on line " + std::to_string(line_no));
    }
  }
  try {
    return TabulatedProfile(std::move(t), std::move(m), std::move(omega));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

void TabulatedProfile::check_range(double t) const {
  if (!(t >= t_.front() && t <= t_.back())) {
    throw DomainError("time " + std::to_string(t) + " outside tabulated range");
  }
}

double TabulatedProfile::mass(double t) const {
  check_range(t);
  const double m = interp_->mass(t);
  if (!(m > 0.0)) throw MassNodeError("interpolated mass is not positive");
  return m;
}

double TabulatedProfile::mass_rate(double t) const {
  check_range(t);
  return interp_->mass.prime(t);
}

double TabulatedProfile::omega(double t) const {
  check_range(t);
  return interp_->omega(t);
}

// ---------------------------------------------------------------------------
// Scenario

Scenario Scenario::constant(double m0, double omega0) {
  require_positive(m0, "m0");
  if (!(omega0 >= 0.0)) throw DomainError("omega0 must be non-negative");
  return Scenario(ConstantOscillator{m0, omega0});
}

Scenario Scenario::caldirola_kanai(double m0, double k, double omega0) {
  require_positive(m0, "m0");
  if (!std::isfinite(k)) throw DomainError("k must be finite");
  if (!(omega0 >= 0.0)) throw DomainError("omega0 must be non-negative");
  if (!(omega0 * omega0 > k * k / 4.0)) {
    throw RegimeError("Caldirola-Kanai scenario needs omega0^2 > k^2/4");
  }
  return Scenario(CaldirolaKanai{m0, k, omega0});
}

Scenario Scenario::pulsating(double m0, double upsilon, double omega0) {
  require_positive(m0, "m0");
  if (!std::isfinite(upsilon)) throw DomainError("upsilon must be finite");
  if (!(omega0 >= 0.0)) throw DomainError("omega0 must be non-negative");
  return Scenario(PulsatingMass{m0, upsilon, omega0});
}

Scenario Scenario::tabulated(TabulatedProfile profile) { return Scenario(std::move(profile)); }

std::string Scenario::name() const {
  return std::visit(Overloaded{[](const ConstantOscillator&) { return std::string("constant"); },
                               [](const CaldirolaKanai&) { return std::string("ck"); },
                               [](const PulsatingMass&) { return std::string("pulsating"); },
                               [](const TabulatedProfile&) { return std::string("tabulated"); }},
                    kind_);
}

double Scenario::mass(double t) const {
  return std::visit(
      Overloaded{[](const ConstantOscillator& c) { return c.m0; },
                 [t](const CaldirolaKanai& c) { return c.m0 * std::exp(c.k * t); },
                 [t](const PulsatingMass& p) {
                   const double c = std::cos(p.upsilon * t);
                   if (std::abs(c) < kNodeTolerance) {
                     throw MassNodeError("pulsating mass vanishes at t = " + std::to_string(t));
                   }
                   return p.m0 * c * c;
                 },
                 [t](const TabulatedProfile& tab) { return tab.mass(t); }},
      kind_);
}

double Scenario::mass_rate(double t) const {
  return std::visit(
      Overloaded{[](const ConstantOscillator&) { return 0.0; },
                 [t](const CaldirolaKanai& c) { return c.k * c.m0 * std::exp(c.k * t); },
                 [t](const PulsatingMass& p) {
                   return -p.m0 * p.upsilon * std::sin(2.0 * p.upsilon * t);
                 },
                 [t](const TabulatedProfile& tab) { return tab.mass_rate(t); }},
      kind_);
}

double Scenario::omega(double t) const {
  return std::visit(Overloaded{[](const ConstantOscillator& c) { return c.omega0; },
                               [](const CaldirolaKanai& c) { return c.omega0; },
                               [](const PulsatingMass& p) { return p.omega0; },
                               [t](const TabulatedProfile& tab) { return tab.omega(t); }},
                    kind_);
}

void Scenario::check_positive_mass(double t0, double t1) const {
  if (t1 < t0) std::swap(t0, t1);
  if (const auto* p = std::get_if<PulsatingMass>(&kind_)) {
    const double u = std::abs(p->upsilon);
    if (u == 0.0) return;
    // Nodes sit at u t = pi/2 + j pi.
    const double first = std::ceil((u * t0 - std::numbers::pi / 2) / std::numbers::pi);
    const double node = (std::numbers::pi / 2 + first * std::numbers::pi) / u;
    if (node <= t1 + kNodeTolerance) {
      throw MassNodeError("pulsating mass vanishes at t = " + std::to_string(node) +
                          " inside the queried interval");
    }
    (void)mass(t0);
    (void)mass(t1);
  } else if (const auto* tab = std::get_if<TabulatedProfile>(&kind_)) {
    for (double t : tab->times()) {
      if (t >= t0 && t <= t1) (void)tab->mass(t);
    }
    (void)tab->mass(t0);
    (void)tab->mass(t1);
  }
}

double mass_at(const Scenario& scenario, double t) { return scenario.mass(t); }

// ---------------------------------------------------------------------------
// Auxiliary solutions

struct AuxSolution::Closed {
  enum class Law { Constant, CaldirolaKanai, Pulsating } law;
  double amplitude;  // rho at t = 0 (up to the |cos| factor for pulsating)
  double rate;       // omega0, mu or eta
  double k = 0.0;
  double upsilon = 0.0;
};

struct AuxSolution::Numeric {
  boost::math::interpolators::quintic_hermite<std::vector<double>> rho;
  std::size_t steps;
};

double reduced_frequency(double omega0, double k) {
  const double sq = omega0 * omega0 - k * k / 4.0;
  if (!(sq > 0.0)) throw RegimeError("reduced frequency needs omega0^2 > k^2/4");
  return std::sqrt(sq);
}

double augmented_frequency(double omega0, double upsilon) {
  return std::sqrt(omega0 * omega0 + upsilon * upsilon);
}

AuxSolution ermakov_closed_form(const Scenario& scenario) {
  using Law = AuxSolution::Closed::Law;
  AuxSolution aux;
  aux.t_min_ = -std::numeric_limits<double>::infinity();
  aux.t_max_ = std::numeric_limits<double>::infinity();
  auto closed = std::visit(
      Overloaded{
          [](const ConstantOscillator& c) {
            if (!(c.omega0 > 0.0)) throw RegimeError("closed-form rho needs omega0 > 0");
            return AuxSolution::Closed{Law::Constant, 1.0 / std::sqrt(c.m0 * c.omega0), c.omega0};
          },
          [](const CaldirolaKanai& c) {
            const double mu = reduced_frequency(c.omega0, c.k);
            return AuxSolution::Closed{Law::CaldirolaKanai, 1.0 / std::sqrt(c.m0 * mu), mu, c.k};
          },
          [](const PulsatingMass& p) {
            const double eta = augmented_frequency(p.omega0, p.upsilon);
            if (!(eta > 0.0)) throw RegimeError("closed-form rho needs omega0^2 + upsilon^2 > 0");
            return AuxSolution::Closed{Law::Pulsating, 1.0 / std::sqrt(p.m0 * eta), eta, 0.0,
                                       p.upsilon};
          },
          [](const TabulatedProfile&) -> AuxSolution::Closed {
            throw UnsupportedScenarioError("tabulated scenarios have no closed-form rho");
          }},
      scenario.kind());
  aux.impl_ = std::make_shared<const AuxSolution::Closed>(closed);
  return aux;
}

std::pair<double, double> default_initial_conditions(const Scenario& scenario, double t) {
  const double m = scenario.mass(t);
  const double w = scenario.omega(t);
  if (!(w > 0.0)) throw RegimeError("default initial conditions need omega(t) > 0");
  return {1.0 / std::sqrt(m * w), 0.0};
}

AuxOrigin AuxSolution::origin() const {
  return std::holds_alternative<std::shared_ptr<const Closed>>(impl_) ? AuxOrigin::ClosedForm
                                                                      : AuxOrigin::Numeric;
}

double AuxSolution::declared_tolerance() const {
  return origin() == AuxOrigin::ClosedForm ? 1e-12 : 1e-8;
}

std::size_t AuxSolution::step_count() const {
  if (const auto* n = std::get_if<std::shared_ptr<const Numeric>>(&impl_)) return (*n)->steps;
  return 0;
}

double AuxSolution::closed_phase_rate() const {
  if (const auto* c = std::get_if<std::shared_ptr<const Closed>>(&impl_)) return (*c)->rate;
  return std::numeric_limits<double>::quiet_NaN();
}

void AuxSolution::check_domain(double t) const {
  if (!(t >= t_min_ && t <= t_max_)) {
    throw DomainError("time " + std::to_string(t) + " outside the auxiliary solution domain [" +
                      std::to_string(t_min_) + ", " + std::to_string(t_max_) + "]");
  }
}

namespace {

using Law = AuxSolution::Closed::Law;

double pulsating_cos(const AuxSolution::Closed& c, double t) {
  const double cs = std::cos(c.upsilon * t);
  if (std::abs(cs) < kNodeTolerance) throw MassNodeError("rho diverges at a pulsating mass node");
  return cs;
}

}  // namespace

double AuxSolution::rho(double t) const {
  check_domain(t);
  if (const auto* n = std::get_if<std::shared_ptr<const Numeric>>(&impl_)) return (*n)->rho(t);
  const Closed& c = *std::get<std::shared_ptr<const Closed>>(impl_);
  switch (c.law) {
    case Law::Constant:
      return c.amplitude;
    case Law::CaldirolaKanai:
      return c.amplitude * std::exp(-c.k * t / 2.0);
    case Law::Pulsating:
      return c.amplitude / std::abs(pulsating_cos(c, t));
  }
  return 0.0;
}

double AuxSolution::rho_dot(double t) const {
  check_domain(t);
  if (const auto* n = std::get_if<std::shared_ptr<const Numeric>>(&impl_)) {
    return (*n)->rho.prime(t);
  }
  const Closed& c = *std::get<std::shared_ptr<const Closed>>(impl_);
  switch (c.law) {
    case Law::Constant:
      return 0.0;
    case Law::CaldirolaKanai:
      return -c.k / 2.0 * rho(t);
    case Law::Pulsating: {
      const double cs = pulsating_cos(c, t);
      return rho(t) * c.upsilon * std::sin(c.upsilon * t) / cs;
    }
  }
  return 0.0;
}

double AuxSolution::rho_ddot(double t) const {
  check_domain(t);
  if (const auto* n = std::get_if<std::shared_ptr<const Numeric>>(&impl_)) {
    return (*n)->rho.double_prime(t);
  }
  const Closed& c = *std::get<std::shared_ptr<const Closed>>(impl_);
  switch (c.law) {
    case Law::Constant:
      return 0.0;
    case Law::CaldirolaKanai:
      return c.k * c.k / 4.0 * rho(t);
    case Law::Pulsating: {
      const double cs = pulsating_cos(c, t);
      const double tn = std::sin(c.upsilon * t) / cs;
      return rho(t) * c.upsilon * c.upsilon * (2.0 * tn * tn + 1.0);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Numeric Ermakov solve: Dormand-Prince 5(4) with local extrapolation and an
// error-per-unit-step acceptance test.

namespace {

using State = std::array<double, 2>;  // rho, rho_dot

struct ErmakovRhs {
  const Scenario& scenario;
  State operator()(double t, const State& y) const {
    const double m = scenario.mass(t);
    const double w = scenario.omega(t);
    const double rate = scenario.mass_rate(t) / m;
    const double r = y[0];
    return {y[1], 1.0 / (m * m * r * r * r) - rate * y[1] - w * w * r};
  }
};

struct RejectedStep {};

}  // namespace

AuxSolution ermakov_integrate(const Scenario& scenario, double rho0, double rho_dot0,
                              std::pair<double, double> t_span, double tol) {
  const auto [t0, t1] = t_span;
  if (!(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
    throw DomainError("ermakov_integrate: t_span must be a finite interval with t1 > t0");
  }
  require_positive(rho0, "rho0");
  require_positive(tol, "tol");
  if (!std::isfinite(rho_dot0)) throw DomainError("rho_dot0 must be finite");
  scenario.check_positive_mass(t0, t1);

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const ErmakovRhs f{scenario};
  const double span = t1 - t0;
  const double h_max = span / 16.0;
  const double h_min = 1e-13 * std::max(1.0, std::abs(t1));

  std::vector<double> ts{t0}, rs{rho0}, vs{rho_dot0};
  State y{rho0, rho_dot0};
  State k1 = f(t0, y);
  std::vector<double> as{k1[1]};

  auto combine = [](const State& base, double h, std::initializer_list<std::pair<double, State>> ks) {
    State out = base;
    for (const auto& [c, k] : ks) {
      out[0] += h * c * k[0];
      out[1] += h * c * k[1];
    }
    return out;
  };
  auto eval = [&](double t, const State& s) {
    if (!(s[0] > kRhoFloor)) throw RejectedStep{};
    return f(t, s);
  };

  double t = t0;
  double h = std::min(h_max, 1e-2 * span);
  bool floor_hit = false;
  while (t < t1) {
    if (t + h > t1) h = t1 - t;
    if (h < h_min) {
      if (floor_hit) throw SingularityError("rho approached zero (below 1e-8)");
      throw StepFailureError("ermakov_integrate: step size underflow, tolerance unreachable");
    }
    State y_new, k7;
    double err = 0.0;
    try {
      const State k2 = eval(t + c2 * h, combine(y, h, {{a21, k1}}));
      const State k3 = eval(t + c3 * h, combine(y, h, {{a31, k1}, {a32, k2}}));
      const State k4 = eval(t + c4 * h, combine(y, h, {{a41, k1}, {a42, k2}, {a43, k3}}));
      const State k5 =
          eval(t + c5 * h, combine(y, h, {{a51, k1}, {a52, k2}, {a53, k3}, {a54, k4}}));
      const State k6 = eval(t + h, combine(y, h, {{a61, k1}, {a62, k2}, {a63, k3}, {a64, k4},
                                                  {a65, k5}}));
      y_new = combine(y, h, {{b1, k1}, {b3, k3}, {b4, k4}, {b5, k5}, {b6, k6}});
      k7 = eval(t + h, y_new);
      for (int i = 0; i < 2; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * k7[i]);
        const double scale = 1.0 + std::max(std::abs(y[i]), std::abs(y_new[i]));
        err = std::max(err, std::abs(e) / scale);
      }
    } catch (const RejectedStep&) {
      floor_hit = true;
      h *= 0.25;
      continue;
    } catch (const MassNodeError& e) {
      throw SingularityError(std::string("ermakov_integrate: ") + e.what());
    }
    if (!std::isfinite(err)) {
      h *= 0.25;
      continue;
    }
    const double allowed = tol * h;
    if (err <= allowed) {
      t = (t1 - (t + h) < h_min) ? t1 : t + h;
      y = y_new;
      k1 = k7;
      ts.push_back(t);
      rs.push_back(y[0]);
      vs.push_back(y[1]);
      as.push_back(k7[1]);
      floor_hit = false;
    }
    const double factor = err == 0.0 ? 5.0 : 0.9 * std::pow(allowed / err, 0.25);
    h = std::min(h_max, h * std::clamp(factor, 0.2, 5.0));
  }

  AuxSolution aux;
  aux.t_min_ = t0;
  aux.t_max_ = t1;
  const std::size_t steps = ts.size() - 1;
  aux.impl_ = std::make_shared<const AuxSolution::Numeric>(AuxSolution::Numeric{
      boost::math::interpolators::quintic_hermite<std::vector<double>>(
          std::move(ts), std::move(rs), std::move(vs), std::move(as)),
      steps});
  return aux;
}

// ---------------------------------------------------------------------------

double phase_time(const AuxSolution& aux, const Scenario& scenario, double t_i, double t_f) {
  if (t_i == t_f) return 0.0;
  scenario.check_positive_mass(t_i, t_f);
  (void)aux.rho(t_i);
  (void)aux.rho(t_f);
  if (aux.origin() == AuxOrigin::ClosedForm) return aux.closed_phase_rate() * (t_f - t_i);
  auto integrand = [&](double s) {
    const double r = aux.rho(s);
    return 1.0 / (r * r * scenario.mass(s));
  };
  const double lo = std::min(t_i, t_f), hi = std::max(t_i, t_f);
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, lo, hi, 15, 1e-14, &error);
  if (!(error < 1e-10)) throw StepFailureError("phase_time: quadrature did not converge");
  return t_f > t_i ? value : -value;
}

double ermakov_residual(const Scenario& scenario, const AuxSolution& aux, double t) {
  const double m = scenario.mass(t);
  const double w = scenario.omega(t);
  const double r = aux.rho(t);
  return aux.rho_ddot(t) + scenario.mass_rate(t) / m * aux.rho_dot(t) + w * w * r -
         1.0 / (m * m * r * r * r);
}

double omega_eff_sq(const Scenario& scenario, const AuxSolution& aux, double t) {
  const double m = scenario.mass(t);
  const double r = aux.rho(t);
  return m * m * r * r * r * (aux.rho_ddot(t) + scenario.mass_rate(t) / m * aux.rho_dot(t));
}

double constraint_residual(const Scenario& scenario, const AuxSolution& aux, double t) {
  const double m = scenario.mass(t);
  const double r = aux.rho(t);
  const double w = scenario.omega(t);
  return omega_eff_sq(scenario, aux, t) + m * m * r * r * r * r * w * w - 1.0;
}

}  // namespace dunkl
