#include "dunkl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "dunkl/errors.hpp"
#include "dunkl/oracle.hpp"
#include "dunkl/spectral.hpp"
#include "dunkl/tdsystem.hpp"

namespace dunkl {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr std::uint64_t kSeed = 20240601;

struct Measurement {
  double value;
  std::string detail;
};

struct CheckDef {
  std::string name;
  double tolerance;
  double budget_s;
  std::function<Measurement()> run;
};

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// Random endpoint away from the origin in [-2, -0.05] U [0.05, 2].
double random_x(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.05, 2.0);
  std::uniform_int_distribution<int> sign(0, 1);
  return (sign(rng) ? 1.0 : -1.0) * mag(rng);
}

Measurement check_hille_hardy() {
  double worst = 0.0;
  for (double theta : {0.1, 0.5, 2.0})
    for (double X : {0.2, 1.0})
      for (double Y : {0.2, 1.0})
        for (double Z : {0.3, 0.7}) worst = std::max(worst, hille_hardy_gap(theta, X, Y, Z, 80));
  return {worst, "24 parameter tuples, N = 80"};
}

Measurement check_ermakov_closed() {
  double worst = 0.0;
  for (const Scenario& s : {Scenario::caldirola_kanai(1, 0.2, 1), Scenario::pulsating(1, 0.5, 1)}) {
    const AuxSolution aux = ermakov_closed_form(s);
    for (int j = 0; j < 100; ++j) {
      const double t = 2.0 * j / 99.0;
      worst = std::max(worst, std::abs(ermakov_residual(s, aux, t)));
    }
  }
  return {worst, "CK(1,0.2,1) and pulsating(1,0.5,1), 100 times on [0,2]"};
}

Measurement check_ermakov_numeric() {
  double worst = 0.0;
  for (const Scenario& s : {Scenario::caldirola_kanai(1, 0.2, 1), Scenario::pulsating(1, 0.5, 1)}) {
    const AuxSolution closed = ermakov_closed_form(s);
    const AuxSolution num =
        ermakov_integrate(s, closed.rho(0.0), closed.rho_dot(0.0), {0.0, 2.0}, 1e-10);
    for (int j = 0; j <= 200; ++j) {
      const double t = 2.0 * j / 200.0;
      worst = std::max(worst, std::abs(num.rho(t) - closed.rho(t)));
    }
  }
  return {worst, "max |rho_num - rho_closed| on [0,2], tol 1e-10"};
}

Measurement check_constraint_closed() {
  double worst = 0.0;
  for (const Scenario& s : {Scenario::constant(1, 1), Scenario::caldirola_kanai(1, 0.2, 1),
                            Scenario::pulsating(1, 0.5, 1)}) {
    const AuxSolution aux = ermakov_closed_form(s);
    for (int j = 0; j < 100; ++j) {
      worst = std::max(worst, std::abs(constraint_residual(s, aux, 2.0 * j / 99.0)));
    }
  }
  return {worst, "closed-form solutions, 100 times on [0,2]"};
}

Measurement check_constraint_numeric() {
  double worst = 0.0;
  for (const Scenario& s : {Scenario::caldirola_kanai(1, 0.2, 1), Scenario::pulsating(1, 0.5, 1),
                            Scenario::constant(1, 1)}) {
    const auto [rho0, rho_dot0] = default_initial_conditions(s, 0.0);
    const AuxSolution aux = ermakov_integrate(s, 1.3 * rho0, rho_dot0 + 0.2, {0.0, 2.0}, 1e-10);
    for (int j = 1; j < 100; ++j) {
      worst = std::max(worst, std::abs(constraint_residual(s, aux, 2.0 * j / 100.0)));
    }
  }
  return {worst, "numeric solutions off the closed-form initial data, 99 interior times"};
}

Measurement check_static_limit() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> span(0.2, 3.0);
  const Scenario s = Scenario::constant(1, 1);
  const AuxSolution aux = ermakov_closed_form(s);
  double worst = 0.0;
  for (int j = 0; j < 20; ++j) {
    const double T = span(rng);
    const double x_i = random_x(rng);
    const double x_f = random_x(rng);
    const KernelQuery q{x_i, 0.0, x_f, T, {1.0, 1e-12}};
    worst = std::max(worst, rel(kernel_full(q, s, aux), textbook_oscillator_kernel(1, 1, x_i, x_f, T, 1.0)));
  }
  return {worst, "nu = 1e-12 against the standard oscillator kernel, 20 points"};
}

Measurement check_closed_vs_general() {
  std::mt19937_64 rng(kSeed + 1);
  std::uniform_real_distribution<double> start(0.0, 0.5);
  std::uniform_real_distribution<double> span(0.2, 2.0);
  const PhysicsConfig config{1.0, 0.7};
  const Scenario ck = Scenario::caldirola_kanai(1, 0.2, 1);
  const Scenario pu = Scenario::pulsating(1, 0.5, 1);
  const AuxSolution ck_aux = ermakov_closed_form(ck);
  const AuxSolution pu_aux = ermakov_closed_form(pu);
  double worst = 0.0;
  for (int j = 0; j < 20; ++j) {
    const double t_i = start(rng);
    const KernelQuery q{random_x(rng), t_i, random_x(rng), t_i + span(rng), config};
    worst = std::max(worst, rel(kernel_ck(1, 0.2, 1, q), kernel_full(q, ck, ck_aux)));
  }
  for (int j = 0; j < 20; ++j) {
    const double t_i = start(rng);
    const KernelQuery q{random_x(rng), t_i, random_x(rng), t_i + span(rng), config};
    worst = std::max(worst, rel(kernel_pulsating(1, 0.5, 1, q), kernel_full(q, pu, pu_aux)));
  }
  return {worst, "CK and pulsating, 20 random points each, nu = 0.7"};
}

Measurement check_orthonormality() {
  const PhysicsConfig config{1.0, 0.7};
  const Scenario s = Scenario::caldirola_kanai(1, 0.2, 1);
  const AuxSolution aux = ermakov_closed_form(s);
  double worst = 0.0;
  for (double t : {0.0, 1.0}) {
    const double x_max = 10.0 * aux.rho(t);
    const QuadratureRule rule = build_quadrature(config.nu, x_max, 40, 20);
    std::vector<SampledFunction> basis;
    for (int e : {1, -1}) {
      const Parity p = Parity::from_sign(e, config.nu);
      for (int n = 0; n <= 8; ++n) {
        basis.push_back(sample_with_parity(
            rule, e, [&](double x) { return wavefn(p, n, x, t, s, aux, config); }));
      }
    }
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const Complex g = dunkl_inner(basis[a], basis[b], rule);
        worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
      }
  }
  return {worst, "Gram matrix n <= 8, both parities, CK(1,0.2,1), t in {0,1}"};
}

// Endpoints used by both spectral checks: (x_i, x_f) = (0.6, 1.1) with the
// interval chosen so the real phase time is 0.9.
template <typename Compare>
double spectral_sweep(Compare compare) {
  double worst = 0.0;
  for (double nu : {0.3, 0.7}) {
    const PhysicsConfig config{1.0, nu};
    for (const Scenario& s : {Scenario::constant(1, 1), Scenario::caldirola_kanai(1, 0.2, 1)}) {
      const AuxSolution aux = ermakov_closed_form(s);
      const double t_f = 0.9 / aux.closed_phase_rate();
      const KernelQuery q{0.6, 0.0, 1.1, t_f, config};
      worst = std::max(worst, compare(q, s, aux));
    }
  }
  return worst;
}

Measurement check_spectral_damped() {
  const double eps = 1e-3;
  const double worst = spectral_sweep([&](const KernelQuery& q, const Scenario& s, const AuxSolution& aux) {
    const double S = phase_time(aux, s, q.t_i, q.t_f);
    return rel(spectral_kernel(q, s, aux, 200, eps), kernel_full_at_phase(q, s, aux, Complex(S, -eps)));
  });
  return {worst, "N = 200, S -> S - 1e-3 i, constant and CK, nu in {0.3, 0.7}"};
}

Measurement check_spectral_wick() {
  const Complex S(0.0, -0.5);
  const double worst = spectral_sweep([&](const KernelQuery& q, const Scenario& s, const AuxSolution& aux) {
    return rel(spectral_kernel_at_phase(q, s, aux, 200, S), kernel_full_at_phase(q, s, aux, S));
  });
  return {worst, "N = 200, S = -0.5 i, constant and CK, nu in {0.3, 0.7}"};
}

Measurement check_oracle() {
  const PhysicsConfig config{1.0, 0.7};
  const Scenario s = Scenario::caldirola_kanai(1, 0.2, 1);
  const AuxSolution aux = ermakov_closed_form(s);
  const RadialGrid grid(12.0, 0.01);
  const QuadratureRule rule = build_quadrature(config.nu, grid.y_max(), 48, 16);
  double worst = 0.0;
  for (int e : {1, -1}) {
    const Parity p = Parity::from_sign(e, config.nu);
    // Parity projection of a Gaussian centered at x = 1 with width 0.7.
    const auto psi = [e](double y) -> Complex {
      const double a = std::exp(-(y - 1.0) * (y - 1.0) / 0.98);
      const double b = std::exp(-(y + 1.0) * (y + 1.0) / 0.98);
      return 0.5 * (a + e * b);
    };
    const WavePacket start = make_packet(p, config.nu, grid, psi, 0.0);
    const WavePacket cn = cn_evolve(start, s, harmonic_potential(s), 1.0, 2000, config);
    const WavePacket kernel = kernel_evolve(start, s, aux, 1.0, rule, config);
    worst = std::max(worst, l2_distance(cn, kernel));
  }
  return {worst, "CK(1,0.2,1), nu = 0.7, displaced Gaussian, T = 1, h = 0.01, 2000 steps"};
}

// Composition of two kernels over t_m, integrating the intermediate point
// along y = r e^{i pi/4}, where the product decays like a Gaussian.
Complex compose(const Scenario& s, const AuxSolution& aux, double x_i, double t_i, double t_m,
                double x_f, double t_f, const PhysicsConfig& config) {
  const double S_a = checked_phase_time(s, aux, t_i, t_m);
  const double S_b = checked_phase_time(s, aux, t_m, t_f);
  if (!(S_a + S_b < std::numbers::pi)) throw CausticError("composition needs S_a + S_b < pi");
  const EndpointData a = endpoint_data(s, aux, t_i, t_m);
  const EndpointData b = endpoint_data(s, aux, t_m, t_f);
  const double theta = std::numbers::pi / 4.0;
  const Complex dir = std::polar(1.0, theta);
  const double rho_m = aux.rho(t_m);
  const double decay = (1.0 / std::tan(S_a) + 1.0 / std::tan(S_b)) / (2.0 * config.hbar * rho_m * rho_m);
  const double r_max = std::sqrt(60.0 / decay) + 4.0;
  const QuadratureRule rule = build_quadrature(config.nu, r_max, 60, 20);
  const Complex measure = std::polar(1.0, theta * (2.0 * config.nu + 1.0));
  const double sign = (x_i * x_f > 0.0) ? 1.0 : -1.0;
  const double yi = std::abs(x_i);
  const double yf = std::abs(x_f);
  Complex total = 0.0;
  for (std::size_t r = 0; r < rule.size(); ++r) {
    const Complex y = rule.nodes[r] * dir;
    const Parity even = Parity::even(config.nu);
    const Parity odd = Parity::odd(config.nu);
    const Complex plus = sector_kernel_analytic(even, y, yf, b, S_b, config) *
                         sector_kernel_analytic(even, yi, y, a, S_a, config);
    const Complex minus = sector_kernel_analytic(odd, y, yf, b, S_b, config) *
                          sector_kernel_analytic(odd, yi, y, a, S_a, config);
    total += rule.weights[r] * (plus + sign * minus);
  }
  return 2.0 * measure * total;
}

Measurement check_semigroup() {
  const PhysicsConfig config{1.0, 0.7};
  double worst = 0.0;
  const std::vector<std::pair<double, double>> points = {
      {0.6, 1.1}, {-0.4, 0.9}, {1.3, -0.7}, {-1.5, -0.3}, {0.2, 1.8}};
  for (const Scenario& s : {Scenario::constant(1, 1), Scenario::caldirola_kanai(1, 0.2, 1)}) {
    const AuxSolution aux = ermakov_closed_form(s);
    const double rate = aux.closed_phase_rate();
    const double t_i = 0.1;
    const double t_m = t_i + 0.7 / rate;
    const double t_f = t_m + 0.9 / rate;
    for (const auto& [x_i, x_f] : points) {
      const Complex direct = kernel_full({x_i, t_i, x_f, t_f, config}, s, aux);
      worst = std::max(worst, rel(compose(s, aux, x_i, t_i, t_m, x_f, t_f, config), direct));
    }
  }
  return {worst, "constant and CK, S_a = 0.7, S_b = 0.9, 5 endpoint pairs"};
}

Measurement check_rho_independence() {
  const PhysicsConfig config{1.0, 0.7};
  const Scenario s = Scenario::constant(1, 1);
  const AuxSolution equilibrium = ermakov_closed_form(s);
  const AuxSolution pinney = ermakov_integrate(s, 2.0, 0.0, {0.0, 4.0}, 1e-12);
  std::mt19937_64 rng(kSeed + 2);
  std::uniform_real_distribution<double> start(0.0, 1.0);
  std::uniform_real_distribution<double> span(0.3, 2.5);
  double worst = 0.0;
  int accepted = 0;
  while (accepted < 10) {
    const double t_i = start(rng);
    const double t_f = t_i + span(rng);
    const double x_i = random_x(rng);
    const double x_f = random_x(rng);
    const double S_eq = phase_time(equilibrium, s, t_i, t_f);
    const double S_p = phase_time(pinney, s, t_i, t_f);
    const double lo = 0.05;
    const double hi = std::numbers::pi - 0.05;
    if (!(S_eq > lo && S_eq < hi && S_p > lo && S_p < hi)) continue;
    const KernelQuery q{x_i, t_i, x_f, t_f, config};
    worst = std::max(worst, rel(kernel_full(q, s, pinney), kernel_full(q, s, equilibrium)));
    ++accepted;
  }
  return {worst, "Constant(1,1): rho = 1 against rho(0) = 2, rho'(0) = 0, 10 points"};
}

Measurement check_tdse_residual() {
  const PhysicsConfig config{1.0, 0.7};
  const double m0 = 1.0, k = 0.2, omega0 = 1.0;
  const Scenario s = Scenario::caldirola_kanai(m0, k, omega0);
  const double h = 0.002;
  const int half = 4000;  // nodes per side, x in (-8, 8)
  std::vector<double> x(2 * half);
  for (int j = 0; j < 2 * half; ++j) x[j] = (j - half + 0.5) * h;
  const double dt = 1e-4;
  const double t = 0.5;
  double worst = 0.0;
  for (int e : {1, -1}) {
    const Parity p = Parity::from_sign(e, config.nu);
    for (int n = 0; n <= 3; ++n) {
      std::vector<Complex> now(x.size()), later(x.size()), earlier(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) {
        now[j] = wavefn_ck(p, n, x[j], t, m0, k, omega0, config);
        later[j] = wavefn_ck(p, n, x[j], t + dt, m0, k, omega0, config);
        earlier[j] = wavefn_ck(p, n, x[j], t - dt, m0, k, omega0, config);
      }
      const std::vector<Complex> d2 = dunkl_apply(x, now, config.nu);
      const double m = s.mass(t);
      const double w = s.omega(t);
      double res = 0.0, ref = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        const Complex H = -config.hbar * config.hbar / (2.0 * m) * d2[j] + 0.5 * m * w * w * x[j] * x[j] * now[j];
        const Complex lhs = kI * config.hbar * (later[j] - earlier[j]) / (2.0 * dt);
        const double weight = std::pow(std::abs(x[j]), 2.0 * config.nu);
        res += weight * std::norm(lhs - H);
        ref += weight * std::norm(H);
      }
      worst = std::max(worst, std::sqrt(res / ref));
    }
  }
  return {worst, "CK(1,0.2,1), n <= 3 both parities, t = 0.5, h = 0.002, dt = 1e-4"};
}

Measurement check_reductions() {
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_real_distribution<double> start(0.0, 0.5);
  std::uniform_real_distribution<double> span(0.2, 2.0);
  const PhysicsConfig config{1.0, 0.7};
  double worst = 0.0;
  for (int j = 0; j < 20; ++j) {
    const double t_i = start(rng);
    const KernelQuery q{random_x(rng), t_i, random_x(rng), t_i + span(rng), config};
    const Complex ref = kernel_static(1.3, 0.9, q);
    worst = std::max(worst, rel(kernel_ck(1.3, 0.0, 0.9, q), ref));
    worst = std::max(worst, rel(kernel_pulsating(1.3, 0.0, 0.9, q), ref));
  }
  return {worst, "kernel_ck(k=0) and kernel_pulsating(upsilon=0) against kernel_static, 20 points"};
}

const std::vector<CheckDef>& check_table() {
  static const std::vector<CheckDef> all = {
      {"hille_hardy", 1e-8, 1.0, check_hille_hardy},
      {"ermakov_closed", 1e-12, 0.0, check_ermakov_closed},
      {"ermakov_numeric", 1e-8, 1.0, check_ermakov_numeric},
      {"constraint_closed", 1e-10, 0.0, check_constraint_closed},
      {"constraint_numeric", 1e-8, 0.0, check_constraint_numeric},
      {"static_limit", 1e-8, 0.0, check_static_limit},
      {"closed_vs_general", 1e-10, 0.0, check_closed_vs_general},
      {"orthonormality", 1e-8, 5.0, check_orthonormality},
      {"spectral_damped", 1e-6, 10.0, check_spectral_damped},
      {"spectral_wick", 1e-8, 10.0, check_spectral_wick},
      {"oracle_cn_vs_kernel", 1e-3, 60.0, check_oracle},
      {"semigroup", 1e-4, 0.0, check_semigroup},
      {"rho_independence", 1e-6, 0.0, check_rho_independence},
      {"tdse_residual", 1e-4, 0.0, check_tdse_residual},
      {"reductions", 1e-12, 0.0, check_reductions},
  };
  return all;
}

const CheckDef& find_check(const std::string& name) {
  for (const CheckDef& s : check_table()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown check '" + name + "'");
}

}  // namespace

Complex textbook_oscillator_kernel(double m, double omega, double x_i, double x_f, double T,
                                   double hbar) {
  const double s = std::sin(omega * T);
  const Complex amplitude = std::sqrt(m * omega / (2.0 * std::numbers::pi * kI * hbar * s));
  const double action = m * omega * ((x_i * x_i + x_f * x_f) * std::cos(omega * T) - 2.0 * x_i * x_f) /
                        (2.0 * hbar * s);
  return amplitude * std::exp(kI * action);
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const CheckDef& s : check_table()) out.push_back(s.name);
    return out;
  }();
  return names;
}

double default_tolerance(const std::string& name) { return find_check(name).tolerance; }

CheckResult run_check(const std::string& name, double tolerance) {
  const CheckDef& def = find_check(name);
  if (!(tolerance > 0.0)) throw ConfigError("tolerance for '" + name + "' must be positive");
  CheckResult result;
  result.name = name;
  result.tolerance = tolerance;
  result.budget_s = def.budget_s;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Measurement m = def.run();
    result.measured = m.value;
    result.detail = m.detail;
  } catch (const Error& err) {
    result.measured = std::numeric_limits<double>::infinity();
    result.detail = std::string("error: ") + err.what();
  }
  result.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_budget = def.budget_s <= 0.0 || result.runtime_s <= def.budget_s;
  result.passed = std::isfinite(result.measured) && result.measured < tolerance && in_budget;
  if (!in_budget) result.detail += " (runtime budget exceeded)";
  return result;
}

std::vector<CheckResult> run_checks(const VerifyOptions& options) {
  for (const auto& [name, tol] : options.tolerance_overrides) {
    find_check(name);
    if (!(tol > 0.0)) throw ConfigError("tolerance for '" + name + "' must be positive");
  }
  for (const std::string& name : options.only) find_check(name);
  std::vector<CheckResult> results;
  for (const CheckDef& def : check_table()) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), def.name) == options.only.end()) {
      continue;
    }
    const auto it = options.tolerance_overrides.find(def.name);
    results.push_back(run_check(def.name, it == options.tolerance_overrides.end() ? def.tolerance : it->second));
  }
  return results;
}

}  // namespace dunkl
