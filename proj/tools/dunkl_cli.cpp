// Command-line front end: kernel and wavefunction tables, the verification
// suite, and oracle evolution runs.
//
// Exit codes: 0 success, 1 a verification check failed, 2 configuration
// error, 3 caustic (phase time outside (0, pi)), 4 numeric failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/oracle.hpp"
#include "dunkl/spectral.hpp"
#include "dunkl/tdsystem.hpp"
#include "dunkl/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace dunkl;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCaustic = 3;
constexpr int kExitNumeric = 4;
constexpr const char* kOutDirEnv = "DUNKL_OUT_DIR";

struct Settings {
  std::string config;
  std::string out;

  std::string scenario = "constant";
  double m0 = 1.0;
  double k = 0.0;
  double omega0 = 1.0;
  double upsilon = 0.0;
  std::string profile;
  double nu = 0.0;
  double hbar = 1.0;

  double ti = 0.0;
  double tf = 1.0;
  std::vector<double> xi, xf, xi_grid, xf_grid;

  int n_max = 0;
  std::string parity = "both";
  std::vector<double> x, x_grid, t;
  bool report_norms = false;

  std::vector<std::string> only, override_tol;

  int steps = 2000;
  double y_max = 12.0;
  double h = 0.01;
  double x0 = 1.0;
  double sigma = 0.7;
  int snapshots = 1;
  int panels = 48;
  int order = 16;
};

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // print -0 as 0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

fs::path output_dir(const Settings& s) {
  fs::path dir = ".";
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') dir = env;
  if (!s.out.empty()) dir = s.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// Values from either an explicit list or a "min max count" grid.
std::vector<double> axis(const std::vector<double>& values, const std::vector<double>& grid,
                         const std::string& name) {
  if (!values.empty() && !grid.empty()) throw ConfigError("give either --" + name + " or --" + name + "-grid");
  if (!values.empty()) return values;
  if (grid.empty()) throw ConfigError("missing --" + name + " or --" + name + "-grid");
  const double count = grid[2];
  if (count < 1 || count != std::floor(count)) throw ConfigError("--" + name + "-grid count must be a positive integer");
  const int n = static_cast<int>(count);
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = (n == 1) ? grid[0] : grid[0] + (grid[1] - grid[0]) * j / (n - 1);
  return out;
}

Scenario make_scenario(const Settings& s) {
  if (s.scenario == "constant") return Scenario::constant(s.m0, s.omega0);
  if (s.scenario == "ck") return Scenario::caldirola_kanai(s.m0, s.k, s.omega0);
  if (s.scenario == "pulsating") return Scenario::pulsating(s.m0, s.upsilon, s.omega0);
  if (s.scenario == "tabulated") {
    if (s.profile.empty()) throw ConfigError("tabulated scenario needs --profile");
    return Scenario::tabulated(TabulatedProfile::from_csv(s.profile, s.omega0));
  }
  throw ConfigError("unknown scenario '" + s.scenario + "'");
}

// Closed form where one exists; otherwise a numeric solve over the whole
// tabulated range from the equilibrium initial data.
AuxSolution make_aux(const Scenario& scenario) {
  if (const auto* tab = std::get_if<TabulatedProfile>(&scenario.kind())) {
    const auto [rho0, rho_dot0] = default_initial_conditions(scenario, tab->t_min());
    return ermakov_integrate(scenario, rho0, rho_dot0, {tab->t_min(), tab->t_max()}, 1e-10);
  }
  return ermakov_closed_form(scenario);
}

PhysicsConfig physics(const Settings& s) {
  PhysicsConfig c{s.hbar, s.nu};
  c.validate();
  return c;
}

std::vector<Parity> parities(const std::string& which, double nu) {
  if (which == "even") return {Parity::even(nu)};
  if (which == "odd") return {Parity::odd(nu)};
  if (which == "both") return {Parity::even(nu), Parity::odd(nu)};
  throw ConfigError("parity must be even, odd or both");
}

int cmd_kernel(const Settings& s) {
  const PhysicsConfig config = physics(s);
  const Scenario scenario = make_scenario(s);
  const AuxSolution aux = make_aux(scenario);
  const std::vector<double> xis = axis(s.xi, s.xi_grid, "xi");
  const std::vector<double> xfs = axis(s.xf, s.xf_grid, "xf");
  if (!(s.tf > s.ti)) throw ConfigError("--tf must exceed --ti");
  const double S = checked_phase_time(scenario, aux, s.ti, s.tf);
  const EndpointData ends = endpoint_data(scenario, aux, s.ti, s.tf);

  std::string table = "x_i,x_f,t_i,t_f,re_K,im_K,re_K_plus,im_K_plus,re_K_minus,im_K_minus\n";
  for (double x_i : xis) {
    for (double x_f : xfs) {
      const KernelQuery q{x_i, s.ti, x_f, s.tf, config};
      const Complex plus = sector_kernel_analytic(Parity::even(s.nu), std::abs(x_i), std::abs(x_f), ends, S, config);
      const Complex minus = sector_kernel_analytic(Parity::odd(s.nu), std::abs(x_i), std::abs(x_f), ends, S, config);
      Complex K;
      if (s.scenario == "ck") {
        K = kernel_ck(s.m0, s.k, s.omega0, q);
      } else if (s.scenario == "pulsating") {
        K = kernel_pulsating(s.m0, s.upsilon, s.omega0, q);
      } else if (s.scenario == "constant") {
        K = kernel_static(s.m0, s.omega0, q);
      } else {
        const double sign = (x_i * x_f > 0.0) - (x_i * x_f < 0.0);
        K = plus + sign * minus;
      }
      table += fmt(x_i) + "," + fmt(x_f) + "," + fmt(s.ti) + "," + fmt(s.tf) + "," + fmt(K.real()) + "," +
               fmt(K.imag()) + "," + fmt(plus.real()) + "," + fmt(plus.imag()) + "," + fmt(minus.real()) +
               "," + fmt(minus.imag()) + "\n";
    }
  }
  const fs::path path = output_dir(s) / "kernel.csv";
  open_output(path) << table;
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_wavefn(const Settings& s) {
  const PhysicsConfig config = physics(s);
  const Scenario scenario = make_scenario(s);
  const AuxSolution aux = make_aux(scenario);
  const std::vector<double> xs = axis(s.x, s.x_grid, "x");
  const std::vector<double> ts = s.t.empty() ? std::vector<double>{0.0} : s.t;
  if (s.n_max < 0) throw ConfigError("--n-max must be non-negative");
  const std::vector<Parity> ps = parities(s.parity, s.nu);

  std::string table = "n,parity,x,t,re,im\n";
  std::string norms = "n,parity,t,norm\n";
  for (int n = 0; n <= s.n_max; ++n) {
    for (const Parity& p : ps) {
      for (double t : ts) {
        for (double x : xs) {
          const Complex v = wavefn(p, n, x, t, scenario, aux, config);
          table += std::to_string(n) + "," + p.name() + "," + fmt(x) + "," + fmt(t) + "," + fmt(v.real()) +
                   "," + fmt(v.imag()) + "\n";
        }
        if (s.report_norms) {
          const double x_max = std::sqrt(s.hbar * (100.0 + 8.0 * n)) * aux.rho(t);
          const QuadratureRule rule = build_quadrature(s.nu, x_max, 40, 20);
          const SampledFunction f =
              sample_with_parity(rule, p.e, [&](double y) { return wavefn(p, n, y, t, scenario, aux, config); });
          const double value = std::sqrt(dunkl_inner(f, f, rule).real());
          norms += std::to_string(n) + "," + p.name() + "," + fmt(t) + "," + fmt(value) + "\n";
        }
      }
    }
  }
  const fs::path dir = output_dir(s);
  open_output(dir / "wavefn.csv") << table;
  std::cout << "wrote " << (dir / "wavefn.csv").string() << "\n";
  if (s.report_norms) {
    open_output(dir / "norms.csv") << norms;
    std::cout << "wrote " << (dir / "norms.csv").string() << "\n";
  }
  return 0;
}

int cmd_verify(const Settings& s) {
  VerifyOptions options;
  options.only = s.only;
  for (const std::string& entry : s.override_tol) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw ConfigError("--override-tol expects NAME=VALUE, got '" + entry + "'");
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(entry.substr(eq + 1), &used);
      if (used != entry.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("bad tolerance in '" + entry + "'");
    }
    options.tolerance_overrides[entry.substr(0, eq)] = value;
  }
  const auto start = std::chrono::steady_clock::now();
  const std::vector<CheckResult> results = run_checks(options);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool all = true;
  json checks = json::array();
  std::string table = "name,status,measured,tolerance\n";
  for (const CheckResult& r : results) {
    all = all && r.passed;
    json entry = {{"name", r.name},
                  {"status", r.passed ? "pass" : "fail"},
                  {"measured", std::isfinite(r.measured) ? json(r.measured) : json(nullptr)},
                  {"tolerance", r.tolerance},
                  {"runtime_s", r.runtime_s},
                  {"detail", r.detail}};
    if (r.budget_s > 0.0) entry["budget_s"] = r.budget_s;
    checks.push_back(entry);
    table += r.name + "," + (r.passed ? "pass" : "fail") + "," + fmt(r.measured) + "," + fmt(r.tolerance) + "\n";
    std::printf("%s %-20s measured=%.3e tolerance=%.1e runtime=%.2fs\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.measured, r.tolerance, r.runtime_s);
  }
  json report = {{"checks", checks},
                 {"all_passed", all},
                 {"metadata", {{"generated_at", timestamp()}, {"total_runtime_s", total}}}};
  const fs::path dir = output_dir(s);
  open_output(dir / "verify.json") << report.dump(2) << "\n";
  open_output(dir / "verify.csv") << table;
  std::cout << (all ? "all checks passed" : "some checks failed") << "\n";
  return all ? 0 : kExitVerifyFailed;
}

int cmd_evolve(const Settings& s) {
  const auto start_clock = std::chrono::steady_clock::now();
  const PhysicsConfig config = physics(s);
  const Scenario scenario = make_scenario(s);
  const AuxSolution aux = make_aux(scenario);
  if (s.parity == "both") throw ConfigError("evolve runs one sector; use --parity even or odd");
  const Parity p = parities(s.parity, s.nu).front();
  if (!(s.tf > s.ti)) throw ConfigError("--tf must exceed --ti");
  if (s.snapshots < 1 || s.steps < 1 || s.steps % s.snapshots != 0) {
    throw ConfigError("--steps must be a positive multiple of --snapshots");
  }
  if (!(s.sigma > 0.0)) throw ConfigError("--sigma must be positive");
  const RadialGrid grid(s.y_max, s.h);
  const QuadratureRule rule = build_quadrature(s.nu, s.y_max, s.panels, s.order);
  const double e = p.e;
  const double width = 2.0 * s.sigma * s.sigma;
  const auto psi = [&](double y) -> Complex {
    return 0.5 * (std::exp(-(y - s.x0) * (y - s.x0) / width) + e * std::exp(-(y + s.x0) * (y + s.x0) / width));
  };
  const WavePacket initial = make_packet(p, s.nu, grid, psi, s.ti);
  const double initial_norm = norm(initial);
  const Potential potential = harmonic_potential(scenario);

  std::string table = "t,y,u2_cn,u2_kernel\n";
  json distances = json::array();
  WavePacket cn = initial;
  double distance = 0.0;
  for (int k = 1; k <= s.snapshots; ++k) {
    const double t = s.ti + (s.tf - s.ti) * k / s.snapshots;
    cn = cn_evolve(cn, scenario, potential, t, s.steps / s.snapshots, config);
    const WavePacket ker = kernel_evolve(initial, scenario, aux, t, rule, config);
    distance = l2_distance(cn, ker);
    distances.push_back({{"t", t}, {"l2_distance", distance}});
    for (std::size_t j = 0; j < grid.size(); ++j) {
      table += fmt(t) + "," + fmt(grid.nodes()[j]) + "," + fmt(std::norm(cn.u[j])) + "," +
               fmt(std::norm(ker.u[j])) + "\n";
    }
  }
  const double drift = std::abs(norm(cn) / initial_norm - 1.0);
  const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_clock).count();
  json summary = {{"scenario", scenario.name()},
                  {"nu", s.nu},
                  {"hbar", s.hbar},
                  {"parity", p.name()},
                  {"t_i", s.ti},
                  {"t_f", s.tf},
                  {"steps", s.steps},
                  {"h", s.h},
                  {"y_max", s.y_max},
                  {"rule_nodes", rule.size()},
                  {"l2_distance", distance},
                  {"snapshots", distances},
                  {"norm_drift", drift},
                  {"metadata", {{"generated_at", timestamp()}, {"runtime_s", runtime}}}};
  const fs::path dir = output_dir(s);
  open_output(dir / "evolve.csv") << table;
  open_output(dir / "evolve_summary.json") << summary.dump(2) << "\n";
  std::printf("l2_distance=%.6e norm_drift=%.3e\n", distance, drift);
  return 0;
}

void add_common(CLI::App* sub, Settings& s) {
  sub->add_option("--config", s.config, "JSON file whose keys are long option names");
  sub->add_option("--out", s.out, std::string("Output directory (default $") + kOutDirEnv + " or .)");
  sub->add_option("--scenario", s.scenario, "constant | ck | pulsating | tabulated");
  sub->add_option("--m0", s.m0, "Mass scale m0");
  sub->add_option("--k", s.k, "Caldirola-Kanai damping rate");
  sub->add_option("--omega0", s.omega0, "Frequency omega0 (default omega for tabulated profiles)");
  sub->add_option("--upsilon", s.upsilon, "Pulsation frequency of the mass");
  sub->add_option("--profile", s.profile, "CSV with columns t,m[,omega] for tabulated scenarios");
  sub->add_option("--nu", s.nu, "Wigner parameter (> -1/2)");
  sub->add_option("--hbar", s.hbar, "Reduced Planck constant");
}

// Turns a JSON config into argument tokens placed right after the
// subcommand, skipping keys already given on the command line so flags win.
std::vector<std::string> config_tokens(const fs::path& path, const std::vector<std::string>& args) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& err) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + err.what());
  }
  if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
  auto scalar = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    throw ConfigError("config values must be numbers, strings, booleans or arrays of those");
  };
  std::vector<std::string> tokens;
  for (const auto& [key, value] : cfg.items()) {
    std::string name = key;
    for (char& c : name) c = (c == '_') ? '-' : c;
    if (name == "config") throw ConfigError("config files cannot nest --config");
    const std::string flag = "--" + name;
    bool given = false;
    for (const std::string& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
    if (given) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back(flag);
    } else if (value.is_array()) {
      tokens.push_back(flag);
      for (const json& v : value) tokens.push_back(scalar(v));
    } else {
      tokens.push_back(flag);
      tokens.push_back(scalar(value));
    }
  }
  return tokens;
}

int run(int argc, char** argv) {
  Settings s;
  CLI::App app{"Wigner-Dunkl oscillator propagators"};
  app.require_subcommand(1);

  CLI::App* kernel = app.add_subcommand("kernel", "Tabulate K, K_+ and K_- on an x_i by x_f grid");
  add_common(kernel, s);
  kernel->add_option("--ti", s.ti, "Initial time");
  kernel->add_option("--tf", s.tf, "Final time");
  kernel->add_option("--xi", s.xi, "Initial positions");
  kernel->add_option("--xf", s.xf, "Final positions");
  kernel->add_option("--xi-grid", s.xi_grid, "MIN MAX COUNT")->expected(3);
  kernel->add_option("--xf-grid", s.xf_grid, "MIN MAX COUNT")->expected(3);

  CLI::App* wavefn_cmd = app.add_subcommand("wavefn", "Tabulate eigenfunctions Psi_{n,+/-}(x,t)");
  add_common(wavefn_cmd, s);
  wavefn_cmd->add_option("--n-max", s.n_max, "Largest level n");
  wavefn_cmd->add_option("--parity", s.parity, "even | odd | both");
  wavefn_cmd->add_option("--x", s.x, "Positions");
  wavefn_cmd->add_option("--x-grid", s.x_grid, "MIN MAX COUNT")->expected(3);
  wavefn_cmd->add_option("--t", s.t, "Times (default 0)");
  wavefn_cmd->add_flag("--report-norms", s.report_norms, "Also write norms.csv from Dunkl-measure quadrature");

  CLI::App* verify = app.add_subcommand("verify", "Run the verification checks");
  add_common(verify, s);
  verify->add_option("--only", s.only, "Run only the named checks");
  verify->add_option("--override-tol", s.override_tol, "NAME=VALUE tolerance overrides");

  CLI::App* evolve = app.add_subcommand("evolve", "Crank-Nicolson versus kernel evolution of a Gaussian packet");
  add_common(evolve, s);
  evolve->add_option("--ti", s.ti, "Initial time");
  evolve->add_option("--tf", s.tf, "Final time");
  evolve->add_option("--parity", s.parity, "even | odd");
  evolve->add_option("--steps", s.steps, "Crank-Nicolson steps");
  evolve->add_option("--y-max", s.y_max, "Box size");
  evolve->add_option("--dy", s.h, "Grid spacing");
  evolve->add_option("--x0", s.x0, "Packet center");
  evolve->add_option("--sigma", s.sigma, "Packet width");
  evolve->add_option("--snapshots", s.snapshots, "Number of equally spaced output times");
  evolve->add_option("--panels", s.panels, "Quadrature panels");
  evolve->add_option("--order", s.order, "Gauss points per panel");

  std::vector<std::string> args(argv + 1, argv + argc);
  // Locate --config and the subcommand before the real parse.
  std::optional<std::string> config_path;
  std::size_t sub_pos = args.size();
  for (std::size_t j = 0; j < args.size(); ++j) {
    if (sub_pos == args.size() && (args[j] == "kernel" || args[j] == "wavefn" || args[j] == "verify" || args[j] == "evolve")) {
      sub_pos = j;
    }
    if (args[j] == "--config" && j + 1 < args.size()) config_path = args[j + 1];
    if (args[j].rfind("--config=", 0) == 0) config_path = args[j].substr(9);
  }
  if (config_path && sub_pos < args.size()) {
    const std::vector<std::string> extra = config_tokens(*config_path, args);
    args.insert(args.begin() + static_cast<long>(sub_pos) + 1, extra.begin(), extra.end());
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitConfig;
  }
  if (evolve->parsed() && evolve->count("--parity") == 0) s.parity = "even";

  if (kernel->parsed()) return cmd_kernel(s);
  if (wavefn_cmd->parsed()) return cmd_wavefn(s);
  if (verify->parsed()) return cmd_verify(s);
  return cmd_evolve(s);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CausticError& err) {
    std::cerr << "caustic: " << err.what() << "\n";
    return kExitCaustic;
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& err) {
    std::cerr << "invalid input: " << err.what() << "\n";
    return kExitConfig;
  } catch (const UnsupportedScenarioError& err) {
    std::cerr << "invalid input: " << err.what() << "\n";
    return kExitConfig;
  } catch (const Error& err) {
    std::cerr << "numeric failure: " << err.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& err) {
    std::cerr << "numeric failure: " << err.what() << "\n";
    return kExitNumeric;
  }
}
