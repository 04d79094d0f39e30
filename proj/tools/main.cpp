#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stefanrad/config.hpp"
#include "stefanrad/errors.hpp"
#include "stefanrad/profile_io.hpp"
#include "stefanrad/selfsimilar.hpp"
#include "stefanrad/small_tm.hpp"
#include "stefanrad/solid_solver.hpp"
#include "stefanrad/stefan.hpp"
#include "stefanrad/verify.hpp"

namespace fs = std::filesystem;
using namespace stefanrad;

namespace {

constexpr int kExitSuiteFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

// Flag values collected per subcommand; unset flags leave the config file
// value (or the default) in place.
struct Flags {
  std::optional<double> c, tm, latent, ymax, tol, eps, tint, tinf, z, stretch;
  std::optional<std::string> alpha_text;
  std::optional<std::size_t> n, nodes;
  std::optional<std::string> out, suite, report;
  double inject_kernel_scale = 1.0;
};

void overlay(nlohmann::json& doc, const Flags& f) {
  auto set = [&doc](const char* key, const auto& v) {
    if (v) doc[key] = *v;
  };
  set("c", f.c);
  set("T_M", f.tm);
  set("L", f.latent);
  set("y_max", f.ymax);
  set("tol", f.tol);
  set("eps", f.eps);
  set("T_int", f.tint);
  set("T_inf", f.tinf);
  set("Z", f.z);
  set("stretch", f.stretch);
  set("n", f.n);
  set("selfsimilar_n", f.nodes);
  set("output_dir", f.out);
  set("suite", f.suite);
  if (f.alpha_text) {
    if (*f.alpha_text == "inf") {
      doc["alpha"] = "inf";
    } else {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(*f.alpha_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != f.alpha_text->size()) throw ConfigError("--alpha expects a number or inf");
      doc["alpha"] = v;
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.output_dir);
  return (fs::path(cfg.output_dir) / name).string();
}

HeaderEcho echo_of(const RunConfig& cfg) {
  HeaderEcho echo;
  for (const auto& item : config_echo(cfg).items()) {
    echo.emplace_back(item.key(), item.value().is_string() ? item.value().get<std::string>() : item.value().dump());
  }
  return echo;
}

void write_json(const std::string& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

nlohmann::json report_of(const SolveReport& r) {
  nlohmann::json j;
  j["method"] = r.method;
  j["outer_iterations"] = r.outer_iterations;
  j["final_residual"] = r.residual_history.empty() ? 0.0 : r.residual_history.back();
  j["monotonicity_violation"] = r.monotonicity_violation;
  j["bound_violation"] = r.bound_violation;
  j["derivative_at_zero"] = r.derivative_at_zero;
  j["f_inf"] = r.f_inf;
  j["plateau"] = r.plateau;
  if (r.theta_hat) j["theta_hat"] = *r.theta_hat;
  return j;
}

Grid grid_of(const RunConfig& cfg) { return build_grid(cfg.grid.y_max, cfg.grid.n, cfg.grid.stretch); }

SolidOptions solid_of(const RunConfig& cfg) {
  SolidOptions o;
  o.tol = cfg.tol;
  return o;
}

int run_solve_wave(const RunConfig& cfg) {
  const Grid grid = grid_of(cfg);
  const TravelingWave w = solve_wave(cfg.params, grid, solid_of(cfg));
  const KernelOperator kernel = assemble_kernel(grid, cfg.params.alpha);
  const std::vector<double> residual = solid_residual(w.solid, cfg.params.c, kernel);
  write_profile(w.solid, residual, echo_of(cfg), out_path(cfg, "solid_profile.txt"));
  nlohmann::json j;
  j["config"] = config_echo(cfg);
  j["liquid_A"] = w.liquid_A;
  j["T_minus_inf"] = w.T_minus_inf;
  j["f_inf"] = w.f_inf;
  j["solid_slope"] = w.solid_slope;
  j["interface_speed"] = w.interface_speed;
  j["stefan_residual"] = w.stefan_residual;
  j["residual"] = sup_norm(residual);
  write_json(out_path(cfg, "solve_wave_report.json"), j);
  std::printf("A = %.12g  T(-inf) = %.12g  f_inf = %.12g  f'(0+) = %.12g  stefan residual = %.3g\n", w.liquid_A,
              w.T_minus_inf, w.f_inf, w.solid_slope, w.stefan_residual);
  return 0;
}

int run_cmax(const RunConfig& cfg) {
  const Grid grid = grid_of(cfg);
  CmaxOptions o;
  o.solid = solid_of(cfg);
  const CmaxResult r = find_cmax(cfg.params, grid, o);
  std::string table = "# c psi\n";
  for (const auto& s : r.scan) table += format_double(s.c) + " " + format_double(s.psi) + "\n";
  write_text(out_path(cfg, "psi_table.txt"), table);
  WaveParams p = cfg.params;
  p.c = r.c_max;
  const std::vector<double> residual = solid_residual(r.solid, p.c, assemble_kernel(grid, p.alpha));
  write_profile(r.solid, residual, echo_of(cfg), out_path(cfg, "cmax_profile.txt"));
  nlohmann::json j;
  j["config"] = config_echo(cfg);
  j["c_max"] = r.c_max;
  j["psi"] = r.psi;
  j["root_iterations"] = r.root_iterations;
  j["sign_changes"] = r.sign_changes;
  write_json(out_path(cfg, "cmax_report.json"), j);
  std::printf("c_max = %.15g  psi(c_max) = %.3g\n", r.c_max, r.psi);
  if (r.sign_changes.size() > 1) std::printf("warning: %zu sign changes in the scan\n", r.sign_changes.size());
  return 0;
}

int run_small_tm(const RunConfig& cfg) {
  const Grid grid = grid_of(cfg);
  SmallTmOptions o;
  o.tol = cfg.tol;
  const ContractionResult r = contraction_solve(cfg.eps, cfg.params.c, grid, o);
  const WeightedProfile next = fixedpoint_map(r.solution, cfg.eps, cfg.params.c, grid, o);
  std::vector<double> residual(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) residual[i] = next.profile.values[i] - r.solution.profile.values[i];
  write_profile(r.solution.profile, residual, echo_of(cfg), out_path(cfg, "small_tm_profile.txt"));
  const EpsilonThresholds t = epsilon_thresholds(cfg.params.c);
  nlohmann::json j;
  j["config"] = config_echo(cfg);
  j["report"] = report_of(r.report);
  j["experimental"] = r.experimental;
  j["f_inf"] = r.solution.f_inf;
  j["thresholds"] = {{"eps1", t.eps1}, {"eps2", t.eps2}, {"eps3", t.eps3}, {"eps4", t.eps4},
                     {"eps5", t.eps5}, {"eps6", t.eps6}, {"eps7", t.eps7}};
  try {
    j["decay_rate"] = decay_rate(r.solution);
  } catch (const DomainError&) {
    j["decay_rate"] = nullptr;
  }
  write_json(out_path(cfg, "small_tm_report.json"), j);
  std::printf("theta_hat = %.6g  f_inf = %.12g  iterations = %zu%s\n", r.report.theta_hat.value_or(0.0),
              r.solution.f_inf, r.report.outer_iterations, r.experimental ? "  (eps >= eps4: experimental)" : "");
  return 0;
}

int run_selfsimilar(const RunConfig& cfg) {
  const SelfSimilarProfile s = solve_selfsimilar(cfg.T_int, cfg.T_inf, cfg.params.alpha, cfg.Z, cfg.selfsimilar_n);
  write_profile(s, echo_of(cfg), out_path(cfg, "selfsimilar_profile.txt"));
  nlohmann::json j;
  j["config"] = config_echo(cfg);
  j["residual"] = s.residual;
  j["newton_iterations"] = s.iterations;
  j["overshoot"] = s.overshoot;
  write_json(out_path(cfg, "selfsimilar_report.json"), j);
  std::printf("residual = %.3g  newton iterations = %zu%s\n", s.residual, s.iterations,
              s.overshoot ? "  (overshoot flagged)" : "");
  return 0;
}

int run_c0(const RunConfig& cfg) {
  const Grid grid = grid_of(cfg);
  auto [profile, report] = solve_c0(cfg.params.T_M, grid, solid_of(cfg), cfg.params.alpha);
  const std::vector<double> residual = solid_residual(profile, 0.0, assemble_kernel(grid, cfg.params.alpha));
  write_profile(profile, residual, echo_of(cfg), out_path(cfg, "c0_profile.txt"));
  nlohmann::json j;
  j["config"] = config_echo(cfg);
  j["report"] = report_of(report);
  const C0Seed seed(cfg.params.T_M);
  j["seed"] = {{"A", seed.A}, {"B", seed.B}};
  write_json(out_path(cfg, "c0_report.json"), j);
  std::printf("f'(0+) = %.12g  f_inf = %.12g  method = %s  iterations = %zu\n", report.derivative_at_zero,
              report.f_inf, report.method.c_str(), report.outer_iterations);
  return 0;
}

int run_verify_command(const RunConfig& cfg, const Flags& flags) {
  VerifyOptions o;
  o.inject_kernel_scale = flags.inject_kernel_scale;
  const VerificationReport report = run_verify(cfg, o);
  const std::string path = flags.report ? *flags.report : out_path(cfg, "verify_report.json");
  write_text(path, report_json(report));
  for (const auto& s : report.suites) {
    std::printf("%s %-42s measured %.6g %s %.6g\n", s.pass ? "PASS" : "FAIL", s.name.c_str(), s.measured,
                s.relation.c_str(), s.threshold);
  }
  return exit_status(report) == 0 ? 0 : kExitSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stefanrad: radiative Stefan traveling-wave solver"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  Flags flags;

  auto grid_flags = [&flags](CLI::App* sub) {
    sub->add_option("--ymax", flags.ymax, "truncation length of the half-line");
    sub->add_option("--n", flags.n, "number of grid cells");
    sub->add_option("--stretch", flags.stretch, "geometric cell growth factor");
    sub->add_option("--tol", flags.tol, "outer tolerance");
    sub->add_option("--out", flags.out, "output directory");
  };

  CLI::App* solve = app.add_subcommand("solve-wave", "solve and match one traveling wave");
  solve->add_option("--c", flags.c, "wave speed");
  solve->add_option("--tm", flags.tm, "melting temperature");
  solve->add_option("--alpha", flags.alpha_text, "absorption coefficient");
  solve->add_option("--latent", flags.latent, "latent heat");
  grid_flags(solve);

  CLI::App* cmax = app.add_subcommand("cmax", "largest admissible wave speed");
  cmax->add_option("--tm", flags.tm, "melting temperature");
  cmax->add_option("--alpha", flags.alpha_text, "absorption coefficient");
  cmax->add_option("--latent", flags.latent, "latent heat");
  grid_flags(cmax);

  CLI::App* small = app.add_subcommand("small-tm", "contraction solve for small melting temperature");
  small->add_option("--eps", flags.eps, "melting temperature eps");
  small->add_option("--c", flags.c, "wave speed");
  grid_flags(small);

  CLI::App* ss = app.add_subcommand("selfsimilar", "self-similar far-field profile");
  ss->add_option("--tint", flags.tint, "left state");
  ss->add_option("--tinf", flags.tinf, "right state");
  ss->add_option("--alpha", flags.alpha_text, "absorption coefficient (inf drops radiation)");
  ss->add_option("--z", flags.z, "half-width of the similarity interval");
  ss->add_option("--nodes", flags.nodes, "number of cells");
  ss->add_option("--out", flags.out, "output directory");

  CLI::App* c0 = app.add_subcommand("c0", "standing wave c = 0");
  c0->add_option("--tm", flags.tm, "melting temperature");
  c0->add_option("--alpha", flags.alpha_text, "absorption coefficient");
  grid_flags(c0);

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--suite", flags.suite, "suite name or module prefix");
  verify->add_option("--report", flags.report, "report path (default <out>/verify_report.json)");
  grid_flags(verify);
  verify->add_option("--inject-kernel-scale", flags.inject_kernel_scale)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const CLI::App* chosen = app.get_subcommands().front();
    const Command command = parse_command(chosen->get_name());
    nlohmann::json doc = nlohmann::json::object();
    if (!config_path.empty()) {
      const std::string text = read_file(config_path);
      try {
        doc = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed config file: ") + e.what());
      }
    }
    overlay(doc, flags);
    const RunConfig cfg = config_from_json(doc, command);
    switch (command) {
      case Command::solve_wave:
        return run_solve_wave(cfg);
      case Command::cmax:
        return run_cmax(cfg);
      case Command::small_tm:
        return run_small_tm(cfg);
      case Command::selfsimilar:
        return run_selfsimilar(cfg);
      case Command::c0:
        return run_c0(cfg);
      case Command::verify:
        return run_verify_command(cfg, flags);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitSolver;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  }
  return 0;
}
