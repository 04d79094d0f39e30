#include "stefanrad/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "stefanrad/discretization.hpp"
#include "stefanrad/errors.hpp"
#include "stefanrad/kernel.hpp"
#include "stefanrad/profile_io.hpp"
#include "stefanrad/selfsimilar.hpp"
#include "stefanrad/simd.hpp"
#include "stefanrad/small_tm.hpp"
#include "stefanrad/solid_solver.hpp"
#include "stefanrad/stefan.hpp"

namespace stefanrad {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SuiteResult at_most(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured <= threshold, measured, threshold, "<=", std::move(detail)};
}

SuiteResult at_least(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured >= threshold, measured, threshold, ">=", std::move(detail)};
}

SuiteResult below(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured < threshold, measured, threshold, "<", std::move(detail)};
}

SuiteResult above(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured > threshold, measured, threshold, ">", std::move(detail)};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double exp_moment_quadrature(double a) {
  boost::math::quadrature::exp_sinh<double> q;
  auto half = [&](double sign) {
    return q.integrate([&](double z) {
      if (z <= 0.0 || z > 700.0) return 0.0;
      return 0.5 * kernel::e1(z) * std::exp(sign * a * z);
    });
  };
  return half(1.0) + half(-1.0);
}

struct SpeedRun {
  double c;
  Profile profile;
  SolveReport report;
};

struct StefanRuns {
  CmaxResult cmax;
  std::vector<TravelingWave> waves;  // ascending speeds, last at c_max
  bool rejected = false;
  std::string rejection;
};

class Verifier {
 public:
  Verifier(const RunConfig& cfg, const VerifyOptions& opt)
      : cfg_(cfg), opt_(opt), rng_(cfg.seed), grid_(build_grid(cfg.grid.y_max, cfg.grid.n, cfg.grid.stretch)) {}

  SuiteResult run(const std::string& name) {
    if (name == "kernel.normalization") return kernel_normalization();
    if (name == "kernel.tail_bound") return kernel_tail_bound();
    if (name == "kernel.moment_identity") return kernel_moment_identity();
    if (name == "kernel.antiderivative") return kernel_antiderivative();
    if (name == "discretization.row_normalization") return row_normalization();
    if (name == "discretization.exp_moment_reproduction") return exp_moment_reproduction();
    if (name == "discretization.refinement_convergence") return refinement_convergence();
    if (name == "solid.monotone_iteration") return monotone_iteration();
    if (name == "solid.boundary_derivative_negativity") return derivative_negativity();
    if (name == "solid.gradient_bound") return gradient_bound();
    if (name == "solid.residual_certificate") return residual_certificate();
    if (name == "solid.tm_monotonicity") return tm_monotonicity();
    if (name == "small_tm.contraction") return contraction();
    if (name == "small_tm.solver_agreement") return solver_agreement();
    if (name == "small_tm.positivity") return positivity(false);
    if (name == "small_tm.limit_positivity") return positivity(true);
    if (name == "stefan.stefan_residual") return stefan_residual();
    if (name == "stefan.admissible_band") return admissible_band();
    if (name == "stefan.liquid_far_field") return liquid_far_field();
    if (name == "stefan.rescaling") return rescaling();
    if (name == "selfsimilar.constant_state_exactness") return constant_state_exactness();
    if (name == "selfsimilar.grid_convergence") return selfsimilar_grid_convergence();
    if (name == "selfsimilar.intensity_monotonicity") return intensity_monotonicity();
    if (name == "cli.determinism") return determinism();
    if (name == "cli.exit_status") return exit_status_contract();
    throw ConfigError("unknown suite " + name);
  }

 private:
  KernelOperator kernel(const Grid& grid, double alpha) const {
    KernelOperator k = assemble_kernel(grid, alpha);
    if (opt_.inject_kernel_scale != 1.0) k.scale_weights(opt_.inject_kernel_scale);
    return k;
  }

  WaveParams params(double c, double T_M) const {
    WaveParams p = cfg_.params;
    p.c = c;
    p.T_M = T_M;
    return p;
  }

  SolidOptions solid_options() const {
    SolidOptions o;
    o.tol = cfg_.tol;
    return o;
  }

  // kernel identities

  SuiteResult kernel_normalization() {
    std::uniform_int_distribution<int> cells(10, 100);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (double half : {5.0, 10.0, 20.0}) {
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> cuts{-half, half};
        const int m = cells(rng_);
        for (int k = 1; k < m; ++k) cuts.push_back(-half + 2.0 * half * unit(rng_));
        std::sort(cuts.begin(), cuts.end());
        double sum = 2.0 * kernel::kernel_tail(half);
        for (std::size_t j = 0; j + 1 < cuts.size(); ++j) sum += kernel::kernel_cell_integral(cuts[j], cuts[j + 1]);
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
    return at_most("kernel.normalization", worst, 1e-10, "random partitions of (-L, L), L in {5, 10, 20}");
  }

  SuiteResult kernel_tail_bound() {
    double worst = -kInf;
    for (int k = 0; k < 1000; ++k) {
      const double a = 50.0 * k / 999.0;
      worst = std::max(worst, kernel::kernel_tail(a) - 0.5 * std::exp(-a));
    }
    return at_most("kernel.tail_bound", worst, 0.0, "max of tail(a) - e^{-a}/2 on 1000 points of [0, 50]");
  }

  SuiteResult kernel_moment_identity() {
    double worst = 0.0;
    for (double a : {-0.9, -0.5, -0.1, 0.1, 0.5, 0.9}) {
      worst = std::max(worst, std::abs(kernel::kernel_exp_moment(a) - exp_moment_quadrature(a)));
    }
    return at_most("kernel.moment_identity", worst, 1e-8, "a in {+-0.1, +-0.5, +-0.9}");
  }

  SuiteResult kernel_antiderivative() {
    auto prim = [](double t) { return t * kernel::e1(t) - std::exp(-t); };
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const double t = 0.01 * std::pow(2000.0, k / 200.0);
      const double h = 1e-5 * t;
      worst = std::max(worst, std::abs((prim(t + h) - prim(t - h)) / (2.0 * h) - kernel::e1(t)));
    }
    return at_most("kernel.antiderivative", worst, 1e-6, "central differences on [0.01, 20]");
  }

  // discretization

  SuiteResult row_normalization() {
    const KernelOperator k = kernel(grid_, cfg_.params.alpha);
    double worst = 0.0;
    double min_weight = kInf;
    for (std::size_t r = 0; r < k.size(); ++r) {
      worst = std::max(worst, std::abs(k.row_mass(r) - 1.0));
      for (double w : k.row(r)) min_weight = std::min(min_weight, w);
    }
    SuiteResult s = at_most("discretization.row_normalization", worst, 1e-8, "min weight " + fmt(min_weight));
    s.pass = s.pass && min_weight >= 0.0;
    return s;
  }

  double exp_moment_error(double h, double a) const {
    const auto n = static_cast<std::size_t>(std::lround(80.0 / h));
    const Grid g = build_interval_grid(-40.0, 40.0, n);
    const KernelOperator op = kernel(g, 1.0);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::exp(a * g.nodes[i]);
    const std::vector<double> kv = op.apply(v);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::abs(g.nodes[i]) > 10.0) continue;
      const double exact = kernel::kernel_exp_moment(a) * v[i];
      err = std::max(err, std::abs(kv[i] - exact) / exact);
    }
    return err;
  }

  SuiteResult exp_moment_reproduction() {
    double worst = 0.0;
    for (double a : {0.25, 0.5}) worst = std::max(worst, exp_moment_error(0.05, a));
    return at_most("discretization.exp_moment_reproduction", worst, 1e-3,
                   "relative error, h = 0.05, a in {0.25, 0.5}, rows |y| <= 10");
  }

  SuiteResult refinement_convergence() {
    double worst = kInf;
    for (double a : {0.25, 0.5}) worst = std::min(worst, exp_moment_error(0.1, a) / exp_moment_error(0.05, a));
    return at_least("discretization.refinement_convergence", worst, 3.0, "error ratio h = 0.1 over h = 0.05");
  }

  // solid phase

  const std::vector<SpeedRun>& speed_runs() {
    if (!speed_runs_) {
      speed_runs_.emplace();
      for (double c : {0.5, 1.0, 2.0}) {
        const WaveParams p = params(c, cfg_.params.T_M);
        auto [profile, report] = accelerated_solve(p, grid_, kernel(grid_, p.alpha), std::nullopt, solid_options());
        speed_runs_->push_back({c, std::move(profile), std::move(report)});
      }
    }
    return *speed_runs_;
  }

  SuiteResult monotone_iteration() {
    const WaveParams p = params(1.0, cfg_.params.T_M);
    SolidOptions o = solid_options();
    o.max_outer = 200;
    const MonotoneTrace trace = monotone_trace(p, grid_, kernel(grid_, p.alpha), o);
    const double worst = std::max(trace.report.monotonicity_violation, trace.report.bound_violation);
    return at_most("solid.monotone_iteration", worst, 1e-10,
                   "max of monotonicity and upper-bound violations over " +
                       std::to_string(trace.report.outer_iterations) + " recorded steps at c = 1" +
                       (trace.converged ? "" : " (step cap reached)"));
  }

  SuiteResult derivative_negativity() {
    double worst = -kInf;
    for (const auto& run : speed_runs()) worst = std::max(worst, run.report.derivative_at_zero);
    return below("solid.boundary_derivative_negativity", worst, 0.0, "max f'(0+) over c in {0.5, 1, 2}");
  }

  SuiteResult gradient_bound() {
    double worst = -kInf;
    const double T4 = std::pow(cfg_.params.T_M, 4);
    for (const auto& run : speed_runs()) worst = std::max(worst, max_gradient(run.profile) - T4 / run.c);
    return at_most("solid.gradient_bound", worst, 1e-6, "max of sup|f'| - T_M^4/c over c in {0.5, 1, 2}");
  }

  SuiteResult residual_certificate() {
    const SpeedRun& run = speed_runs()[1];
    const std::vector<double> r = certified_residual(run.profile, run.c, cfg_.params.alpha);
    return at_most("solid.residual_certificate", sup_norm(r), 1e-6,
                   "residual at c = 1 with the reference quadrature operator");
  }

  SuiteResult tm_monotonicity() {
    std::vector<Profile> profiles;
    for (double T_M : {0.25, 0.5, 1.0}) {
      const WaveParams p = params(1.0, T_M);
      profiles.push_back(accelerated_solve(p, grid_, kernel(grid_, p.alpha), std::nullopt, solid_options()).first);
    }
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < profiles.size(); ++k) {
      for (std::size_t i = 0; i < grid_.size(); ++i) {
        worst = std::max(worst, profiles[k].values[i] - profiles[k + 1].values[i]);
      }
    }
    return at_most("solid.tm_monotonicity", worst, 1e-8, "max (f_lower - f_upper)^+ for T_M in {0.25, 0.5, 1}");
  }

  // small melting temperature

  Grid small_grid(double c) const {
    return build_grid(40.0 / std::min(1.0, c), cfg_.grid.n, cfg_.grid.stretch);
  }

  SmallTmOptions small_options() const {
    SmallTmOptions o;
    o.tol = cfg_.tol;
    return o;
  }

  SuiteResult contraction() {
    double worst = 0.0;
    for (double c : {0.5, 1.0, 2.0}) {
      const EpsilonThresholds t = epsilon_thresholds(c);
      const double cap = 0.5 * std::min(t.eps1, t.eps2);
      for (double frac : {0.2, 0.5, 0.9}) {
        const ContractionResult r = contraction_solve(frac * cap, c, small_grid(c), small_options());
        worst = std::max(worst, r.report.theta_hat.value_or(0.0));
      }
    }
    return below("small_tm.contraction", worst, 1.0,
                 "max measured ratio, eps = {0.2, 0.5, 0.9} * 0.5 min(eps1, eps2), c in {0.5, 1, 2}");
  }

  SuiteResult solver_agreement() {
    const double eps = 0.05;
    const Grid g = small_grid(1.0);
    const ContractionResult fixed = contraction_solve(eps, 1.0, g, small_options());
    const WaveParams p = params(1.0, eps);
    const KernelOperator k = kernel(g, 1.0);
    WaveParams unit = p;
    unit.alpha = 1.0;
    SolidOptions o = solid_options();
    MonotoneTrace trace = monotone_trace(unit, g, k, o);
    std::string method = "monotone";
    Profile direct = std::move(trace.profile);
    if (!trace.converged) {
      direct = accelerated_solve(unit, g, k, direct, o).first;
      method = "monotone, finished by Newton-Krylov";
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      worst = std::max(worst, std::abs(direct.values[i] - eps * fixed.solution.profile.values[i]));
    }
    return at_most("small_tm.solver_agreement", worst, 1e-5, "eps = 0.05, c = 1; direct solve " + method);
  }

  SuiteResult positivity(bool limit) {
    const EpsilonThresholds t = epsilon_thresholds(1.0);
    double worst = kInf;
    for (double frac : {0.5, 1.0}) {
      const ContractionResult r = contraction_solve(frac * t.eps3, 1.0, small_grid(1.0), small_options());
      if (limit) {
        worst = std::min(worst, r.solution.f_inf);
      } else {
        for (double v : r.solution.profile.values) worst = std::min(worst, v);
      }
    }
    return at_least(limit ? "small_tm.limit_positivity" : "small_tm.positivity", worst, 0.5,
                    "c = 1, eps in {0.5, 1} * eps3 = " + fmt(t.eps3));
  }

  // interface matching

  const StefanRuns& stefan_runs() {
    if (!stefan_) {
      stefan_.emplace();
      WaveParams p = cfg_.params;
      CmaxOptions o;
      o.solid = solid_options();
      stefan_->cmax = find_cmax(p, grid_, o);
      const double cmax = stefan_->cmax.c_max;
      for (double frac : {0.2, 0.4, 0.6, 0.8}) {
        p.c = frac * cmax;
        stefan_->waves.push_back(solve_wave(p, grid_, o.solid));
      }
      p.c = cmax;
      stefan_->waves.push_back(match_interface(stefan_->cmax.solid, p));
      p.c = 1.2 * cmax;
      try {
        solve_wave(p, grid_, o.solid);
      } catch (const SupercriticalSpeedError& e) {
        stefan_->rejected = true;
        stefan_->rejection = e.what();
      }
    }
    return *stefan_;
  }

  SuiteResult stefan_residual() {
    const StefanRuns& s = stefan_runs();
    double worst = 0.0;
    for (const auto& w : s.waves) worst = std::max(worst, w.stefan_residual);
    return at_most("stefan.stefan_residual", worst, 1e-8,
                   "5 speeds in (0, c_max], c_max = " + format_double(s.cmax.c_max));
  }

  SuiteResult admissible_band() {
    const StefanRuns& s = stefan_runs();
    double worst = kInf;
    for (const auto& w : s.waves) worst = std::min(worst, w.liquid_A);
    SuiteResult r = at_least("stefan.admissible_band", worst, 0.0,
                             std::string("min A over 5 speeds; 1.2 c_max ") +
                                 (s.rejected ? "rejected" : "not rejected"));
    r.pass = r.pass && s.rejected;
    return r;
  }

  SuiteResult liquid_far_field() {
    const StefanRuns& s = stefan_runs();
    double gap = kInf;
    for (std::size_t k = 0; k + 1 < s.waves.size(); ++k) {
      gap = std::min(gap, s.waves[k].T_minus_inf - s.waves[k].params.T_M);
    }
    const TravelingWave& top = s.waves.back();
    const double at_cmax = top.T_minus_inf - top.params.T_M;
    SuiteResult r = above("stefan.liquid_far_field", gap, 0.0,
                          "min T(-inf) - T_M below c_max; at c_max " + fmt(at_cmax));
    r.pass = r.pass && at_cmax >= 0.0 && at_cmax <= 1e-6;
    return r;
  }

  SuiteResult rescaling() {
    const double alpha = 2.0;
    WaveParams direct_params = params(1.0, cfg_.params.T_M);
    direct_params.alpha = alpha;
    const Grid direct_grid = build_grid(cfg_.grid.y_max / alpha, cfg_.grid.n, cfg_.grid.stretch);
    const Profile direct = accelerated_solve(direct_params, direct_grid, kernel(direct_grid, alpha), std::nullopt,
                                             solid_options())
                               .first;
    WaveParams unit = direct_params;
    unit.alpha = 1.0;
    unit.c = direct_params.c / alpha;
    unit.T_M = direct_params.T_M * std::pow(alpha, -2.0 / 3.0);
    const Grid unit_grid = build_grid(cfg_.grid.y_max, cfg_.grid.n, cfg_.grid.stretch);
    const Profile scaled =
        rescale(accelerated_solve(unit, unit_grid, kernel(unit_grid, 1.0), std::nullopt, solid_options()).first,
                alpha, direct_grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < direct_grid.size(); ++i) {
      worst = std::max(worst, std::abs(direct.values[i] - scaled.values[i]));
    }
    return at_most("stefan.rescaling", worst, 1e-5, "alpha = 2 direct against rescaled alpha = 1 solve, c = 1");
  }

  // self-similar profile and intensity

  SuiteResult constant_state_exactness() {
    double worst = 0.0;
    for (double theta : {0.0, 0.7, 1.0}) {
      for (double alpha : {1.0, kInf}) {
        const SelfSimilarProfile s = solve_selfsimilar(theta, theta, alpha);
        for (double v : s.values) worst = std::max(worst, std::abs(v - theta));
      }
    }
    const double temp = 300.0;
    const double nu = 1e13;
    const double B = kernel::planck_B(nu, temp);
    const Profile flat = constant_profile(build_grid(10.0, 200), temp);
    for (double alpha : {0.5, 2.0}) {
      for (double x : {0.5, 2.0, 5.0}) {
        for (double mu : {0.3, 1.0}) {
          const double exact = B * -std::expm1(-alpha * x / mu);
          worst = std::max(worst, std::abs(reconstruct_intensity(flat, nu, x, mu, alpha) - exact) / B);
        }
        worst = std::max(worst, std::abs(reconstruct_intensity(flat, nu, x, -0.5, alpha) - B) / B);
      }
    }
    return at_most("selfsimilar.constant_state_exactness", worst, 1e-8,
                   "constant self-similar states and constant-temperature intensity, relative to B");
  }

  static double erf_error(std::size_t n) {
    const SelfSimilarProfile s = solve_selfsimilar(1.0, 0.0, kInf, 10.0, n);
    double err = 0.0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      err = std::max(err, std::abs(s.values[i] - heat_similarity_profile(1.0, 0.0, s.grid.nodes[i])));
    }
    return err;
  }

  SuiteResult selfsimilar_grid_convergence() {
    const double coarse = erf_error(400);
    const double fine = erf_error(800);
    return at_least("selfsimilar.grid_convergence", coarse / fine, 3.0,
                    "error against the erf profile, n = 400 over n = 800; fine error " + fmt(fine));
  }

  SuiteResult intensity_monotonicity() {
    const double temp = 300.0;
    const double nu = 1e13;
    const Profile flat = constant_profile(build_grid(10.0, 200), temp);
    double min_step = kInf;
    double min_value = kInf;
    double previous = reconstruct_intensity(flat, nu, 0.0, 1.0, 1.0);
    const double at_interface = previous;
    for (int k = 1; k <= 100; ++k) {
      const double x = 0.1 * k;
      const double value = reconstruct_intensity(flat, nu, x, 1.0, 1.0);
      min_step = std::min(min_step, value - previous);
      min_value = std::min(min_value, value);
      previous = value;
    }
    SuiteResult r = at_least("selfsimilar.intensity_monotonicity", min_step, 0.0,
                             "min increment along path length; min value " + fmt(min_value) +
                                 ", value at the interface " + fmt(at_interface));
    r.pass = r.pass && min_value > 0.0 && at_interface == 0.0;
    return r;
  }

  // command-line contract

  SuiteResult determinism() {
    const Grid g = build_grid(cfg_.grid.y_max, std::min<std::size_t>(cfg_.grid.n, 400), cfg_.grid.stretch);
    const WaveParams p = params(1.0, cfg_.params.T_M);
    auto once = [&] {
      const KernelOperator k = kernel(g, p.alpha);
      const Profile f = accelerated_solve(p, g, k, std::nullopt, solid_options()).first;
      const std::vector<double> r = solid_residual(f, p.c, k);
      return format_profile(g.nodes, f.values, r, {{"c", format_double(p.c)}});
    };
    const std::string first = once();
    const std::string second = once();
    return at_most("cli.determinism", first == second ? 0.0 : 1.0, 0.0, "two profile tables compared byte by byte");
  }

  static SuiteResult exit_status_contract() {
    VerificationReport good;
    good.suites.push_back({"x", true, 0.0, 0.0, "<=", {}});
    VerificationReport bad = good;
    bad.suites.push_back({"y", false, 1.0, 0.0, "<=", {}});
    const bool ok = exit_status(good) == 0 && exit_status(bad) != 0 && exit_status(VerificationReport{}) == 0;
    return at_most("cli.exit_status", ok ? 0.0 : 1.0, 0.0, "zero exit iff every suite passes");
  }

  const RunConfig& cfg_;
  VerifyOptions opt_;
  std::mt19937_64 rng_;
  Grid grid_;
  std::optional<std::vector<SpeedRun>> speed_runs_;
  std::optional<StefanRuns> stefan_;
};

}  // namespace

bool VerificationReport::all_pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "kernel.normalization",
      "kernel.tail_bound",
      "kernel.moment_identity",
      "kernel.antiderivative",
      "discretization.row_normalization",
      "discretization.exp_moment_reproduction",
      "discretization.refinement_convergence",
      "solid.monotone_iteration",
      "solid.boundary_derivative_negativity",
      "solid.gradient_bound",
      "solid.residual_certificate",
      "solid.tm_monotonicity",
      "small_tm.contraction",
      "small_tm.solver_agreement",
      "small_tm.positivity",
      "small_tm.limit_positivity",
      "stefan.stefan_residual",
      "stefan.admissible_band",
      "stefan.liquid_far_field",
      "stefan.rescaling",
      "selfsimilar.constant_state_exactness",
      "selfsimilar.grid_convergence",
      "selfsimilar.intensity_monotonicity",
      "cli.determinism",
      "cli.exit_status",
  };
  return names;
}

VerificationReport run_verify(const RunConfig& cfg, const VerifyOptions& opt) {
  std::vector<std::string> selected;
  for (const auto& name : suite_names()) {
    if (!cfg.suite || name == *cfg.suite || name.rfind(*cfg.suite + ".", 0) == 0) selected.push_back(name);
  }
  if (selected.empty()) throw ConfigError("unknown suite " + *cfg.suite);

  VerificationReport report;
  report.config = config_echo(cfg);
  report.environment["isa"] = std::string(simd::isa_name(simd::active_isa()));
  report.environment["compiler"] = __VERSION__;
  report.environment["seed"] = cfg.seed;
  report.environment["inject_kernel_scale"] = opt.inject_kernel_scale;

  Verifier verifier(cfg, opt);
  for (const auto& name : selected) {
    try {
      report.suites.push_back(verifier.run(name));
    } catch (const Error& e) {
      report.suites.push_back({name, false, kInf, 0.0, "error", e.what()});
    }
  }
  return report;
}

std::string report_json(const VerificationReport& report) {
  nlohmann::json j;
  j["config"] = report.config;
  j["environment"] = report.environment;
  j["all_pass"] = report.all_pass();
  nlohmann::json suites = nlohmann::json::object();
  for (const auto& s : report.suites) {
    nlohmann::json e;
    e["pass"] = s.pass;
    e["measured"] = std::isfinite(s.measured) ? nlohmann::json(s.measured) : nlohmann::json(nullptr);
    e["threshold"] = s.threshold;
    e["relation"] = s.relation;
    e["detail"] = s.detail;
    suites[s.name] = e;
  }
  j["suites"] = suites;
  return j.dump(2) + "\n";
}

int exit_status(const VerificationReport& report) { return report.all_pass() ? 0 : 1; }

}  // namespace stefanrad
