// Command line front end: batch experiments emitting CSV/PGM artifacts.
//
// Subcommands: env, verify, solve, demo-oscillation, prob, assumptions.
// Exit codes: 0 success, 1 check failure, 2 config error, 3 I/O error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hjhom/closed_forms.hpp"
#include "hjhom/config.hpp"
#include "hjhom/environment.hpp"
#include "hjhom/hamiltonian.hpp"
#include "hjhom/io.hpp"
#include "hjhom/pde_solver.hpp"
#include "hjhom/probability.hpp"

namespace {

using namespace hjhom;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
  std::string out_dir = ".";
};

Config load_config(const CommonOpts& opts) {
  Config cfg;
  if (!opts.config_path.empty()) cfg = Config::load(opts.config_path);
  for (const auto& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    auto strip = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      s = b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    strip(key);
    strip(value);
    cfg.set(key, value);
  }
  return cfg;
}

EnvParams env_params(const Config& cfg) {
  EnvParams p;
  p.lambda = cfg.get_double("env.lambda", p.lambda);
  p.mu = cfg.get_double("env.mu", p.mu);
  p.eta = cfg.get_double("env.eta", p.eta);
  p.q = cfg.get_double("env.q", p.q);
  p.delta = cfg.get_double("env.delta", p.delta);
  p.k_max = int(cfg.get_long("env.k_max", p.k_max));
  p.seed = cfg.get_u64("env.seed", p.seed);
  p.env_grid_h = cfg.get_double("env.env_grid_h", p.env_grid_h);
  return p;
}

SolverConfig solver_config(const Config& cfg) {
  SolverConfig sc;
  sc.h = cfg.get_double("solver.h", sc.h);
  sc.cfl = cfg.get_double("solver.cfl", sc.cfl);
  sc.T_final = cfg.get_double("solver.T_final", sc.T_final);
  sc.radius = cfg.get_double("solver.radius", sc.radius);
  sc.alpha = cfg.get_double("solver.alpha", sc.alpha);
  const std::string b = cfg.get_string("solver.boundary", "neumann_zero");
  if (b == "neumann_zero")
    sc.boundary = BoundaryMode::neumann_zero;
  else if (b == "dirichlet_zero")
    sc.boundary = BoundaryMode::dirichlet_zero;
  else
    throw std::invalid_argument("solver.boundary must be neumann_zero or dirichlet_zero");
  sc.probe = {cfg.get_double("solver.probe_x1", 0.0),
              cfg.get_double("solver.probe_x2", 0.0)};
  sc.record_interval = cfg.get_double("solver.record_interval", sc.record_interval);
  sc.keep_snapshots = cfg.get_bool("solver.keep_snapshots", sc.keep_snapshots);
  sc.allow_small_radius = cfg.get_bool("solver.allow_small_radius", false);
  return sc;
}

std::string hash_comment(const Config& cfg) {
  return "# config_hash=" + cfg.hash() + "\n";
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
  if (opts.out_dir.empty() || opts.out_dir == ".") return name;
  return opts.out_dir + "/" + name;
}

Orientation parse_orientation(const std::string& s) {
  if (s == "horizontal") return Orientation::horizontal;
  if (s == "vertical") return Orientation::vertical;
  throw std::invalid_argument("orientation must be horizontal or vertical");
}

// ---------------------------------------------------------------------------

int cmd_env(const CommonOpts& opts) {
  const Config cfg = load_config(opts);
  EnvParams p = env_params(cfg);
  const double radius = cfg.get_double("env.window_radius", 100.0);
  if (radius <= 1.0) throw std::invalid_argument("env.window_radius must exceed 1");
  const Environment env(p, Box::centered({0, 0}, radius, radius), {},
                        cfg.get_bool("env.require_min_lambda_mu", true));

  write_file(out_path(opts, "rectangles.csv"), hash_comment(cfg) + rectangles_csv(env));

  const double hh = cfg.get_double("env.heatmap_h", 0.5);
  const double r = radius - 1.0 - p.env_grid_h;
  const auto field = env.c_grid(Box::centered({0, 0}, r, r), hh);
  write_file(out_path(opts, "c_heatmap.pgm"), render_pgm(field, -0.5, 0.5));

  std::ostringstream meta;
  meta << "config_hash = " << cfg.hash() << "\n"
       << "seed = " << p.seed << "\n"
       << "k_max = " << p.k_max << "\n"
       << "window_radius = " << radius << "\n"
       << "rectangles = " << env.rectangles().size() << "\n"
       << "truncation_probability_bound = " << env.truncation_probability_bound()
       << "\n";
  write_file(out_path(opts, "env_metadata.txt"), meta.str());
  std::cout << "env: wrote rectangles.csv, c_heatmap.pgm, env_metadata.txt ("
            << env.rectangles().size() << " rectangles)\n";
  return kExitOk;
}

// Stratified residual verification for the explicit super/subsolution pair on
// a lone planted horizontal rectangle.
int cmd_verify(const CommonOpts& opts) {
  const Config cfg = load_config(opts);
  EnvParams p = env_params(cfg);
  p.validate();
  const int k = int(cfg.get_long("verify.k", 3));
  const long l = cfg.get_long("verify.l", 0);
  const long m = cfg.get_long("verify.m", 0);
  const int per_case = int(cfg.get_long("verify.samples_per_case", 2000));
  const std::uint64_t sample_seed = cfg.get_u64("verify.sample_seed", 12345);
  if (per_case < 1) throw std::invalid_argument("verify.samples_per_case must be >= 1");

  const SuperSolutionSpec spec({double(l), double(m)}, k, p);
  const double Tk = spec.t_horizon();
  const double a1 = std::sqrt(2.0) * spec.sigma1;  // case split, axis 1
  const double a2 = std::sqrt(2.0) * spec.sigma2;  // case split, axis 2
  const double margin = cfg.get_double("verify.outer_margin", 20.0);

  const Box window = Box::centered(spec.X, a1 + margin + 2.0, a2 + margin + 2.0);
  const Rectangle rect(Orientation::horizontal, k, l, m, p);
  const Environment env = Environment::from_rectangles(p, window, {rect});
  const Environment rotated = rotate_environment(env);

  std::mt19937_64 rng(sample_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto inside = [&](double a) { return (2.0 * unit(rng) - 1.0) * a; };
  auto outside = [&](double a) {
    const double d = a + unit(rng) * margin;
    return unit(rng) < 0.5 ? -d : d;
  };

  const double slack = 2.0 * p.env_grid_h;
  std::ostringstream plus_csv, minus_csv;
  plus_csv << hash_comment(cfg) << "t,x1,x2,case,residual,case_bound\n";
  minus_csv << hash_comment(cfg) << "t,x1,x2,case,residual,case_bound\n";
  int violations = 0;
  double worst_margin = 1e300;
  for (int c = 1; c <= 4; ++c) {
    for (int s = 0; s < per_case; ++s) {
      const double t = unit(rng) * Tk;
      const Vec2 x{spec.X.x + (c == 1 || c == 2 ? outside(a1) : inside(a1)),
                   spec.X.y + (c == 1 || c == 3 ? outside(a2) : inside(a2))};
      const double bound = case_bound(static_cast<ResidualCase>(c), spec);
      const double rp = residual_plus(t, x, spec, env);
      plus_csv << t << "," << x.x << "," << x.y << "," << c << "," << rp << ","
               << bound << "\n";
      if (rp < bound - slack) ++violations;
      worst_margin = std::min(worst_margin, rp - bound);

      // u- on the rotated environment; x_hat = (x2, -x1) sits in the rotated
      // frame, so the mirrored sample point is the preimage (-x2, x1).
      const Vec2 y{-x.y, x.x};
      const double rm = residual_minus(t, y, spec, rotated);
      minus_csv << t << "," << y.x << "," << y.y << "," << c << "," << rm << ","
                << -bound << "\n";
      if (rm > -bound + slack) ++violations;
      worst_margin = std::min(worst_margin, -bound - rm);
    }
  }
  write_file(out_path(opts, "verify_supersolution.csv"), plus_csv.str());
  write_file(out_path(opts, "verify_subsolution.csv"), minus_csv.str());
  std::cout << "verify: " << 2 * 4 * per_case << " residual samples, "
            << violations << " violations (slack " << slack
            << ", worst residual-bound margin " << worst_margin << ")\n";
  return violations == 0 ? kExitOk : kExitCheckFailure;
}

PlantSpec solve_plants(const Config& cfg, const EnvParams& p, const Box& window) {
  const std::string orient = cfg.get_string("solve.plant_orientation", "none");
  if (orient == "none") return {};
  return plant_complete_rectangle(p, window, parse_orientation(orient),
                                  int(cfg.get_long("solve.plant_k", 3)),
                                  cfg.get_long("solve.plant_l", 0),
                                  cfg.get_long("solve.plant_m", 0));
}

int cmd_solve(const CommonOpts& opts) {
  const Config cfg = load_config(opts);
  EnvParams p = env_params(cfg);
  SolverConfig sc = solver_config(cfg);
  sc.validate();
  const double pad = 2.0 + p.env_grid_h;
  const Box window =
      Box::centered({0, 0}, sc.effective_radius() + pad, sc.effective_radius() + pad);
  const Environment env(p, window, solve_plants(cfg, p, window),
                        cfg.get_bool("env.require_min_lambda_mu", true));
  const PdeSolver solver(sc, env);
  const SolverRun run = solver.solve();
  write_file(out_path(opts, "probe_series.csv"), hash_comment(cfg) + probe_series_csv(run));
  if (cfg.get_bool("solve.snapshot", false)) {
    if (!run.snapshots.empty()) {
      Environment::GridField g;
      g.nx = g.ny = run.n;
      g.x0 = g.y0 = run.x0;
      g.h = run.h;
      g.values = run.snapshots.back();
      const auto [lo, hi] =
          std::minmax_element(g.values.begin(), g.values.end());
      const double vlo = *lo, vhi = *hi == *lo ? *lo + 1.0 : *hi;
      write_file(out_path(opts, "final_field.pgm"), render_pgm(g, vlo, vhi));
      std::ostringstream side;
      side << "t = " << run.times.back() << "\nvalue_range = [" << vlo << ", "
           << vhi << "]\n";
      write_file(out_path(opts, "final_field_range.txt"), side.str());
    }
  }
  std::cout << "solve: T=" << sc.T_final << " steps=" << run.steps
            << " u(T,probe)/T=" << normalize_value(run, sc.T_final)
            << " max_grad_inf=" << run.max_grad_inf
            << (run.monotonicity_warning ? " [gradient monitor tripped]" : "")
            << "\n";
  return kExitOk;
}

int cmd_demo_oscillation(const CommonOpts& opts) {
  const Config cfg = load_config(opts);
  EnvParams p = env_params(cfg);
  p.validate();
  auto parse_scales = [&](const std::string& key) {
    std::vector<int> ks;
    std::istringstream in(cfg.get_string(key, ""));
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok.find_first_not_of(" \t") == std::string::npos) continue;
      std::size_t pos = 0;
      const int k = std::stoi(tok, &pos);
      if (tok.find_first_not_of(" \t", pos) != std::string::npos)
        throw std::invalid_argument(key + ": bad scale '" + tok + "'");
      if (k < 1 || k > p.k_max)
        throw std::invalid_argument(key + ": scale out of [1, k_max]");
      ks.push_back(k);
    }
    return ks;
  };
  std::vector<std::pair<Orientation, int>> schedule;
  for (int k : parse_scales("demo.horizontal_scales"))
    schedule.emplace_back(Orientation::horizontal, k);
  for (int k : parse_scales("demo.vertical_scales"))
    schedule.emplace_back(Orientation::vertical, k);
  std::sort(schedule.begin(), schedule.end(),
            [](auto a, auto b) { return a.second < b.second; });

  const double h = cfg.get_double("solver.h", 0.25);
  std::ostringstream csv;
  csv << hash_comment(cfg) << "orientation,k,T,u_T,u_over_T\n";
  bool checks_ok = true;
  for (const auto& [orient, k] : schedule) {
    const double Tk = dyadic_scale(k);
    SolverConfig sc = solver_config(cfg);
    sc.h = h;
    sc.T_final = Tk;
    sc.radius = 2.0 * Tk + 20.0;
    sc.probe = {0.0, 0.0};
    sc.validate();
    const double pad = 2.0 + p.env_grid_h;
    const Box window = Box::centered({0, 0}, sc.radius + pad, sc.radius + pad);
    const PlantSpec plants = plant_complete_rectangle(p, window, orient, k, 0, 0);
    const Environment env(p, window, plants);
    const Rectangle target(orient, k, 0, 0, p);
    if (!env.is_complete(target))
      throw std::invalid_argument(
          "demo schedule leaves a planted rectangle incomplete (orientation/"
          "scale clash)");
    const SolverRun run = PdeSolver(sc, env).solve();
    const double v = normalize_value(run, Tk);
    csv << (orient == Orientation::horizontal ? "horizontal" : "vertical")
        << "," << k << "," << Tk << "," << v * Tk << "," << v << "\n";
    const double level = 0.5 - p.eta - 0.02;
    if (orient == Orientation::horizontal ? v > -level : v < level)
      checks_ok = false;
    std::cout << "demo-oscillation: "
              << (orient == Orientation::horizontal ? "horizontal" : "vertical")
              << " k=" << k << " u(T,0)/T=" << v << "\n";
  }
  write_file(out_path(opts, "oscillation.csv"), csv.str());
  if (!checks_ok) {
    std::cout << "demo-oscillation: normalized value missed the +-(1/2 - eta) "
                 "band by more than 0.02\n";
    return kExitCheckFailure;
  }
  return kExitOk;
}

int cmd_prob(const CommonOpts& opts) {
  const Config cfg = load_config(opts);
  EventQuery query;
  query.params = env_params(cfg);
  query.k = int(cfg.get_long("prob.k", 3));
  query.delta = cfg.get_double("prob.delta", query.params.delta);
  query.trials = int(cfg.get_long("prob.trials", 10000));
  query.k_margin = int(cfg.get_long("prob.k_margin", 6));
  query.params.delta = query.delta;

  std::string csv;
  if (query.delta == 0.0) {
    // degenerate search radius: every probability in the report is zero
    std::ostringstream out;
    out << "k,delta,lambda,mu,trials,mc_freq,mc_se,closed_form_lower,truncation_bound\n"
        << query.k << ",0," << query.params.lambda << "," << query.params.mu
        << "," << query.trials << ",0,0,0,0\n";
    csv = out.str();
  } else {
    const McEstimate est = mc_estimate(query);
    csv = mc_estimate_csv(query, est);
    std::cout << "prob: k=" << query.k << " delta=" << query.delta
              << " mc_freq=" << est.freq_bk << " (se " << est.se_bk
              << "), closed_form_lower=" << est.closed_form_lower
              << ", exact_ck=" << est.exact_ck << " vs mc " << est.freq_ck
              << "\n";
  }
  write_file(out_path(opts, "prob.csv"), hash_comment(cfg) + csv);
  return kExitOk;
}

int cmd_assumptions(const CommonOpts& opts) {
  const Config cfg = load_config(opts);
  EnvParams p = env_params(cfg);
  const double radius = cfg.get_double("env.window_radius", 40.0);
  const Environment env(p, Box::centered({0, 0}, radius, radius), {},
                        cfg.get_bool("env.require_min_lambda_mu", true));
  HamiltonianParams hp{p.q, &env};
  const int samples = int(cfg.get_long("assumptions.sample_count", 256));
  const AssumptionReport report = check_assumptions(hp, samples);
  std::cout << "superlinear growth: " << (report.superlinear_ok ? "ok" : "FAIL")
            << " (min H / R at R = 4, 8, 16, 32:";
  for (double r : report.growth_ratios) std::cout << " " << r;
  std::cout << ")\n";
  std::cout << "per-axis Lipschitz constant 1 on ||p||_inf <= 2: "
            << (report.lipschitz_ok ? "ok" : "FAIL") << "\n";
  if (!report.ok()) {
    std::cout << "witness: " << report.witness << "\n";
    return kExitCheckFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for a viscous Hamilton-Jacobi equation in "
               "a two-scale random environment"};
  app.require_subcommand(1);

  CommonOpts opts;
  int (*handler)(const CommonOpts&) = nullptr;
  auto add = [&](const std::string& name, const std::string& desc,
                 int (*fn)(const CommonOpts&)) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", opts.config_path, "configuration file");
    sub->add_option("--set", opts.overrides, "override: key=value (repeatable)");
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->callback([&handler, fn] { handler = fn; });
    return sub;
  };
  add("env", "sample an environment; write rectangles CSV, heatmap, metadata",
      &cmd_env);
  add("verify", "stratified residual verification of the super/subsolution pair",
      &cmd_verify);
  add("solve", "integrate the PDE and record the probe series", &cmd_solve);
  add("demo-oscillation",
      "normalized values under an alternating plant schedule",
      &cmd_demo_oscillation);
  add("prob", "closed-form bounds and Monte Carlo for the rectangle events",
      &cmd_prob);
  add("assumptions", "structural checks on the Hamiltonian", &cmd_assumptions);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    return handler(opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIoError;
  }
}
