#include "hjhom/pde_solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hjhom/hamiltonian.hpp"

namespace hjhom {

void SolverConfig::validate() const {
  if (h <= 0.0) throw std::invalid_argument("h must be positive");
  if (cfl <= 0.0 || cfl > 1.0)
    throw std::invalid_argument("cfl must lie in (0, 1]");
  if (T_final < 0.0) throw std::invalid_argument("T_final must be >= 0");
  if (alpha < 1.0) throw std::invalid_argument("alpha must be >= 1");
  if (record_interval <= 0.0)
    throw std::invalid_argument("record_interval must be positive");
  if (!allow_small_radius && radius > 0.0 && radius < 2.0 * T_final + 20.0)
    throw std::invalid_argument(
        "radius < 2*T_final + 20 requires allow_small_radius");
}

double lf_hamiltonian(Vec2 pm, Vec2 pp, double c_at_x, double q,
                      double alpha) {
  const Vec2 pbar{(pm.x + pp.x) / 2.0, (pm.y + pp.y) / 2.0};
  double r = -c_at_x + kinetic(pbar, q);
  r -= (alpha / 2.0) * (pp.x - pm.x);
  r -= (alpha / 2.0) * (pp.y - pm.y);
  return r;
}

PdeSolver::PdeSolver(SolverConfig config, std::function<double(Vec2)> c_field,
                     double q)
    : config_(config), q_(q) {
  config_.validate();
  const double R = config_.effective_radius();
  n_ = int(std::lround(2.0 * R / config_.h)) + 1;
  x0_ = -R;
  c_nodes_.resize(size_t(n_) * n_);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i)
      c_nodes_[size_t(j) * n_ + i] = c_field({node_coord(i), node_coord(j)});
}

PdeSolver::PdeSolver(SolverConfig config, const Environment& env)
    : PdeSolver(config, [&env](Vec2 x) { return env.c_value(x); },
                env.params().q) {}

SolutionField PdeSolver::initial_field(
    const std::function<double(Vec2)>& u0) const {
  SolutionField f;
  f.n = n_;
  f.h = config_.h;
  f.x0 = x0_;
  f.t = 0.0;
  f.u.assign(size_t(n_) * n_, 0.0);
  if (u0)
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < n_; ++i)
        f.u[size_t(j) * n_ + i] = u0({node_coord(i), node_coord(j)});
  return f;
}

void PdeSolver::step(SolutionField& field, double dt) const {
  if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
  if (dt > config_.max_dt() * (1.0 + 1e-12))
    throw std::invalid_argument("CFL violation: dt exceeds stability bound");
  if (field.n != n_) throw std::invalid_argument("field/solver grid mismatch");

  const int n = n_;
  const double h = config_.h;
  const double inv_h = 1.0 / h;
  const double inv_h2 = inv_h * inv_h;
  const bool dirichlet = config_.boundary == BoundaryMode::dirichlet_zero;
  const std::vector<double>& u = field.u;
  std::vector<double> un(u.size());
  double max_grad = field.max_grad_inf;

  auto at = [&](int i, int j) -> double {
    if (dirichlet) return u[size_t(j) * n + i];
    // zero-Neumann: clamp to the edge value
    i = std::clamp(i, 0, n - 1);
    j = std::clamp(j, 0, n - 1);
    return u[size_t(j) * n + i];
  };

  for (int j = 0; j < n; ++j) {
    const bool j_edge = j == 0 || j == n - 1;
    for (int i = 0; i < n; ++i) {
      const size_t idx = size_t(j) * n + i;
      if (dirichlet && (j_edge || i == 0 || i == n - 1)) {
        un[idx] = 0.0;  // boundary values pinned
        continue;
      }
      const double uc = u[idx];
      const double ue = i == n - 1 ? (dirichlet ? 0.0 : uc) : at(i + 1, j);
      const double uw = i == 0 ? (dirichlet ? 0.0 : uc) : at(i - 1, j);
      const double unn = j == n - 1 ? (dirichlet ? 0.0 : uc) : at(i, j + 1);
      const double us = j == 0 ? (dirichlet ? 0.0 : uc) : at(i, j - 1);

      const Vec2 pm{(uc - uw) * inv_h, (uc - us) * inv_h};
      const Vec2 pp{(ue - uc) * inv_h, (unn - uc) * inv_h};
      const double g = std::max(
          std::max(std::fabs(pm.x), std::fabs(pp.x)),
          std::max(std::fabs(pm.y), std::fabs(pp.y)));
      if (g > max_grad) max_grad = g;

      const double lap = ((ue + uw) + (unn + us) - 4.0 * uc) * inv_h2;
      const double ham =
          config_.disable_hamiltonian
              ? 0.0
              : lf_hamiltonian(pm, pp, c_nodes_[idx], q_, config_.alpha);
      un[idx] = uc - dt * (ham - lap);
    }
  }
  field.u.swap(un);
  field.t += dt;
  field.max_grad_inf = max_grad;
}

SolverRun PdeSolver::solve() const {
  SolverRun run;
  run.config = config_;
  run.n = n_;
  run.x0 = x0_;
  run.h = config_.h;

  SolutionField f = initial_field();
  const int pi = int(std::lround((config_.probe.x - x0_) / config_.h));
  const int pj = int(std::lround((config_.probe.y - x0_) / config_.h));
  if (pi < 0 || pi >= n_ || pj < 0 || pj >= n_)
    throw std::invalid_argument("probe outside domain");
  auto probe_value = [&]() { return f.u[size_t(pj) * n_ + pi]; };

  auto record = [&]() {
    run.times.push_back(f.t);
    run.probe_values.push_back(probe_value());
    run.max_grad_series.push_back(f.max_grad_inf);
    if (config_.keep_snapshots) run.snapshots.push_back(f.u);
  };
  record();  // t = 0

  const double dt_max = config_.max_dt();
  double next_record = config_.record_interval;
  while (f.t < config_.T_final - 1e-12) {
    const double target = std::min(next_record, config_.T_final);
    double dt = std::min(dt_max, target - f.t);
    step(f, dt);
    if (f.t >= target - 1e-12) {
      f.t = target;  // suppress roundoff drift in the time accumulator
      record();
      next_record += config_.record_interval;
    }
    ++run.steps;
  }
  run.max_grad_inf = f.max_grad_inf;
  run.monotonicity_warning = f.max_grad_inf > config_.grad_monitor_threshold;
  return run;
}

double normalize_value(const SolverRun& run, double T) {
  if (T <= 0.0) throw std::invalid_argument("T must be positive");
  for (size_t i = 0; i < run.times.size(); ++i)
    if (std::fabs(run.times[i] - T) < 1e-9) return run.probe_values[i] / T;
  throw std::invalid_argument("normalize_value: T not recorded");
}

ComparisonReport compare_with_supersolution(const SolverRun& run,
                                            const SuperSolutionSpec& spec,
                                            const Environment& env) {
  ComparisonReport report;
  if (run.snapshots.empty())
    throw std::invalid_argument(
        "compare_with_supersolution requires keep_snapshots");

  const Rectangle rect(Orientation::horizontal, spec.k, long(spec.X.x),
                       long(spec.X.y), env.params());
  if (!env.is_complete(rect))
    throw std::invalid_argument("spec's rectangle is not complete in env");

  for (size_t s = 0; s < run.snapshots.size(); ++s) {
    const double t = run.times[s];
    if (t > spec.t_horizon() + 1e-12) break;
    const double tol = 0.05 * std::max(t, 1.0);
    const std::vector<double>& u = run.snapshots[s];
    for (int j = 0; j < run.n; ++j) {
      for (int i = 0; i < run.n; ++i) {
        const Vec2 x{run.x0 + i * run.h, run.x0 + j * run.h};
        const double gap = u[size_t(j) * run.n + i] - u_plus(t, x, spec) - tol;
        if (gap > report.worst_gap) {
          report.worst_gap = gap;
          report.witness_t = t;
          report.witness_x = x;
        }
      }
    }
  }
  report.ok = report.worst_gap <= 0.0;
  if (!report.ok) {
    std::ostringstream msg;
    msg << "comparison violated at t=" << report.witness_t << " x=("
        << report.witness_x.x << "," << report.witness_x.y
        << ") gap=" << report.worst_gap;
    report.message = msg.str();
  }
  return report;
}

std::string probe_series_csv(const SolverRun& run) {
  std::ostringstream out;
  out.precision(12);
  out << "t,u_probe,u_probe_over_t,max_grad_inf\n";
  for (size_t i = 0; i < run.times.size(); ++i) {
    const double t = run.times[i];
    out << t << ',' << run.probe_values[i] << ','
        << (t > 0.0 ? run.probe_values[i] / t : 0.0) << ','
        << run.max_grad_series[i] << '\n';
  }
  return out.str();
}

}  // namespace hjhom
