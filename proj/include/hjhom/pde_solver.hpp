#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hjhom/closed_forms.hpp"
#include "hjhom/environment.hpp"
#include "hjhom/geometry.hpp"

namespace hjhom {

enum class BoundaryMode { neumann_zero, dirichlet_zero };

struct SolverConfig {
  double h = 0.25;      // grid spacing
  double cfl = 0.9;     // safety factor in (0, 1]
  double T_final = 8.0;
  double radius = 0.0;  // half-width of the square domain; 0 => 2*T_final + 20
  double alpha = 2.0;   // Lax-Friedrichs dissipation per axis
  BoundaryMode boundary = BoundaryMode::neumann_zero;
  Vec2 probe{0.0, 0.0};
  double grad_monitor_threshold = 2.0;
  double record_interval = 1.0;
  bool keep_snapshots = false;
  bool allow_small_radius = false;   // explicit override of radius >= 2T+20
  bool disable_hamiltonian = false;  // pure heat equation (test mode)

  double effective_radius() const { return radius > 0.0 ? radius : 2.0 * T_final + 20.0; }
  /// Explicit stability limit for unit diffusion plus LF transport.
  double max_dt() const { return cfl / (4.0 / (h * h) + 2.0 * alpha / h); }
  void validate() const;
};

/// Grid values at one time level.
struct SolutionField {
  int n = 0;          // nodes per axis; node (i,j) sits at (x0 + i h, x0 + j h)
  double h = 0.0;
  double x0 = 0.0;
  double t = 0.0;
  std::vector<double> u;
  double max_grad_inf = 0.0;  // running max of the discrete one-sided gradients
};

/// Monotone Lax-Friedrichs numerical Hamiltonian:
///   H((pm+pp)/2, x) - (alpha/2)(pp1 - pm1) - (alpha/2)(pp2 - pm2)
/// with pm/pp the backward/forward differences.  Monotone for alpha >= the
/// per-axis Lipschitz constant of H over the gradients encountered (1 on
/// ||p||_inf <= 2; monitored at runtime).
double lf_hamiltonian(Vec2 pm, Vec2 pp, double c_at_x, double q, double alpha);

struct SolverRun {
  SolverConfig config;
  std::vector<double> times;        // recorded times (multiples of record_interval)
  std::vector<double> probe_values; // u(t, probe)
  std::vector<double> max_grad_series;
  std::vector<std::vector<double>> snapshots;  // full fields, if requested
  double max_grad_inf = 0.0;
  bool monotonicity_warning = false;
  int n = 0;
  double x0 = 0.0, h = 0.0;
  long steps = 0;
};

/// Explicit Euler + Lax-Friedrichs + 5-point Laplacian for
///   d_t u + H(grad u, x) - Lap u = 0,  u(0,.) = 0.
/// The cost field c is sampled once on the grid nodes at construction.
class PdeSolver {
 public:
  PdeSolver(SolverConfig config, std::function<double(Vec2)> c_field,
            double q = 2.0);
  PdeSolver(SolverConfig config, const Environment& env);

  const SolverConfig& config() const { return config_; }
  int n() const { return n_; }
  double node_coord(int i) const { return x0_ + i * config_.h; }
  double c_at(int i, int j) const { return c_nodes_[size_t(j) * n_ + i]; }

  /// Field at t = 0; optional initial data for test problems (the production
  /// initial condition is identically zero).
  SolutionField initial_field(
      const std::function<double(Vec2)>& u0 = {}) const;

  /// One forward-Euler update.  Throws if dt violates the CFL bound.
  void step(SolutionField& field, double dt) const;

  /// Integrates to T_final, recording the probe value at each multiple of
  /// record_interval (record times are hit exactly).
  SolverRun solve() const;

 private:
  SolverConfig config_;
  double q_;
  int n_ = 0;
  double x0_ = 0.0;
  std::vector<double> c_nodes_;
};

/// u(T, probe)/T, i.e. u^eps(1, 0) at eps = 1/T.  Throws if T was not
/// recorded.
double normalize_value(const SolverRun& run, double T);

struct ComparisonReport {
  bool ok = true;
  double worst_gap = -1e300;  // max over nodes/times of u_num - u_plus - tol
  double witness_t = 0.0;
  Vec2 witness_x;
  std::string message;
};

/// Checks u_num(t,x) <= u+(t,x) + 0.05*max(t,1) at every grid node and
/// recorded time (requires keep_snapshots).  The spec's rectangle must be
/// complete in env.
ComparisonReport compare_with_supersolution(const SolverRun& run,
                                            const SuperSolutionSpec& spec,
                                            const Environment& env);

/// Probe series CSV: t,u_probe,u_probe_over_t,max_grad_inf.
std::string probe_series_csv(const SolverRun& run);

}  // namespace hjhom
