#include "hjhom/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

#include "hjhom/hamiltonian.hpp"
#include "hjhom/special_functions.hpp"

namespace hjhom {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
}

SuperSolutionSpec::SuperSolutionSpec(Vec2 center, int scale,
                                     const EnvParams& p)
    : X(center), k(scale), lambda(p.lambda), mu(p.mu), eta(p.eta) {
  if (scale < 1) throw std::invalid_argument("scale must be >= 1");
  if (std::min(lambda, mu) < 16.0 / eta)
    throw std::invalid_argument("min(lambda, mu) >= 16/eta is required");
  sigma1 = lambda * dyadic_scale(k) / kSqrt2;
  sigma2 = mu / kSqrt2;
}

double bump(double x, double Xi, double sigma) {
  return (x - Xi) * normal_cdf_diff(x, Xi, sigma);
}

double bump_prime(double x, double Xi, double sigma) {
  return normal_cdf_diff(x, Xi, sigma) +
         2.0 * (x - Xi) * normal_pdf(x, Xi, sigma);
}

double bump_double_prime(double x, double Xi, double sigma) {
  const double d = x - Xi;
  return 2.0 * normal_pdf(x, Xi, sigma) * (2.0 - d * d / (sigma * sigma));
}

namespace {
void check_time(double t, const SuperSolutionSpec& spec) {
  if (t < 0.0 || t > spec.t_horizon())
    throw std::invalid_argument("t out of [0, T_k]");
}
}  // namespace

double u_plus(double t, Vec2 x, const SuperSolutionSpec& spec) {
  check_time(t, spec);
  const double lTk = spec.lambda * dyadic_scale(spec.k);
  return t * (-0.5 + spec.eta) +
         2.0 * t * bump(x.x, spec.X.x, spec.sigma1) / lTk +
         bump(x.y, spec.X.y, spec.sigma2);
}

Vec2 grad_u_plus(double t, Vec2 x, const SuperSolutionSpec& spec) {
  check_time(t, spec);
  const double lTk = spec.lambda * dyadic_scale(spec.k);
  return {2.0 * t * bump_prime(x.x, spec.X.x, spec.sigma1) / lTk,
          bump_prime(x.y, spec.X.y, spec.sigma2)};
}

double laplacian_u_plus(double t, Vec2 x, const SuperSolutionSpec& spec) {
  check_time(t, spec);
  const double lTk = spec.lambda * dyadic_scale(spec.k);
  return 2.0 * t * bump_double_prime(x.x, spec.X.x, spec.sigma1) / lTk +
         bump_double_prime(x.y, spec.X.y, spec.sigma2);
}

double dt_u_plus(double t, Vec2 x, const SuperSolutionSpec& spec) {
  check_time(t, spec);
  const double lTk = spec.lambda * dyadic_scale(spec.k);
  return -0.5 + spec.eta + 2.0 * bump(x.x, spec.X.x, spec.sigma1) / lTk;
}

double residual_plus(double t, Vec2 x, const SuperSolutionSpec& spec,
                     const Environment& env) {
  const Vec2 g = grad_u_plus(t, x, spec);
  HamiltonianParams hp{env.params().q, &env};
  return dt_u_plus(t, x, spec) + hamiltonian(g, x, hp) -
         laplacian_u_plus(t, x, spec);
}

ResidualCase classify_case(Vec2 x, const SuperSolutionSpec& spec) {
  // Strict inequality for "outside" assigns each seam to the inside case,
  // which carries the weaker bound.
  const bool out1 = std::fabs(x.x - spec.X.x) > kSqrt2 * spec.sigma1;
  const bool out2 = std::fabs(x.y - spec.X.y) > kSqrt2 * spec.sigma2;
  if (out1 && out2) return ResidualCase::case1;
  if (out2) return ResidualCase::case2;
  if (out1) return ResidualCase::case3;
  return ResidualCase::case4;
}

double case_bound(ResidualCase c, const SuperSolutionSpec& spec) {
  const double l = spec.lambda, m = spec.mu, eta = spec.eta;
  switch (c) {
    case ResidualCase::case1: return eta - 4.0 / l;
    case ResidualCase::case2: return eta - 8.0 / l;
    case ResidualCase::case3: return eta - 4.0 / l - 4.0 / m;
    case ResidualCase::case4: return eta - 8.0 / l - 4.0 / m;
  }
  return 0.0;
}

double residual_plus_case_bound(double t, Vec2 x,
                                const SuperSolutionSpec& spec) {
  check_time(t, spec);
  return case_bound(classify_case(x, spec), spec);
}

double u_minus(double t, Vec2 x, const SuperSolutionSpec& spec) {
  return -u_plus(t, hat(x), spec);
}

Vec2 grad_u_minus(double t, Vec2 x, const SuperSolutionSpec& spec) {
  const Vec2 g = grad_u_plus(t, hat(x), spec);
  return {g.y, -g.x};
}

double residual_minus(double t, Vec2 x, const SuperSolutionSpec& spec,
                      const Environment& rotated_env) {
  const Vec2 xh = hat(x);
  const Vec2 g = grad_u_minus(t, x, spec);
  HamiltonianParams hp{rotated_env.params().q, &rotated_env};
  const double dt_um = -dt_u_plus(t, xh, spec);
  const double lap_um = -laplacian_u_plus(t, xh, spec);
  return dt_um + hamiltonian(g, x, hp) - lap_um;
}

}  // namespace hjhom
