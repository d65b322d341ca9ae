#pragma once

#include "hjhom/environment.hpp"
#include "hjhom/geometry.hpp"

namespace hjhom {

/// Parameters of the explicit supersolution built on a horizontal rectangle
/// of scale k centered at X:
///   u+(t,x) = t(-1/2 + eta) + 2t h1(x1)/(lambda T_k) + h2(x2)
/// with h_i(x) = (x - X_i) erf((x - X_i)/(sigma_i sqrt(2))),
/// sigma_1 = lambda T_k / sqrt(2), sigma_2 = mu / sqrt(2).
struct SuperSolutionSpec {
  Vec2 X;
  int k = 1;
  double lambda = 40.0;
  double mu = 40.0;
  double eta = 0.4;
  double sigma1 = 0.0;  // derived
  double sigma2 = 0.0;  // derived

  SuperSolutionSpec(Vec2 center, int scale, const EnvParams& p);

  double t_horizon() const { return dyadic_scale(k); }  // T_k
};

/// h(x) = (x - Xi) * (P(P < x) - P(P > x)) for P ~ N(Xi, sigma^2).
double bump(double x, double Xi, double sigma);
double bump_prime(double x, double Xi, double sigma);
double bump_double_prime(double x, double Xi, double sigma);

double u_plus(double t, Vec2 x, const SuperSolutionSpec& spec);
Vec2 grad_u_plus(double t, Vec2 x, const SuperSolutionSpec& spec);
double laplacian_u_plus(double t, Vec2 x, const SuperSolutionSpec& spec);
double dt_u_plus(double t, Vec2 x, const SuperSolutionSpec& spec);

/// Pointwise PDE residual d_t u+ + H(grad u+, x) - Lap u+ using the true
/// c_omega; nonnegativity (up to the distance-transform slack) certifies the
/// supersolution numerically.
double residual_plus(double t, Vec2 x, const SuperSolutionSpec& spec,
                     const Environment& env);

/// Case regions of the verification, split at |x_i - X_i| = sqrt(2) sigma_i.
/// The measure-zero seam is assigned to the case with the weaker bound.
enum class ResidualCase { case1 = 1, case2 = 2, case3 = 3, case4 = 4 };
ResidualCase classify_case(Vec2 x, const SuperSolutionSpec& spec);

/// Analytic lower bound for the residual in the case region containing x,
/// using only c in [-1/2, 1/2] plus c = -1/2 inside the complete rectangle:
///   case 1: eta - 4/lambda          case 2: eta - 8/lambda
///   case 3: eta - 4/lambda - 4/mu   case 4: eta - 8/lambda - 4/mu
double residual_plus_case_bound(double t, Vec2 x,
                                const SuperSolutionSpec& spec);
double case_bound(ResidualCase c, const SuperSolutionSpec& spec);

/// Mirrored subsolution u-(t,x) = -u+(t, x_hat) with x_hat = (x2, -x1).
double u_minus(double t, Vec2 x, const SuperSolutionSpec& spec);
Vec2 grad_u_minus(double t, Vec2 x, const SuperSolutionSpec& spec);

/// d_t u- + H(grad u-, x, omega_2) - Lap u- on the rotated environment;
/// equals -residual_plus(t, x_hat) up to the distance-transform slack and
/// must be <= 0 (subsolution).
double residual_minus(double t, Vec2 x, const SuperSolutionSpec& spec,
                      const Environment& rotated_env);

}  // namespace hjhom
