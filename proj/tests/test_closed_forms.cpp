#include <doctest.h>

#include <cmath>
#include <random>

#include "hjhom/closed_forms.hpp"
#include "hjhom/environment.hpp"
#include "hjhom/special_functions.hpp"

using namespace hjhom;

namespace {

EnvParams default_params() {
  EnvParams p;  // lambda = mu = 40, eta = 0.4
  return p;
}

SuperSolutionSpec make_spec(int k = 2, Vec2 X = {0, 0}) {
  return SuperSolutionSpec(X, k, default_params());
}

}  // namespace

TEST_CASE("error function accuracy against the standard library") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (int i = 0; i < 100000; ++i) {
    const double x = u(rng);
    CHECK(std::fabs(erf_cody(x) - std::erf(x)) <= 1e-12);
  }
  CHECK(erf_cody(0.0) == 0.0);
  CHECK(erf_cody(10.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(erf_cody(-10.0) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("spec construction and validation") {
  const auto spec = make_spec(3);
  CHECK(spec.sigma1 == doctest::Approx(40.0 * 8.0 / std::sqrt(2.0)));
  CHECK(spec.sigma2 == doctest::Approx(40.0 / std::sqrt(2.0)));
  CHECK(spec.t_horizon() == 8.0);
  EnvParams bad = default_params();
  bad.lambda = 20.0;
  CHECK_THROWS_AS(SuperSolutionSpec({0, 0}, 3, bad), std::invalid_argument);
  CHECK_THROWS_AS(SuperSolutionSpec({0, 0}, 0, default_params()),
                  std::invalid_argument);
}

TEST_CASE("bump function: sign, center, outer growth") {
  const auto spec = make_spec(2);
  const double lTk = spec.lambda * dyadic_scale(spec.k);
  CHECK(bump(5.0, 5.0, spec.sigma1) == 0.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-4.0 * lTk, 4.0 * lTk);
  for (int i = 0; i < 100000; ++i) {
    const double x = u(rng);
    CHECK(bump(x, 0.0, spec.sigma1) >= 0.0);
    if (std::fabs(x) > lTk) CHECK(bump(x, 0.0, spec.sigma1) >= lTk / 2.0);
  }
}

TEST_CASE("bump derivatives: center value, global bound, outer slope") {
  const auto spec = make_spec(2);
  CHECK(bump_prime(1.0, 1.0, spec.sigma2) == 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-300.0, 300.0);
  const double s2 = std::sqrt(2.0) * spec.sigma2;
  for (int i = 0; i < 100000; ++i) {
    const double x = u(rng);
    const double d1 = bump_prime(x, 0.0, spec.sigma2);
    CHECK(std::fabs(d1) <= 2.0);
    if (std::fabs(x) > s2) CHECK(std::fabs(d1) >= 1.0);
  }
}

TEST_CASE("bump derivatives agree with finite differences") {
  const auto spec = make_spec(3);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-500.0, 500.0);
  const double step = 1e-5;
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng);
    for (double sigma : {spec.sigma1, spec.sigma2}) {
      const double fd1 =
          (bump(x + step, 0.0, sigma) - bump(x - step, 0.0, sigma)) / (2.0 * step);
      CHECK(std::fabs(bump_prime(x, 0.0, sigma) - fd1) <= 1e-6);
      const double fd2 = (bump_prime(x + step, 0.0, sigma) -
                          bump_prime(x - step, 0.0, sigma)) /
                         (2.0 * step);
      CHECK(std::fabs(bump_double_prime(x, 0.0, sigma) - fd2) <= 1e-6);
    }
  }
}

TEST_CASE("bump_prime is increasing inside, decreasing outside") {
  const auto spec = make_spec(2);
  const double edge = std::sqrt(2.0) * spec.sigma2;  // = mu
  double prev_in = bump_prime(-edge + 1e-9, 0.0, spec.sigma2);
  for (double x = -edge + 0.05; x < edge; x += 0.05) {
    const double v = bump_prime(x, 0.0, spec.sigma2);
    CHECK(v >= prev_in);
    prev_in = v;
  }
  double prev_out = bump_prime(edge, 0.0, spec.sigma2);
  for (double x = edge + 0.05; x < 6.0 * edge; x += 0.05) {
    const double v = bump_prime(x, 0.0, spec.sigma2);
    CHECK(v <= prev_out + 1e-15);
    prev_out = v;
  }
}

TEST_CASE("u_plus values and derivative formulas") {
  const auto spec = make_spec(3, {2, -1});
  const double Tk = spec.t_horizon();

  CHECK(u_plus(0.0, spec.X, spec) == 0.0);
  const auto origin_spec = make_spec(3, {0, 0});
  CHECK(u_plus(Tk, {0, 0}, origin_spec) ==
        doctest::Approx(Tk * (-0.5 + origin_spec.eta)));

  CHECK_THROWS_AS(u_plus(-0.1, {0, 0}, spec), std::invalid_argument);
  CHECK_THROWS_AS(u_plus(Tk + 0.1, {0, 0}, spec), std::invalid_argument);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(0.0, Tk);
  std::uniform_real_distribution<double> ux(-1000.0, 1000.0);
  const double step = 1e-5;
  for (int i = 0; i < 10000; ++i) {
    const double t = ut(rng);
    const Vec2 x{ux(rng), ux(rng)};
    const Vec2 g = grad_u_plus(t, x, spec);

    // finite-difference cross-checks of all derivative formulas
    const double fdx =
        (u_plus(t, {x.x + step, x.y}, spec) - u_plus(t, {x.x - step, x.y}, spec)) /
        (2.0 * step);
    const double fdy =
        (u_plus(t, {x.x, x.y + step}, spec) - u_plus(t, {x.x, x.y - step}, spec)) /
        (2.0 * step);
    CHECK(std::fabs(g.x - fdx) <= 1e-6);
    CHECK(std::fabs(g.y - fdy) <= 1e-6);
    if (t > step && t < Tk - step) {
      const double fdt =
          (u_plus(t + step, x, spec) - u_plus(t - step, x, spec)) / (2.0 * step);
      CHECK(std::fabs(dt_u_plus(t, x, spec) - fdt) <= 1e-6);
    }
    const double fdxx = (grad_u_plus(t, {x.x + step, x.y}, spec).x -
                         grad_u_plus(t, {x.x - step, x.y}, spec).x) /
                        (2.0 * step);
    const double fdyy = (grad_u_plus(t, {x.x, x.y + step}, spec).y -
                         grad_u_plus(t, {x.x, x.y - step}, spec).y) /
                        (2.0 * step);
    CHECK(std::fabs(laplacian_u_plus(t, x, spec) - (fdxx + fdyy)) <= 1e-6);

    // the four global derivative bounds
    CHECK(std::max(std::fabs(g.x), std::fabs(g.y)) <= 2.0);
    CHECK(dt_u_plus(t, x, spec) >= -0.5 + spec.eta - 1e-15);
    CHECK(std::fabs(g.x) <= 4.0 / spec.lambda + 1e-15);
    const double lTk = spec.lambda * dyadic_scale(spec.k);
    const double uxx = 2.0 * t * bump_double_prime(x.x, spec.X.x, spec.sigma1) / lTk;
    const double uyy = bump_double_prime(x.y, spec.X.y, spec.sigma2);
    CHECK(uxx <= 4.0 / spec.lambda + 1e-15);
    CHECK(uyy <= 4.0 / spec.mu + 1e-15);

    // regional sharpenings
    if (std::fabs(x.x - spec.X.x) > std::sqrt(2.0) * spec.sigma1) {
      CHECK(dt_u_plus(t, x, spec) >= 0.5 + spec.eta - 1e-12);
      CHECK(uxx <= 1e-15);
    }
    if (std::fabs(x.y - spec.X.y) > std::sqrt(2.0) * spec.sigma2) {
      CHECK(uyy <= 1e-15);
      CHECK(std::fabs(g.y) >= 1.0);
    }
  }
}

TEST_CASE("case classification and bounds") {
  const auto spec = make_spec(2);
  const double a1 = std::sqrt(2.0) * spec.sigma1;  // lambda * T_k = 160
  const double a2 = std::sqrt(2.0) * spec.sigma2;  // mu = 40

  CHECK(classify_case({a1 + 1, a2 + 1}, spec) == ResidualCase::case1);
  CHECK(classify_case({0, a2 + 1}, spec) == ResidualCase::case2);
  CHECK(classify_case({a1 + 1, 0}, spec) == ResidualCase::case3);
  CHECK(classify_case({0, 0}, spec) == ResidualCase::case4);
  // seams belong to the inside case (the weaker bound)
  CHECK(classify_case({a1, a2}, spec) == ResidualCase::case4);
  CHECK(classify_case({a1, a2 + 1}, spec) == ResidualCase::case2);
  CHECK(classify_case({a1 + 1, a2}, spec) == ResidualCase::case3);

  CHECK(case_bound(ResidualCase::case1, spec) == doctest::Approx(0.3));
  CHECK(case_bound(ResidualCase::case2, spec) == doctest::Approx(0.2));
  CHECK(case_bound(ResidualCase::case3, spec) == doctest::Approx(0.2));
  CHECK(case_bound(ResidualCase::case4, spec) == doctest::Approx(0.1));
  CHECK(residual_plus_case_bound(1.0, {0, 0}, spec) == doctest::Approx(0.1));
}

TEST_CASE("residuals on a lone planted rectangle") {
  EnvParams p = default_params();
  p.k_max = 2;
  const int k = 2;
  const auto spec = make_spec(k);
  const double a1 = std::sqrt(2.0) * spec.sigma1;
  const double a2 = std::sqrt(2.0) * spec.sigma2;
  const Box w = Box::centered({0, 0}, a1 + 25, a2 + 25);
  const Rectangle rect(Orientation::horizontal, k, 0, 0, p);
  const Environment env = Environment::from_rectangles(p, w, {rect});
  const Environment rot = rotate_environment(env);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ut(0.0, spec.t_horizon());
  std::uniform_real_distribution<double> u1(-a1 - 20, a1 + 20);
  std::uniform_real_distribution<double> u2(-a2 - 20, a2 + 20);
  const double slack = 2.0 * p.env_grid_h;
  double max_minus = -1e300;
  for (int i = 0; i < 20000; ++i) {
    const double t = ut(rng);
    const Vec2 x{u1(rng), u2(rng)};
    const double rp = residual_plus(t, x, spec, env);
    const double bound = residual_plus_case_bound(t, x, spec);
    CHECK(rp >= bound - slack);
    CHECK(rp >= -slack);  // supersolution up to the grid slack

    // the mirrored subsolution: residual_minus(t, y) = -residual_plus(t, y_hat)
    const Vec2 y{-x.y, x.x};  // so that hat(y) = x
    const double rm = residual_minus(t, y, spec, rot);
    CHECK(std::fabs(rm + rp) <= 4.0 * p.env_grid_h);
    max_minus = std::max(max_minus, rm);
  }
  CHECK(max_minus <= 4.0 * p.env_grid_h);
}

TEST_CASE("u_minus mirror identities") {
  const auto spec = make_spec(2, {0, 0});
  CHECK(u_minus(0.0, {0, 0}, spec) == 0.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ut(0.0, spec.t_horizon());
  std::uniform_real_distribution<double> ux(-200.0, 200.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = ut(rng);
    const Vec2 x{ux(rng), ux(rng)};
    CHECK(u_minus(t, x, spec) == -u_plus(t, hat(x), spec));
    const Vec2 gm = grad_u_minus(t, x, spec);
    const Vec2 gp = grad_u_plus(t, hat(x), spec);
    CHECK(gm.x == gp.y);
    CHECK(gm.y == -gp.x);
  }
}
