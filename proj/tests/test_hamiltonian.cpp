#include <doctest.h>

#include <cmath>
#include <random>

#include "hjhom/environment.hpp"
#include "hjhom/hamiltonian.hpp"

using namespace hjhom;

TEST_CASE("kinetic part: closed-form examples") {
  CHECK(kinetic({0, 0}, 2.0) == 0.0);
  CHECK(kinetic({3, 0}, 2.0) == doctest::Approx(-2.0));  // |0|-|3|+1^2
  CHECK(kinetic({0, 3}, 2.0) == doctest::Approx(4.0));   // |3|-|0|+1^2
  CHECK(kinetic({1, 1}, 2.0) == doctest::Approx(0.0));
  CHECK(kinetic({0, 4}, 1.5) == doctest::Approx(4.0 + std::pow(2.0, 1.5)));
}

TEST_CASE("kinetic part: antisymmetry under the quarter turn on small gradients") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const Vec2 p{u(rng), u(rng)};
    CHECK(kinetic(hat(p), 2.0) == doctest::Approx(-kinetic(p, 2.0)).epsilon(1e-15));
  }
}

TEST_CASE("hamiltonian: separated form and deep-interior value") {
  EnvParams params;
  params.seed = 5;
  params.k_max = 2;
  const Box w{-120, -60, 120, 60};
  const PlantSpec plants =
      plant_complete_rectangle(params, w, Orientation::horizontal, 2, 0, 0);
  const Environment env(params, w, plants);
  const HamiltonianParams hp{params.q, &env};

  // deep inside the complete horizontal rectangle: c = -1/2, so H(0, x) = +1/2
  CHECK(hamiltonian({0, 0}, {0, 0}, hp) ==
        doctest::Approx(0.5).epsilon(2.0 * params.env_grid_h));

  // H(p, x) + c(x) depends only on p, exactly
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> up(-3.0, 3.0);
  std::uniform_real_distribution<double> ux(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 p{up(rng), up(rng)};
    const Vec2 x1{ux(rng), ux(rng)}, x2{ux(rng), ux(rng)};
    const double s1 = hamiltonian(p, x1, hp) + env.c_value(x1);
    const double s2 = hamiltonian(p, x2, hp) + env.c_value(x2);
    // both equal kinetic(p, q) up to the one rounding in (kin - c) + c
    CHECK(s1 == doctest::Approx(s2).epsilon(1e-14));
    // coercivity floor
    const double pinf = std::max(std::fabs(p.x), std::fabs(p.y));
    CHECK(hamiltonian(p, x1, hp) >=
          std::pow(std::max(pinf - 2.0, 0.0), params.q) - pinf - 0.5 - 1e-12);
  }
}

TEST_CASE("structural assumption checks") {
  EnvParams params;
  params.k_max = 1;
  const Box w{-50, -50, 50, 50};
  const Environment env = Environment::from_rectangles(params, w, {});
  const HamiltonianParams hp{params.q, &env};
  const AssumptionReport report = check_assumptions(hp, 512);
  CHECK(report.superlinear_ok);
  CHECK(report.lipschitz_ok);
  CHECK(report.ok());
  REQUIRE(report.growth_ratios.size() == 4);
  for (size_t i = 1; i < report.growth_ratios.size(); ++i)
    CHECK(report.growth_ratios[i] > report.growth_ratios[i - 1]);
  CHECK_THROWS_AS(check_assumptions(hp, 0), std::invalid_argument);
}
