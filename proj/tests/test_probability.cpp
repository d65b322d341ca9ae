#include <doctest.h>

#include <cmath>

#include "hjhom/probability.hpp"

using namespace hjhom;

TEST_CASE("p_ck_lower: frozen values, limits, monotonicity") {
  // 1 - (1 - 1/256)^64, frozen from direct evaluation
  CHECK(p_ck_lower(4, 0.5) == doctest::Approx(0.2215804).epsilon(1e-6));
  // floor(delta * T_k) = 0 kills the exponent
  CHECK(p_ck_lower(1, 0.4) == 0.0);
  CHECK_THROWS_AS(p_ck_lower(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(p_ck_lower(3, 0.0), std::invalid_argument);

  // large-k limit 1 - e^{-delta^2}
  CHECK(std::fabs(p_ck_lower(20, 0.5) - (-std::expm1(-0.25))) <= 1e-3);

  // nondecreasing in delta, all values in [0, 1]
  double prev = 0.0;
  for (double d = 0.05; d <= 2.0; d += 0.05) {
    const double v = p_ck_lower(5, d);
    CHECK(v >= prev - 1e-15);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("lattice point counts in Euclidean disks") {
  CHECK(lattice_points_in_disk(0) == 1);
  CHECK(lattice_points_in_disk(1) == 5);
  CHECK(lattice_points_in_disk(2) == 13);
  CHECK(lattice_points_in_disk(4) == 49);
  // exact disk probability uses that count
  const double expect = -std::expm1(49.0 * std::log1p(-1.0 / 64.0));
  CHECK(p_ck_exact_disk(3, 0.5) == doctest::Approx(expect));
}

TEST_CASE("p_dk_given_ck_lower: convergence and range") {
  EnvParams p;
  p.lambda = 1.0;
  p.mu = 1.0;
  p.k_max = 30;
  p.validate(false);
  const double v30 = p_dk_given_ck_lower(1, p);
  CHECK(v30 > 0.0);
  CHECK(v30 <= 1.0);
  p.k_max = 60;
  const double v60 = p_dk_given_ck_lower(1, p);
  CHECK(std::fabs(v60 - v30) < 1e-6);  // doubling the cutoff changes nothing

  // log of the product tends to -2 lambda^2 (within 5% at k = 12, lambda = 1)
  p.k_max = 60;
  const double lg = std::log(p_dk_given_ck_lower(12, p));
  CHECK(std::fabs(lg - (-2.0)) <= 0.05 * 2.0);
}

TEST_CASE("liminf lower bound") {
  CHECK(liminf_lower(1.0, 1.0) == doctest::Approx(0.0855482).epsilon(1e-5));
  CHECK(liminf_lower(1.0, 1.0) > 0.0);
  CHECK(liminf_lower(1e-6, 1.0) < 1e-11);
  CHECK_THROWS_AS(liminf_lower(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(liminf_lower(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("Monte Carlo event frequencies") {
  EventQuery q;
  q.k = 3;
  q.delta = 0.5;
  q.trials = 10000;
  q.params.lambda = 1.0;
  q.params.mu = 1.0;
  q.params.seed = 2718;

  const McEstimate est = mc_estimate(q);
  CHECK(est.trials == q.trials);
  // the geometric C_k event has an exact closed form; MC agrees within 3 SE
  CHECK(std::fabs(est.freq_ck - est.exact_ck) <= 3.0 * est.se_ck);
  // B_k implies C_k
  CHECK(est.freq_bk <= est.freq_ck);
  // one-sided: the closed forms are lower bounds on the true probability
  CHECK(est.freq_bk >= est.closed_form_lower - 3.0 * est.se_bk);
  for (double v : {est.freq_bk, est.freq_ck, est.exact_ck,
                   est.closed_form_lower, est.truncation_bound}) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  const std::string csv = mc_estimate_csv(q, est);
  CHECK(csv.rfind("k,delta,lambda,mu,trials,mc_freq,mc_se,closed_form_lower,"
                  "truncation_bound\n",
                  0) == 0);
  CHECK(csv.find("3,0.5,1,1,10000,") != std::string::npos);

  EventQuery bad = q;
  bad.trials = 0;
  CHECK_THROWS_AS(mc_estimate(bad), std::invalid_argument);
}
