#pragma once

#include <cstdint>
#include <string>

#include "hjhom/environment.hpp"

namespace hjhom {

/// Lower bound on P(C_k), the event that a scale-k horizontal center was
/// selected near the origin:  1 - (1 - T_k^{-2})^{floor(delta T_k)^2}.
double p_ck_lower(int k, double delta);

/// Exact probability that at least one lattice point within Euclidean
/// distance floor(delta T_k) of the origin is selected at scale k; this is
/// the probability of the geometric event the Monte Carlo estimator tests.
double p_ck_exact_disk(int k, double delta);

/// Number of lattice points (l, m) with l^2 + m^2 <= r^2.
long lattice_points_in_disk(long r);

/// Lower bound on P(D_k | C_k): the product over k' in [k, k_max] of
/// (1 - T_k'^{-2})^{(lambda T_k' + mu + 2)(lambda T_k + mu + 2)}, multiplied
/// by a rigorous tail bound exp(-2 sum_{k' > k_max} ...) for the ignored
/// scales (valid since -log(1-x) <= 2x for x <= 1/2).
double p_dk_given_ck_lower(int k, const EnvParams& params);

/// (1 - e^{-delta^2}) e^{-2 lambda^2}, the liminf lower bound for P(B_k).
double liminf_lower(double delta, double lambda);

struct EventQuery {
  int k = 3;
  double delta = 0.5;
  EnvParams params;
  int trials = 10000;
  int k_margin = 6;  // completeness is checked against scales <= k + margin
};

struct McEstimate {
  int trials = 0;
  double freq_bk = 0.0;     // complete rectangle near origin
  double freq_ck = 0.0;     // any rectangle center near origin (geometric)
  double se_bk = 0.0;       // binomial standard error
  double se_ck = 0.0;
  double exact_ck = 0.0;    // closed form for the geometric C_k event
  double closed_form_lower = 0.0;  // p_ck_lower * p_dk_given_ck_lower
  double truncation_bound = 0.0;   // probability mass of ignored scales
};

/// Monte Carlo estimate of the events of the nearby-complete-rectangle
/// analysis.  Each trial samples a fresh environment from a derived seed and
/// tests the literal event: a complete horizontal rectangle of scale k whose
/// center lies within Euclidean distance floor(delta T_k) of the origin.
McEstimate mc_estimate(const EventQuery& query);

/// CSV row set: k,delta,lambda,mu,trials,mc_freq,mc_se,closed_form_lower,truncation_bound.
std::string mc_estimate_csv(const EventQuery& query, const McEstimate& e);

}  // namespace hjhom
