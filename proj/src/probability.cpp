#include "hjhom/probability.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hjhom {

namespace {

std::uint64_t trial_seed(std::uint64_t base, int trial) {
  std::uint64_t z = base + 0x632be59bd9b4e019ULL * (std::uint64_t(trial) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double p_ck_lower(int k, double delta) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (delta <= 0.0) throw std::invalid_argument("delta must be positive");
  const double Tk = dyadic_scale(k);
  const double D = std::floor(delta * Tk);
  if (D < 1.0) return 0.0;
  // 1 - (1 - T_k^{-2})^{D^2}, evaluated in log space
  return -std::expm1(D * D * std::log1p(-std::ldexp(1.0, -2 * k)));
}

long lattice_points_in_disk(long r) {
  long count = 0;
  for (long l = -r; l <= r; ++l) {
    const long rem = r * r - l * l;
    count += 2 * long(std::floor(std::sqrt(double(rem)))) + 1;
  }
  return count;
}

double p_ck_exact_disk(int k, double delta) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const double Tk = dyadic_scale(k);
  const long D = long(std::floor(delta * Tk));
  if (D < 0) return 0.0;
  const long n = lattice_points_in_disk(D);
  return -std::expm1(double(n) * std::log1p(-std::ldexp(1.0, -2 * k)));
}

double p_dk_given_ck_lower(int k, const EnvParams& params) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const double base = params.lambda * dyadic_scale(k) + params.mu + 2.0;
  double log_prod = 0.0;
  for (int kp = k; kp <= params.k_max; ++kp) {
    const double exponent =
        (params.lambda * dyadic_scale(kp) + params.mu + 2.0) * base;
    log_prod += exponent * std::log1p(-std::ldexp(1.0, -2 * kp));
  }
  // tail of the ignored scales, using -log(1-x) <= 2x
  const int K = params.k_max;
  const double tail_sum =
      base * (params.lambda * std::ldexp(1.0, -K) +
              (params.mu + 2.0) * std::ldexp(1.0, -2 * K) / 3.0);
  return std::exp(log_prod - 2.0 * tail_sum);
}

double liminf_lower(double delta, double lambda) {
  if (delta <= 0.0 || lambda <= 0.0)
    throw std::invalid_argument("delta and lambda must be positive");
  return -std::expm1(-delta * delta) * std::exp(-2.0 * lambda * lambda);
}

McEstimate mc_estimate(const EventQuery& query) {
  if (query.trials < 1) throw std::invalid_argument("trials must be >= 1");
  EnvParams params = query.params;
  if (params.k_max < query.k + query.k_margin)
    params.k_max = query.k + query.k_margin;
  params.validate(/*require_min_lambda_mu=*/false);

  const double Tk = dyadic_scale(query.k);
  const double D = std::floor(query.delta * Tk);
  const double hl = params.rect_length(query.k) / 2.0;
  const double hw = params.rect_width() / 2.0;
  // window covering every candidate rectangle, so completeness is checked
  // against all sampled rectangles that could intersect one
  const Box window{-D - hl, -D - hw, D + hl, D + hw};

  McEstimate est;
  est.trials = query.trials;
  int hits_bk = 0, hits_ck = 0;
  for (int trial = 0; trial < query.trials; ++trial) {
    EnvParams p = params;
    p.seed = trial_seed(params.seed, trial);
    Environment env(p, window, {}, /*require_min_lambda_mu=*/false);
    bool ck = false, bk = false;
    for (const Rectangle& r : env.rectangles()) {
      if (r.orientation != Orientation::horizontal || r.k != query.k) continue;
      if (double(r.l) * r.l + double(r.m) * r.m > D * D) continue;
      ck = true;
      if (env.is_complete(r)) {
        bk = true;
        break;
      }
    }
    hits_ck += ck ? 1 : 0;
    hits_bk += bk ? 1 : 0;
  }
  const double n = double(query.trials);
  est.freq_bk = hits_bk / n;
  est.freq_ck = hits_ck / n;
  est.se_bk = std::sqrt(std::max(est.freq_bk * (1.0 - est.freq_bk), 1e-12) / n);
  est.se_ck = std::sqrt(std::max(est.freq_ck * (1.0 - est.freq_ck), 1e-12) / n);
  est.exact_ck = p_ck_exact_disk(query.k, query.delta);
  est.closed_form_lower =
      p_ck_lower(query.k, query.delta) * p_dk_given_ck_lower(query.k, params);

  // probability mass of opposite rectangles at ignored scales > k_max that
  // could cross a candidate (crude union bound, reported as conditioning
  // error of the truncation)
  const double basek = params.lambda * Tk + params.mu + 2.0;
  est.truncation_bound = std::min(
      1.0, 2.0 * basek *
               (params.lambda * std::ldexp(1.0, -params.k_max) +
                (params.mu + 2.0) * std::ldexp(1.0, -2 * params.k_max) / 3.0));
  return est;
}

std::string mc_estimate_csv(const EventQuery& query, const McEstimate& e) {
  std::ostringstream out;
  out.precision(10);
  out << "k,delta,lambda,mu,trials,mc_freq,mc_se,closed_form_lower,"
         "truncation_bound\n";
  out << query.k << ',' << query.delta << ',' << query.params.lambda << ','
      << query.params.mu << ',' << e.trials << ',' << e.freq_bk << ','
      << e.se_bk << ',' << e.closed_form_lower << ',' << e.truncation_bound
      << '\n';
  return out.str();
}

}  // namespace hjhom
