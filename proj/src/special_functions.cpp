#include "hjhom/special_functions.hpp"

#include <cmath>

namespace hjhom {

namespace {

// Coefficients from W. J. Cody, "Rational Chebyshev approximation for the
// error function", Math. Comp. 23 (1969), 631-637, as used in CALERF/NETLIB.
// Three regimes: |x| <= 0.46875, 0.46875 < |x| <= 4, |x| > 4.

constexpr double kA[5] = {3.16112374387056560e+00, 1.13864154151050156e+02,
                          3.77485237685302021e+02, 3.20937758913846947e+03,
                          1.85777706184603153e-01};
constexpr double kB[4] = {2.36012909523441209e+01, 2.44024637934444173e+02,
                          1.28261652607737228e+03, 2.84423683343917062e+03};

constexpr double kC[9] = {5.64188496988670089e-01, 8.88314979438837594e+00,
                          6.61191906371416295e+01, 2.98635138197400131e+02,
                          8.81952221241769090e+02, 1.71204761263407058e+03,
                          2.05107837782607147e+03, 1.23033935479799725e+03,
                          2.15311535474403846e-08};
constexpr double kD[8] = {1.57449261107098347e+01, 1.17693950891312499e+02,
                          5.37181101862009858e+02, 1.62138957456669019e+03,
                          3.29079923573345963e+03, 4.36261909014324716e+03,
                          3.43936767414372164e+03, 1.23033935480374942e+03};

constexpr double kP[6] = {3.05326634961232344e-01, 3.60344899949804439e-01,
                          1.25781726111229246e-01, 1.60837851487422766e-02,
                          6.58749161529837803e-04, 1.63153871373020978e-02};
constexpr double kQ[5] = {2.56852019228982242e+00, 1.87295284992346047e+00,
                          5.27905102951428412e-01, 6.05183413124413191e-02,
                          2.33520497626869185e-03};

constexpr double kSqrtPiInv = 5.64189583547756287e-01;  // 1/sqrt(pi)

// erfc for x >= 0.46875.
double erfc_positive(double x) {
  double result;
  if (x <= 4.0) {
    double num = kC[8] * x;
    double den = x;
    for (int i = 0; i < 7; ++i) {
      num = (num + kC[i]) * x;
      den = (den + kD[i]) * x;
    }
    result = (num + kC[7]) / (den + kD[7]);
  } else {
    const double xsq = 1.0 / (x * x);
    double num = kP[5] * xsq;
    double den = xsq;
    for (int i = 0; i < 4; ++i) {
      num = (num + kP[i]) * xsq;
      den = (den + kQ[i]) * xsq;
    }
    result = xsq * (num + kP[4]) / (den + kQ[4]);
    result = (kSqrtPiInv - result) / x;
  }
  // exp(-x^2) split to preserve accuracy for large x
  const double xtrunc = std::trunc(x * 16.0) / 16.0;
  const double del = (x - xtrunc) * (x + xtrunc);
  return std::exp(-xtrunc * xtrunc) * std::exp(-del) * result;
}

}  // namespace

double erf_cody(double x) {
  const double ax = std::fabs(x);
  if (ax <= 0.46875) {
    const double xsq = ax > 1.11e-16 ? x * x : 0.0;
    double num = kA[4] * xsq;
    double den = xsq;
    for (int i = 0; i < 3; ++i) {
      num = (num + kA[i]) * xsq;
      den = (den + kB[i]) * xsq;
    }
    return x * (num + kA[3]) / (den + kB[3]);
  }
  const double e = erfc_positive(ax);
  return x > 0.0 ? 1.0 - e : e - 1.0;
}

double erfc_cody(double x) {
  const double ax = std::fabs(x);
  if (ax <= 0.46875) return 1.0 - erf_cody(x);
  const double e = erfc_positive(ax);
  return x > 0.0 ? e : 2.0 - e;
}

double normal_pdf(double x, double mean, double sigma) {
  const double z = (x - mean) / sigma;
  constexpr double kInvSqrt2Pi = 0.3989422804014326779;
  return kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z);
}

double normal_cdf_diff(double x, double mean, double sigma) {
  constexpr double kInvSqrt2 = 0.7071067811865475244;
  return erf_cody((x - mean) / sigma * kInvSqrt2);
}

}  // namespace hjhom
