#pragma once

namespace hjhom {

/// Error function, rational approximation after W. J. Cody (Math. Comp. 23,
/// 1969).  Absolute error below 1e-15 on the real line, comfortably inside
/// the 1e-12 budget the closed-form verification assumes.
double erf_cody(double x);

/// Complementary error function, same approximation family.
double erfc_cody(double x);

/// Density of a normal with mean `mean` and standard deviation `sigma`.
double normal_pdf(double x, double mean, double sigma);

/// P(N(mean, sigma^2) < x) - P(N(mean, sigma^2) > x)  ==  erf((x-mean)/(sigma*sqrt(2))).
double normal_cdf_diff(double x, double mean, double sigma);

}  // namespace hjhom
