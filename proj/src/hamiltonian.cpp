#include "hjhom/hamiltonian.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hjhom {

double kinetic(Vec2 p, double q) {
  const double pinf = std::max(std::fabs(p.x), std::fabs(p.y));
  const double excess = std::max(pinf - 2.0, 0.0);
  const double growth = excess > 0.0 ? std::pow(excess, q) : 0.0;
  return std::fabs(p.y) - std::fabs(p.x) + growth;
}

double hamiltonian(Vec2 p, Vec2 x, const HamiltonianParams& hp) {
  if (hp.env == nullptr)
    throw std::invalid_argument("hamiltonian: no environment attached");
  return -hp.env->c_value(x) + kinetic(p, hp.q);
}

AssumptionReport check_assumptions(const HamiltonianParams& hp,
                                   int sample_count) {
  if (sample_count < 1)
    throw std::invalid_argument("sample_count must be >= 1");
  AssumptionReport report;

  // Coercivity: x-dependence is bounded (|c| <= 1/2), so it is enough to
  // check the kinetic part shifted by the worst-case -1/2.
  const double radii[] = {4.0, 8.0, 16.0, 32.0};
  for (double r : radii) {
    double mn = std::numeric_limits<double>::infinity();
    for (int i = 0; i < sample_count; ++i) {
      const double a = 2.0 * M_PI * i / sample_count;
      mn = std::min(mn, kinetic({r * std::cos(a), r * std::sin(a)}, hp.q) - 0.5);
    }
    report.growth_ratios.push_back(mn / r);
  }
  report.superlinear_ok = true;
  for (size_t i = 1; i < report.growth_ratios.size(); ++i) {
    if (report.growth_ratios[i] <= report.growth_ratios[i - 1]) {
      report.superlinear_ok = false;
      std::ostringstream w;
      w << "growth ratio not increasing at R=" << radii[i];
      report.witness = w.str();
    }
  }

  // Per-axis Lipschitz constant on ||p||_inf <= 2 is exactly 1: the growth
  // term is inactive and each axis contributes |.| with slope +-1.
  report.lipschitz_ok = true;
  const double step = 1e-6;
  for (int i = 0; i < sample_count && report.lipschitz_ok; ++i) {
    // stay away from the axes so the finite difference sees a single slope
    const double px = 0.1 + 1.8 * (i % 89) / 89.0;
    const double py = 0.1 + 1.8 * (i % 97) / 97.0;
    for (int sx : {-1, 1}) {
      for (int sy : {-1, 1}) {
        const Vec2 p{sx * px, sy * py};
        const double d1 = (kinetic({p.x + step, p.y}, hp.q) -
                           kinetic({p.x - step, p.y}, hp.q)) / (2.0 * step);
        const double d2 = (kinetic({p.x, p.y + step}, hp.q) -
                           kinetic({p.x, p.y - step}, hp.q)) / (2.0 * step);
        if (std::fabs(std::fabs(d1) - 1.0) > 1e-9 ||
            std::fabs(std::fabs(d2) - 1.0) > 1e-9) {
          report.lipschitz_ok = false;
          std::ostringstream w;
          w << "per-axis slope differs from 1 at p=(" << p.x << "," << p.y
            << ")";
          report.witness = w.str();
        }
      }
    }
  }
  return report;
}

}  // namespace hjhom
