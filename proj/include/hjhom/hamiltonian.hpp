#pragma once

#include <string>
#include <vector>

#include "hjhom/environment.hpp"
#include "hjhom/geometry.hpp"

namespace hjhom {

struct HamiltonianParams {
  double q = 2.0;  // > 1
  const Environment* env = nullptr;
};

/// |p2| - |p1| + max(||p||_inf - 2, 0)^q.  On ||p||_inf <= 2 this is
/// antisymmetric under p -> p_hat = (p2, -p1).
double kinetic(Vec2 p, double q);

/// H(p, x, omega) = -c_omega(x) + kinetic(p, q).
double hamiltonian(Vec2 p, Vec2 x, const HamiltonianParams& hp);

struct AssumptionReport {
  bool superlinear_ok = false;
  bool lipschitz_ok = false;
  std::vector<double> growth_ratios;  // min H / R on circles R = 4, 8, 16, 32
  std::string witness;                // first violated check, if any
  bool ok() const { return superlinear_ok && lipschitz_ok; }
};

/// Samples p on circles of radius 4, 8, 16, 32 and checks that min H / R is
/// increasing (superlinear growth); checks by finite differences that the
/// per-axis Lipschitz constant on ||p||_inf <= 2 equals 1 within 1e-9.
AssumptionReport check_assumptions(const HamiltonianParams& hp,
                                   int sample_count);

}  // namespace hjhom
