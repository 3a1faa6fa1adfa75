#pragma once

#include <string>
#include <vector>

#include "trigmoment/gap_analysis.hpp"

namespace trigmoment {

/// N = 3, d = 1 reference problem with S_0 = [[1,1,0],[1,1,0],[0,0,1]] and
/// S_1 = [[1,1,0],[1,1,0],[0,0,0]]. Its solutions with no mass on the upper
/// half circle are parameterized by F with F - zeta^{-2} invertible on the
/// lower half circle.
MomentSequence example21_moments();

/// Closed-form transform of the solution for the scalar parameter value F at
/// zeta, written for dM^T (entries 1/(1-zeta) and 1 + zeta^2 F/(1 - zeta^2 F)).
CMatrix example21_transform(Complex zeta, Complex f);

struct GoldenCheck {
  std::string name;
  bool pass = false;
  double error = 0.0;  // largest deviation found (0 for exact integer checks)
};

/// Runs the reference problem through the whole pipeline and compares every
/// intermediate quantity with its closed form.
std::vector<GoldenCheck> run_example21_checks();

}  // namespace trigmoment
