#pragma once

#include <cstdint>

#include "trigmoment/random_measure.hpp"

namespace trigmoment {

struct RoundtripReport {
  int atoms = 0;
  int N = 0;
  int d = 0;
  std::uint64_t seed = 0;
  int rank = 0;
  int delta = 0;
  double moment_residual = 0.0;     // max over n of |S_n(solution) - S_n|
  double transform_residual = 0.0;  // resolvent form against atomic sum
  double weight_residual = 0.0;     // |sum of weights - S_0|
  bool pass = false;
};

inline constexpr double kRoundtripMomentTol = 1e-8;
inline constexpr double kRoundtripTransformTol = 1e-9;

/// Draws a random atomic measure, takes its moments, rebuilds a solution
/// from a random constant unitary parameter, and compares moments and
/// transforms at `zeta_samples` random points with |zeta| <= 0.95.
RoundtripReport oracle_roundtrip(int atoms, int N, int d, std::uint64_t seed,
                                 int zeta_samples = 50);

}  // namespace trigmoment
