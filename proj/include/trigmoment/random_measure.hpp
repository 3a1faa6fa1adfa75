#pragma once

#include <random>

#include "trigmoment/resolvent_solver.hpp"

namespace trigmoment {

/// Haar-like random unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal folded into Q.
CMatrix random_unitary(int n, std::mt19937_64& rng);

/// `atoms` atoms at uniform angles with weights B B^*, where B is a complex
/// Gaussian N x k matrix and k is uniform in 1..N.
AtomicMeasure random_atomic_measure(int atoms, int N, std::mt19937_64& rng);

/// S_n = sum_m e^{i n theta_m} W_m for n = 0..d.
MomentSequence moments_of(const AtomicMeasure& measure, int d);

}  // namespace trigmoment
