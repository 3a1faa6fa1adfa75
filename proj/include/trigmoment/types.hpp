#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace trigmoment {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Inner product of the model space, linear in the first argument:
/// (a, b) = sum_i a_i conj(b_i).
inline Complex inner(const CVector& a, const CVector& b) { return b.dot(a); }

/// Angle of a nonzero complex number mapped to [0, 2*pi).
inline double angle_0_2pi(Complex z) {
  double t = std::arg(z);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

/// Largest entry modulus; 0 for an empty matrix.
inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// The moment data cannot come from a non-negative matrix measure.
class NotPositiveSemidefinite : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A parameter that must be unitary (or contractive) is not.
class NotUnitary : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// E - zeta*A fails to be bounded below at a requested point.
class NotRegularType : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The moment problem has a unique solution; the requested operation needs
/// nontrivial defect subspaces.
class DeterminateProblem : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace trigmoment
