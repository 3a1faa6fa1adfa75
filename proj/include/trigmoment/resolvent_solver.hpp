#pragma once

#include <functional>
#include <vector>

#include "trigmoment/operator_model.hpp"

namespace trigmoment {

/// A Schur-class parameter F (the matrix of Phi: N_0 -> N_inf in the frames
/// u_j, v_j; F(j,k) = (Phi u_k, v_j)). Either a constant matrix or a
/// callable zeta -> F(zeta). Callables must be safe to call concurrently.
class SchurParameter {
 public:
  using Evaluator = std::function<CMatrix(Complex)>;

  static SchurParameter constant(CMatrix value);
  static SchurParameter evaluator(int dim, Evaluator f);
  /// F = e^{i phase} I_dim.
  static SchurParameter phase(int dim, double phase);

  bool is_constant() const { return !f_; }
  int dim() const { return dim_; }

  /// F(zeta); validates the returned shape.
  CMatrix at(Complex zeta) const;
  /// Constant value; throws std::logic_error for evaluators.
  const CMatrix& value() const;

 private:
  int dim_ = 0;
  CMatrix value_;
  Evaluator f_;
};

inline constexpr double kUnitaryTol = 1e-10;

bool is_unitary(const CMatrix& m, double tol = kUnitaryTol);
bool is_contraction(const CMatrix& m, double tol = kUnitaryTol);

/// A (+) Phi as an r x r operator on H: A on D(A), Phi on N_0.
/// Throws std::invalid_argument if phi is not delta x delta.
CMatrix extend(const IsometryModel& model, const CMatrix& phi);

/// G(zeta)(k, j) = ((E - zeta (A (+) Phi_zeta))^{-1} x_k, x_j), k, j < N,
/// for |zeta| < 1. G(0) = S_0.
CMatrix transform_eval(const IsometryModel& model, const SchurParameter& p, Complex zeta);

struct Atom {
  double theta = 0.0;  // [0, 2*pi)
  CMatrix weight;      // N x N, PSD
};

/// A finitely supported matrix measure; atoms sorted by angle.
struct AtomicMeasure {
  int N = 0;
  std::vector<Atom> atoms;

  CMatrix total() const;
};

inline constexpr double kAtomMergeTol = 1e-9;

/// Spectral measure of the unitary extension A (+) F seen through x_0..x_{N-1}.
/// Throws NotUnitary unless p is a constant unitary.
AtomicMeasure atomic_measure(const IsometryModel& model, const SchurParameter& p,
                             double merge_tol = kAtomMergeTol);

/// sum_m W_m / (1 - zeta e^{i theta_m}). Throws std::domain_error when zeta
/// coincides with an atom on the unit circle.
CMatrix measure_transform(const AtomicMeasure& m, Complex zeta);

struct ResidualReport {
  std::vector<double> residuals;  // max-entry error per moment n = 0..d
  bool pass = false;
  double tol = 0.0;
};

ResidualReport verify_moments(const AtomicMeasure& m, const MomentSequence& s, double tol);

struct InversionOptions {
  int bins = 4096;
  double radius = 1.0 - kTwoPi / 4096.0;
  int samples_per_bin = 16;
  double tol = 1e-9;  // allowed negativity of the Hermitian part, relative to |S_0|
};

/// Recovers a histogram of the measure behind a transform G from the
/// Hermitian part of C(zeta) = 2G(zeta) - S_0 on the circle |zeta| = radius.
/// Bin k covers angles [2 pi k/K, 2 pi (k+1)/K) and is reported as an atom at
/// the bin centre. Throws std::domain_error if C has a Hermitian part that is
/// negative beyond tolerance.
AtomicMeasure invert_transform(const std::function<CMatrix(Complex)>& transform,
                               const CMatrix& s0, const InversionOptions& options = {});

}  // namespace trigmoment
