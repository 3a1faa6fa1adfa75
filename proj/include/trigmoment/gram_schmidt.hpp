#pragma once

#include "trigmoment/types.hpp"

namespace trigmoment {

/// Incremental modified Gram-Schmidt with one full reorthogonalization
/// pass, in the inner product of `inner()`.
///
/// A candidate is dropped when its residual norm is at most
/// drop_tol * max(|candidate|, reference_scale). The reference scale lets
/// candidates that vanish through cancellation (x_k - zeta x_{k+N} with
/// x_k = zeta x_{k+N}) be recognised as zero.
class GramSchmidt {
 public:
  static constexpr double kDefaultDropTol = 1e-8;

  GramSchmidt(Eigen::Index dim, double reference_scale, double drop_tol = kDefaultDropTol);

  /// Start from a basis whose columns are already orthonormal.
  GramSchmidt(const CMatrix& orthonormal, double reference_scale,
              double drop_tol = kDefaultDropTol);

  /// Returns true if the candidate contributed a new basis vector.
  bool append(const CVector& candidate);

  const CMatrix& basis() const { return basis_; }
  Eigen::Index size() const { return basis_.cols(); }

  /// Columns appended after the first `first` ones.
  CMatrix tail(Eigen::Index first) const { return basis_.rightCols(basis_.cols() - first); }

 private:
  CMatrix basis_;
  double scale_;
  double drop_tol_;
};

}  // namespace trigmoment
