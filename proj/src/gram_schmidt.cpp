#include "trigmoment/gram_schmidt.hpp"

#include <algorithm>

namespace trigmoment {

GramSchmidt::GramSchmidt(Eigen::Index dim, double reference_scale, double drop_tol)
    : basis_(dim, 0), scale_(reference_scale), drop_tol_(drop_tol) {}

GramSchmidt::GramSchmidt(const CMatrix& orthonormal, double reference_scale, double drop_tol)
    : basis_(orthonormal), scale_(reference_scale), drop_tol_(drop_tol) {}

bool GramSchmidt::append(const CVector& candidate) {
  if (candidate.size() != basis_.rows()) {
    throw std::invalid_argument("GramSchmidt::append: dimension mismatch");
  }
  const double original = candidate.norm();
  CVector w = candidate;
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < basis_.cols(); ++j) {
      w -= inner(w, basis_.col(j)) * basis_.col(j);
    }
  }
  const double residual = w.norm();
  if (residual <= drop_tol_ * std::max(original, scale_)) return false;

  basis_.conservativeResize(Eigen::NoChange, basis_.cols() + 1);
  basis_.col(basis_.cols() - 1) = w / residual;
  return true;
}

}  // namespace trigmoment
