#pragma once

#include <span>
#include <vector>

#include "trigmoment/types.hpp"

namespace trigmoment {

/// Matrix moments S_0..S_d of an N x N matrix measure on the unit circle.
/// Entries are stored exactly as supplied.
class MomentSequence {
 public:
  /// Throws std::invalid_argument unless there are at least two matrices,
  /// all square and of one common nonzero size.
  explicit MomentSequence(std::vector<CMatrix> moments);

  int size() const { return size_; }
  int order() const { return static_cast<int>(moments_.size()) - 1; }

  /// S_n for 0 <= n <= d.
  const CMatrix& operator[](int n) const { return moments_.at(static_cast<std::size_t>(n)); }
  const std::vector<CMatrix>& moments() const { return moments_; }

 private:
  std::vector<CMatrix> moments_;
  int size_ = 0;
};

/// Moments S_{-d}..S_d with S_{-k} = S_k^*. Element k + d holds S_k.
/// S_0 is passed through untouched.
std::vector<CMatrix> hermitian_extend(std::span<const CMatrix> moments);

/// The block-Toeplitz matrix T_d = (S_{i-j})_{i,j=0..d}.
struct ToeplitzGram {
  int N = 0;
  int d = 0;
  CMatrix entries;

  int dim() const { return static_cast<int>(entries.rows()); }
  /// gamma_{n,m}; gamma_{kN+s, rN+l} = S_{k-r; s,l}.
  Complex gamma(int n, int m) const { return entries(n, m); }
};

ToeplitzGram build_toeplitz(const MomentSequence& moments);

struct PsdReport {
  bool solvable = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  int rank = 0;
};

inline constexpr double kDefaultPsdTol = 1e-10;

/// Eigenvalue test of T_d >= 0. Throws std::invalid_argument when T_d is
/// not Hermitian to within tol (relative to its largest entry).
PsdReport psd_check(const ToeplitzGram& gram, double tol = kDefaultPsdTol);

}  // namespace trigmoment
