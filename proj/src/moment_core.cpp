#include "trigmoment/moment_core.hpp"

#include <algorithm>
#include <string>

namespace trigmoment {

namespace {

void check_square_family(std::span<const CMatrix> moments) {
  if (moments.empty()) throw std::invalid_argument("moment list is empty");
  const auto n = moments.front().rows();
  if (n == 0) throw std::invalid_argument("moment matrices must be nonempty");
  for (std::size_t k = 0; k < moments.size(); ++k) {
    if (moments[k].rows() != n || moments[k].cols() != n) {
      throw std::invalid_argument("moment S_" + std::to_string(k) + " is " +
                                  std::to_string(moments[k].rows()) + "x" +
                                  std::to_string(moments[k].cols()) + ", expected " +
                                  std::to_string(n) + "x" + std::to_string(n));
    }
  }
}

}  // namespace

MomentSequence::MomentSequence(std::vector<CMatrix> moments) : moments_(std::move(moments)) {
  check_square_family(moments_);
  if (moments_.size() < 2) {
    throw std::invalid_argument("need moments S_0..S_d with d >= 1");
  }
  size_ = static_cast<int>(moments_.front().rows());
}

std::vector<CMatrix> hermitian_extend(std::span<const CMatrix> moments) {
  check_square_family(moments);
  const int d = static_cast<int>(moments.size()) - 1;
  std::vector<CMatrix> out(static_cast<std::size_t>(2 * d + 1));
  for (int k = 0; k <= d; ++k) {
    out[static_cast<std::size_t>(d + k)] = moments[static_cast<std::size_t>(k)];
    if (k > 0) out[static_cast<std::size_t>(d - k)] = moments[static_cast<std::size_t>(k)].adjoint();
  }
  return out;
}

ToeplitzGram build_toeplitz(const MomentSequence& moments) {
  const int n = moments.size();
  const int d = moments.order();
  const auto full = hermitian_extend(moments.moments());

  ToeplitzGram t;
  t.N = n;
  t.d = d;
  t.entries.resize((d + 1) * n, (d + 1) * n);
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d; ++j) {
      t.entries.block(i * n, j * n, n, n) = full[static_cast<std::size_t>(i - j + d)];
    }
  }
  return t;
}

PsdReport psd_check(const ToeplitzGram& gram, double tol) {
  if (tol < 0.0) throw std::invalid_argument("psd_check: negative tolerance");
  const CMatrix& t = gram.entries;
  const double scale = std::max(1.0, max_abs(t));
  const double skew = max_abs(t - t.adjoint());
  if (skew > tol * scale) {
    throw std::invalid_argument("T_d is not Hermitian (asymmetry " + std::to_string(skew) +
                                "); S_0 must be Hermitian");
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> es(t, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();

  PsdReport r;
  r.min_eigenvalue = ev.minCoeff();
  r.max_eigenvalue = ev.maxCoeff();
  r.solvable = r.min_eigenvalue >= -tol * std::max(1.0, r.max_eigenvalue);
  const double cut = tol * r.max_eigenvalue;
  r.rank = r.max_eigenvalue > 0.0 ? static_cast<int>((ev.array() > cut).count()) : 0;
  return r;
}

}  // namespace trigmoment
