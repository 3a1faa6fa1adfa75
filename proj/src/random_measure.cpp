#include "trigmoment/random_measure.hpp"

#include <algorithm>

namespace trigmoment {

namespace {

CMatrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

CMatrix random_unitary(int n, std::mt19937_64& rng) {
  if (n == 0) return CMatrix(0, 0);
  const CMatrix g = gaussian(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

AtomicMeasure random_atomic_measure(int atoms, int N, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_int_distribution<int> rank(1, N);
  AtomicMeasure m;
  m.N = N;
  for (int a = 0; a < atoms; ++a) {
    const double theta = angle(rng);
    const CMatrix b = gaussian(N, rank(rng), rng);
    m.atoms.push_back({theta, b * b.adjoint()});
  }
  std::sort(m.atoms.begin(), m.atoms.end(),
            [](const Atom& x, const Atom& y) { return x.theta < y.theta; });
  return m;
}

MomentSequence moments_of(const AtomicMeasure& measure, int d) {
  std::vector<CMatrix> s;
  for (int n = 0; n <= d; ++n) {
    CMatrix acc = CMatrix::Zero(measure.N, measure.N);
    for (const auto& a : measure.atoms) acc += std::polar(1.0, n * a.theta) * a.weight;
    s.push_back(std::move(acc));
  }
  return MomentSequence(std::move(s));
}

}  // namespace trigmoment
