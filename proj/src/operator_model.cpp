#include "trigmoment/operator_model.hpp"

#include <algorithm>
#include <string>

#include "trigmoment/gram_schmidt.hpp"

namespace trigmoment {

double ModelSpace::scale() const {
  return coords.size() == 0 ? 0.0 : coords.colwise().norm().maxCoeff();
}

ModelSpace build_model_space(const ToeplitzGram& gram, double rank_tol) {
  // (x_n, x_m) = gamma_{n,m} with an inner product linear in the first slot
  // means X^* X = conj(T_d).
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram.entries.conjugate());
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev.size() ? ev.maxCoeff() : 0.0;
  if (ev.size() && ev.minCoeff() < -rank_tol * std::max(1.0, top)) {
    throw NotPositiveSemidefinite("T_d has eigenvalue " + std::to_string(ev.minCoeff()));
  }

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
    if (top > 0.0 && ev(i) > rank_tol * top) keep.push_back(i);
  }

  CMatrix coords(static_cast<Eigen::Index>(keep.size()), gram.entries.cols());
  for (std::size_t row = 0; row < keep.size(); ++row) {
    const Eigen::Index i = keep[row];
    coords.row(static_cast<Eigen::Index>(row)) =
        std::sqrt(ev(i)) * es.eigenvectors().col(i).adjoint();
  }
  return model_space_from_coords(gram.N, gram.d, std::move(coords), rank_tol);
}

ModelSpace model_space_from_coords(int N, int d, CMatrix coords, double rank_tol) {
  if (coords.cols() != (d + 1) * N) {
    throw std::invalid_argument("model coordinates need (d+1)N columns");
  }
  ModelSpace s;
  s.N = N;
  s.d = d;
  s.coords = std::move(coords);
  s.rank_tol = rank_tol;
  return s;
}

IsometryModel build_isometry(const ModelSpace& space) {
  const int n = space.N;
  const int dn = space.d * n;
  const double scale = space.scale();
  const Eigen::Index r = space.rank();

  GramSchmidt dom(r, scale);
  for (int k = 0; k < dn; ++k) dom.append(space.x(k));
  GramSchmidt ran(r, scale);
  for (int k = n; k < dn + n; ++k) ran.append(space.x(k));

  IsometryModel m;
  m.space = space;
  m.domain_basis = dom.basis();
  m.range_basis = ran.basis();

  // A x_k = x_{k+N}: solve a_matrix * C = D in the least-squares sense, where
  // C, D hold domain and range coordinates of x_0.. and x_N.. respectively.
  const CMatrix c = m.domain_basis.adjoint() * space.coords.leftCols(dn);
  const CMatrix dcoords = m.range_basis.adjoint() * space.coords.middleCols(n, dn);
  if (c.rows() > 0) {
    m.a_matrix = dcoords * c.completeOrthogonalDecomposition().pseudoInverse();
  } else {
    m.a_matrix.resize(0, 0);
  }

  const Eigen::Index tau = dom.size();
  for (int k = dn; k < dn + n; ++k) dom.append(space.x(k));
  m.defect0 = dom.tail(tau);

  const Eigen::Index tau_range = ran.size();
  for (int k = 0; k < n; ++k) ran.append(space.x(k));
  m.defect_inf = ran.tail(tau_range);

  if (tau != tau_range || m.defect0.cols() != m.defect_inf.cols() ||
      tau + m.defect0.cols() != r) {
    throw std::runtime_error(
        "inconsistent defect numbers: dim D(A)=" + std::to_string(tau) +
        ", dim R(A)=" + std::to_string(tau_range) + ", dim N_0=" +
        std::to_string(m.defect0.cols()) + ", dim N_inf=" + std::to_string(m.defect_inf.cols()) +
        ", rank=" + std::to_string(r));
  }
  return m;
}

Deficiency deficiency(const IsometryModel& model) {
  return {model.tau(), model.delta(), model.delta() >= 1};
}

CMatrix m_zeta_basis(const IsometryModel& model, Complex zeta) {
  const auto& s = model.space;
  const int n = s.N;
  GramSchmidt gs(s.rank(), s.scale());
  for (int k = 0; k < s.d * n; ++k) gs.append(s.x(k) - zeta * s.x(k + n));
  return gs.basis();
}

CMatrix n_zeta_basis(const IsometryModel& model, const CMatrix& m_zeta) {
  const auto& s = model.space;
  GramSchmidt gs(m_zeta, s.scale());
  for (int k = 0; k < s.N; ++k) gs.append(s.x(k));
  CMatrix out = gs.tail(m_zeta.cols());
  if (out.cols() != model.delta()) {
    throw NotRegularType("dim N_zeta = " + std::to_string(out.cols()) + " but delta = " +
                         std::to_string(model.delta()));
  }
  return out;
}

CMatrix n_zeta_basis(const IsometryModel& model, Complex zeta) {
  return n_zeta_basis(model, m_zeta_basis(model, zeta));
}

CMatrix regularity_matrix(const IsometryModel& model, const CMatrix& m_zeta, Complex zeta) {
  const CMatrix image = model.domain_basis - zeta * (model.range_basis * model.a_matrix);
  return m_zeta.adjoint() * image;
}

}  // namespace trigmoment
