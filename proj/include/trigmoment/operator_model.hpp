#pragma once

#include "trigmoment/moment_core.hpp"

namespace trigmoment {

/// Coordinates of the quotient Hilbert space H built from T_d.
///
/// Column n of `coords` holds x_n in an orthonormal frame of H, so that
/// (x_n, x_m)_H = coords.col(m)^* coords.col(n) = gamma_{n,m}.
struct ModelSpace {
  int N = 0;
  int d = 0;
  CMatrix coords;  // r x (d+1)N
  double rank_tol = 0.0;

  int rank() const { return static_cast<int>(coords.rows()); }
  CVector x(int n) const { return coords.col(n); }
  /// Largest |x_n|; the reference scale for rank decisions.
  double scale() const;
};

inline constexpr double kDefaultRankTol = 1e-10;

/// Isometric embedding X = Lambda^{1/2} V^* of conj(T_d) = V Lambda V^*,
/// keeping eigenvalues above rank_tol * (largest eigenvalue).
/// Throws NotPositiveSemidefinite on an eigenvalue below -rank_tol * max.
ModelSpace build_model_space(const ToeplitzGram& gram, double rank_tol = kDefaultRankTol);

/// Wraps caller-supplied coordinates (e.g. a rotated frame of H).
ModelSpace model_space_from_coords(int N, int d, CMatrix coords, double rank_tol);

/// The block shift A: x_k -> x_{k+N} on D(A) = Lin{x_0..x_{dN-1}}, with the
/// canonical orthonormal frames of its domain, range and defect spaces.
struct IsometryModel {
  ModelSpace space;
  CMatrix domain_basis;   // r x tau, spans D(A)
  CMatrix range_basis;    // r x tau, spans R(A)
  CMatrix a_matrix;       // tau x tau, A in domain -> range coordinates
  CMatrix defect0;        // r x delta, u_j spanning N_0 = H - D(A)
  CMatrix defect_inf;     // r x delta, v_j spanning N_inf = H - R(A)

  int tau() const { return static_cast<int>(domain_basis.cols()); }
  int delta() const { return static_cast<int>(defect0.cols()); }
  int rank() const { return space.rank(); }
  int N() const { return space.N; }
  int d() const { return space.d; }

  /// A as an r x r operator on H (zero on N_0).
  CMatrix shift_operator() const { return range_basis * a_matrix * domain_basis.adjoint(); }
};

/// Throws std::runtime_error when the numerically computed defect numbers
/// of the domain and range disagree.
IsometryModel build_isometry(const ModelSpace& space);

struct Deficiency {
  int tau = 0;
  int delta = 0;
  bool indeterminate = false;
};

Deficiency deficiency(const IsometryModel& model);

/// Orthonormal basis of M_zeta(A) = (E - zeta A) D(A), by Gram-Schmidt over
/// x_0 - zeta x_N, x_1 - zeta x_{N+1}, ..., x_{dN-1} - zeta x_{(d+1)N-1}.
CMatrix m_zeta_basis(const IsometryModel& model, Complex zeta);

/// Orthonormal basis of N_zeta(A), continuing `m_zeta` with x_0..x_{N-1}.
/// Throws NotRegularType when the result does not have delta columns.
CMatrix n_zeta_basis(const IsometryModel& model, const CMatrix& m_zeta);
CMatrix n_zeta_basis(const IsometryModel& model, Complex zeta);

/// Matrix of E - zeta A from the domain frame to `m_zeta` (tau~ x tau).
CMatrix regularity_matrix(const IsometryModel& model, const CMatrix& m_zeta, Complex zeta);

}  // namespace trigmoment
