#include "trigmoment/resolvent_solver.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace trigmoment {

SchurParameter SchurParameter::constant(CMatrix value) {
  if (value.rows() != value.cols()) throw std::invalid_argument("Schur parameter must be square");
  SchurParameter p;
  p.dim_ = static_cast<int>(value.rows());
  p.value_ = std::move(value);
  return p;
}

SchurParameter SchurParameter::evaluator(int dim, Evaluator f) {
  if (!f) throw std::invalid_argument("empty Schur parameter evaluator");
  SchurParameter p;
  p.dim_ = dim;
  p.f_ = std::move(f);
  return p;
}

SchurParameter SchurParameter::phase(int dim, double phase) {
  return constant(std::polar(1.0, phase) * CMatrix::Identity(dim, dim));
}

CMatrix SchurParameter::at(Complex zeta) const {
  if (!f_) return value_;
  CMatrix v = f_(zeta);
  if (v.rows() != dim_ || v.cols() != dim_) {
    throw std::invalid_argument("Schur parameter evaluator returned a " +
                                std::to_string(v.rows()) + "x" + std::to_string(v.cols()) +
                                " matrix, expected " + std::to_string(dim_));
  }
  return v;
}

const CMatrix& SchurParameter::value() const {
  if (f_) throw std::logic_error("Schur parameter is not constant");
  return value_;
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  return max_abs(m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())) <= tol;
}

bool is_contraction(const CMatrix& m, double tol) {
  if (m.size() == 0) return true;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0) <= 1.0 + tol;
}

CMatrix extend(const IsometryModel& model, const CMatrix& phi) {
  if (phi.rows() != model.delta() || phi.cols() != model.delta()) {
    throw std::invalid_argument("parameter is " + std::to_string(phi.rows()) + "x" +
                                std::to_string(phi.cols()) + " but delta = " +
                                std::to_string(model.delta()));
  }
  CMatrix u = model.shift_operator();
  if (model.delta() > 0) u += model.defect_inf * phi * model.defect0.adjoint();
  return u;
}

CMatrix transform_eval(const IsometryModel& model, const SchurParameter& p, Complex zeta) {
  if (std::abs(zeta) >= 1.0) throw std::invalid_argument("transform_eval needs |zeta| < 1");
  const CMatrix phi = p.at(zeta);
  if (!is_contraction(phi)) throw NotUnitary("Schur parameter is not a contraction at zeta");

  const int n = model.N();
  const CMatrix y = model.space.coords.leftCols(n);
  const Eigen::Index r = model.rank();
  const CMatrix resolvent_arg = CMatrix::Identity(r, r) - zeta * extend(model, phi);
  const CMatrix z = resolvent_arg.partialPivLu().solve(y);
  // (Y^* R Y)(j, k) = (R x_k, x_j)
  return (y.adjoint() * z).transpose();
}

CMatrix AtomicMeasure::total() const {
  CMatrix s = CMatrix::Zero(N, N);
  for (const auto& a : atoms) s += a.weight;
  return s;
}

AtomicMeasure atomic_measure(const IsometryModel& model, const SchurParameter& p,
                             double merge_tol) {
  if (!p.is_constant()) throw NotUnitary("atomic extraction needs a constant parameter");
  if (!is_unitary(p.value())) throw NotUnitary("atomic extraction needs a unitary parameter");

  const int n = model.N();
  AtomicMeasure out;
  out.N = n;
  const Eigen::Index r = model.rank();
  if (r == 0) return out;

  const CMatrix u = extend(model, p.value());
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& t = schur.matrixT();
  const CMatrix& q = schur.matrixU();

  const CMatrix off = t.triangularView<Eigen::StrictlyUpper>();
  if (max_abs(off) > 1e-8) {
    throw std::runtime_error("extension is not normal; Schur form is not diagonal");
  }

  std::vector<double> theta(static_cast<std::size_t>(r));
  for (Eigen::Index i = 0; i < r; ++i) theta[static_cast<std::size_t>(i)] = angle_0_2pi(t(i, i));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(r));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return theta[static_cast<std::size_t>(a)] < theta[static_cast<std::size_t>(b)];
  });

  std::vector<std::vector<Eigen::Index>> groups;
  for (auto i : order) {
    const double th = theta[static_cast<std::size_t>(i)];
    if (!groups.empty() &&
        th - theta[static_cast<std::size_t>(groups.back().back())] < merge_tol) {
      groups.back().push_back(i);
    } else {
      groups.push_back({i});
    }
  }
  if (groups.size() > 1) {
    const double gap = theta[static_cast<std::size_t>(groups.front().front())] + kTwoPi -
                       theta[static_cast<std::size_t>(groups.back().back())];
    if (gap < merge_tol) {
      groups.front().insert(groups.front().end(), groups.back().begin(), groups.back().end());
      groups.pop_back();
    }
  }

  const CMatrix y = model.space.coords.leftCols(n);
  for (const auto& g : groups) {
    CMatrix basis(r, static_cast<Eigen::Index>(g.size()));
    Complex direction{0.0, 0.0};
    for (std::size_t c = 0; c < g.size(); ++c) {
      basis.col(static_cast<Eigen::Index>(c)) = q.col(g[c]);
      direction += std::polar(1.0, theta[static_cast<std::size_t>(g[c])]);
    }
    const CMatrix py = basis.adjoint() * y;
    Atom a;
    a.theta = angle_0_2pi(direction);
    a.weight = (py.adjoint() * py).transpose();  // W(k, j) = (P x_k, x_j)
    out.atoms.push_back(std::move(a));
  }
  std::sort(out.atoms.begin(), out.atoms.end(),
            [](const Atom& a, const Atom& b) { return a.theta < b.theta; });
  return out;
}

CMatrix measure_transform(const AtomicMeasure& m, Complex zeta) {
  CMatrix g = CMatrix::Zero(m.N, m.N);
  for (const auto& a : m.atoms) {
    const Complex denom = 1.0 - zeta * std::polar(1.0, a.theta);
    if (std::abs(denom) == 0.0) {
      throw std::domain_error("measure_transform: zeta hits an atom on the unit circle");
    }
    g += a.weight / denom;
  }
  return g;
}

ResidualReport verify_moments(const AtomicMeasure& m, const MomentSequence& s, double tol) {
  if (m.N != s.size()) throw std::invalid_argument("verify_moments: dimension mismatch");
  ResidualReport rep;
  rep.tol = tol;
  rep.pass = true;
  for (int n = 0; n <= s.order(); ++n) {
    CMatrix sum = CMatrix::Zero(m.N, m.N);
    for (const auto& a : m.atoms) sum += std::polar(1.0, n * a.theta) * a.weight;
    const double res = max_abs(sum - s[n]);
    rep.residuals.push_back(res);
    if (!(res <= tol)) rep.pass = false;
  }
  return rep;
}

AtomicMeasure invert_transform(const std::function<CMatrix(Complex)>& transform,
                               const CMatrix& s0, const InversionOptions& options) {
  if (options.bins < 1 || options.samples_per_bin < 1) {
    throw std::invalid_argument("invert_transform: need at least one bin and sample");
  }
  if (!(options.radius > 0.0 && options.radius < 1.0)) {
    throw std::invalid_argument("invert_transform: radius must lie in (0, 1)");
  }
  const int k_bins = options.bins;
  const int per = options.samples_per_bin;
  const double width = kTwoPi / k_bins;
  const double floor = -options.tol * std::max(1.0, max_abs(s0));

  AtomicMeasure out;
  out.N = static_cast<int>(s0.rows());
  out.atoms.reserve(static_cast<std::size_t>(k_bins));
  for (int k = 0; k < k_bins; ++k) {
    CMatrix acc = CMatrix::Zero(s0.rows(), s0.cols());
    for (int s = 0; s < per; ++s) {
      const double t = width * (k + (s + 0.5) / per);
      // Mass at angle t shows up in C(zeta) at arg zeta = -t.
      const CMatrix c = 2.0 * transform(std::polar(options.radius, -t)) - s0;
      const CMatrix herm = 0.5 * (c + c.adjoint());
      Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < floor) {
        throw std::domain_error("transform has a Hermitian part that is not PSD");
      }
      acc += herm;
    }
    out.atoms.push_back({width * (k + 0.5), acc / (static_cast<double>(per) * k_bins)});
  }
  return out;
}

}  // namespace trigmoment
