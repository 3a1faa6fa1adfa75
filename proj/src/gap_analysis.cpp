#include "trigmoment/gap_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "trigmoment/random_measure.hpp"

namespace trigmoment {

namespace {

constexpr double kPi = std::numbers::pi;

/// Counterclockwise distance from a to b in [0, 2*pi).
double ccw(double a, double b) {
  double x = std::remainder(b - a, kTwoPi);
  if (x < 0.0) x += kTwoPi;
  return x;
}

double sigma_min(const CMatrix& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  if (m.size() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

void require_unimodular(Complex zeta) {
  if (std::abs(std::abs(zeta) - 1.0) > 1e-9) {
    throw std::invalid_argument("boundary matrices need |zeta| = 1");
  }
}

void require_indeterminate(const IsometryModel& model) {
  if (model.delta() == 0) {
    throw DeterminateProblem("moment problem is determinate (delta = 0)");
  }
}

/// One point of the conjugate set with F - W~ evaluated there.
struct BoundaryEval {
  double theta = 0.0;
  CMatrix diff;  // F(zeta) - W~_zeta; empty when not regular
  double margin = 0.0;
  bool regular = false;
};

using ParameterAt = std::function<CMatrix(Complex)>;

BoundaryEval evaluate_boundary(const IsometryModel& model, const ParameterAt& f, double theta,
                               double regular_tol) {
  BoundaryEval e;
  e.theta = theta;
  const Complex zeta = std::polar(1.0, theta);
  CMatrix w;
  try {
    w = w_tilde(model, zeta, regular_tol);
  } catch (const NotRegularType&) {
    return e;
  }
  e.regular = true;
  e.diff = f(zeta) - w;
  e.margin = sigma_min(e.diff);
  return e;
}

struct ConditionC {
  double margin = std::numeric_limits<double>::infinity();
  double theta = 0.0;
  int refined = 0;
  int non_regular = 0;
  bool ok = true;
};

/// Refines between samples a and b while the margins at the ends do not
/// clear the change of F - W~ across the interval.
class Refiner {
 public:
  Refiner(const IsometryModel& model, const ParameterAt& f, double tol, double regular_tol,
          int max_depth, ConditionC& out)
      : model_(model), f_(f), tol_(tol), regular_tol_(regular_tol), max_depth_(max_depth),
        out_(out) {}

  void record(const BoundaryEval& e) {
    if (!e.regular) {
      ++out_.non_regular;
      out_.ok = false;
      if (out_.margin > 0.0) {
        out_.margin = 0.0;
        out_.theta = e.theta;
      }
      return;
    }
    if (e.margin < out_.margin) {
      out_.margin = e.margin;
      out_.theta = e.theta;
    }
    if (e.margin <= tol_) out_.ok = false;
  }

  void refine(const BoundaryEval& a, const BoundaryEval& b, int depth) {
    if (!out_.ok || !a.regular || !b.regular || depth >= max_depth_) return;
    const double change = (a.diff - b.diff).norm();
    if (a.margin + b.margin > kSlack * change) return;
    const double mid = a.theta + kSplit * (b.theta - a.theta);
    if (mid == a.theta || mid == b.theta) return;
    const BoundaryEval m = evaluate_boundary(model_, f_, mid, regular_tol_);
    ++out_.refined;
    record(m);
    refine(a, m, depth + 1);
    refine(m, b, depth + 1);
  }

 private:
  // Allowance for curvature of zeta -> F - W~ between samples.
  static constexpr double kSlack = 1.5;
  // Off-centre split so that points symmetric about a sample pair are not hit exactly.
  static constexpr double kSplit = 0.41421356237309503;

  const IsometryModel& model_;
  const ParameterAt& f_;
  double tol_;
  double regular_tol_;
  int max_depth_;
  ConditionC& out_;
};

/// Uniform samples of W~ on each arc of the conjugate set.
struct BoundarySamples {
  std::vector<std::vector<double>> theta;   // per arc
  std::vector<std::vector<CMatrix>> w;      // per arc; empty matrix if not regular
};

BoundarySamples sample_boundary(const IsometryModel& model, const GapSet& conj, int grid_n,
                                double regular_tol) {
  BoundarySamples s;
  for (const auto& arc : conj.arcs()) {
    std::vector<double> th;
    std::vector<CMatrix> ws;
    for (double t : arc.grid(grid_n)) {
      th.push_back(t);
      try {
        ws.push_back(w_tilde(model, std::polar(1.0, t), regular_tol));
      } catch (const NotRegularType&) {
        ws.emplace_back();
      }
    }
    s.theta.push_back(std::move(th));
    s.w.push_back(std::move(ws));
  }
  return s;
}

ConditionC condition_c(const IsometryModel& model, const BoundarySamples& samples,
                       const ParameterAt& f, double tol, double regular_tol, int max_depth) {
  ConditionC out;
  Refiner refiner(model, f, tol, regular_tol, max_depth, out);
  std::vector<std::vector<BoundaryEval>> evals;
  for (std::size_t a = 0; a < samples.theta.size(); ++a) {
    std::vector<BoundaryEval> row;
    for (std::size_t i = 0; i < samples.theta[a].size(); ++i) {
      BoundaryEval e;
      e.theta = samples.theta[a][i];
      if (samples.w[a][i].size() != 0) {
        e.regular = true;
        e.diff = f(std::polar(1.0, e.theta)) - samples.w[a][i];
        e.margin = sigma_min(e.diff);
      }
      refiner.record(e);
      row.push_back(std::move(e));
    }
    evals.push_back(std::move(row));
  }
  for (const auto& row : evals) {
    for (std::size_t i = 0; i + 1 < row.size() && out.ok; ++i) {
      refiner.refine(row[i], row[i + 1], 0);
    }
  }
  // Edge strips: walk from the outer samples toward the arc endpoints.
  for (const auto& row : evals) {
    if (row.size() < 2 || !out.ok) continue;
    const double half = 0.5 * (row[1].theta - row[0].theta);
    for (int side = 0; side < 2 && out.ok; ++side) {
      BoundaryEval prev = side == 0 ? row.front() : row.back();
      const double endpoint = side == 0 ? prev.theta - half : prev.theta + half;
      const double dir = side == 0 ? 1.0 : -1.0;
      for (int k = 1; k <= kEdgeLevels && out.ok; ++k) {
        BoundaryEval e =
            evaluate_boundary(model, f, endpoint + dir * std::ldexp(half, -k), regular_tol);
        ++out.refined;
        refiner.record(e);
        refiner.refine(e, prev, 0);
        prev = std::move(e);
      }
    }
  }
  return out;
}

/// For a constant unitary F, F - W~ can only be singular at zeta = conj(lambda)
/// for an eigenvalue lambda of the extension by F, so those points of the
/// conjugate set are evaluated directly.
void probe_spectrum(const IsometryModel& model, const GapSet& conj, const CMatrix& f,
                    double tol, double regular_tol, ConditionC& out) {
  if (!out.ok || model.rank() == 0) return;
  const Eigen::ComplexEigenSolver<CMatrix> es(extend(model, f), false);
  const ParameterAt at = [&f](Complex) { return f; };
  Refiner refiner(model, at, tol, regular_tol, 0, out);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double theta = -std::arg(es.eigenvalues()(i));
    if (!conj.contains(theta)) continue;
    ++out.refined;
    refiner.record(evaluate_boundary(model, at, theta, regular_tol));
  }
}

double grid_margin(const BoundarySamples& samples, const CMatrix& f, double* min_abs_det) {
  double m = std::numeric_limits<double>::infinity();
  double det = std::numeric_limits<double>::infinity();
  if (f.size() == 1) {
    const Complex f0 = f(0, 0);
    for (const auto& row : samples.w) {
      for (const auto& w : row) {
        if (w.size() == 0) return 0.0;
        m = std::min(m, std::abs(f0 - w(0, 0)));
      }
    }
    if (min_abs_det) *min_abs_det = m;
    return m;
  }
  for (std::size_t a = 0; a < samples.w.size(); ++a) {
    for (const auto& w : samples.w[a]) {
      if (w.size() == 0) return 0.0;
      const CMatrix diff = f - w;
      m = std::min(m, sigma_min(diff));
      if (min_abs_det) det = std::min(det, std::abs(diff.determinant()));
    }
  }
  if (min_abs_det) *min_abs_det = det;
  return m;
}

std::vector<CMatrix> candidate_unitaries(int delta, int attempts, std::uint64_t seed) {
  std::vector<CMatrix> out;
  if (delta == 1) {
    const int count = attempts > 0 ? attempts : 4096;
    for (int i = 0; i < count; ++i) {
      out.push_back(CMatrix::Constant(1, 1, std::polar(1.0, kTwoPi * i / count)));
    }
    return out;
  }
  const int count = attempts > 0 ? attempts : 256;
  // Diagonal phases first, then random unitaries.
  int per_entry = 2;
  while (std::pow(per_entry + 1, delta) <= count) ++per_entry;
  std::vector<int> idx(static_cast<std::size_t>(delta), 0);
  while (true) {
    CMatrix f = CMatrix::Zero(delta, delta);
    for (int j = 0; j < delta; ++j) {
      f(j, j) = std::polar(1.0, kTwoPi * idx[static_cast<std::size_t>(j)] / per_entry);
    }
    out.push_back(std::move(f));
    int j = 0;
    while (j < delta && ++idx[static_cast<std::size_t>(j)] == per_entry) {
      idx[static_cast<std::size_t>(j)] = 0;
      ++j;
    }
    if (j == delta) break;
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) out.push_back(random_unitary(delta, rng));
  return out;
}

}  // namespace

double reduce_angle(double theta) {
  double t = std::remainder(theta, kTwoPi);
  if (t <= -kPi) t = kPi;
  if (t == 0.0) t = 0.0;  // drop the sign of -0
  return t;
}

Arc::Arc(double start, double end) : start_(reduce_angle(start)), end_(reduce_angle(end)) {
  if (!std::isfinite(start) || !std::isfinite(end)) {
    throw std::invalid_argument("arc endpoints must be finite");
  }
  if (start_ == end_) throw std::invalid_argument("arc endpoints coincide");
}

double Arc::length() const { return ccw(start_, end_); }

bool Arc::contains(double theta, double endpoint_tol) const {
  const double off = ccw(start_, theta);
  return off > endpoint_tol && off < length() - endpoint_tol;
}

std::vector<double> Arc::grid(int n) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) out.push_back(angle_at((i + 0.5) / n));
  return out;
}

Arc make_arc(Complex z, Complex w) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12 || std::abs(std::abs(w) - 1.0) > 1e-12) {
    throw std::invalid_argument("arc ends must lie on the unit circle");
  }
  return Arc(std::arg(z), std::arg(w));
}

GapSet::GapSet(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs_.size(); ++j) {
      const Arc& a = arcs_[i];
      const Arc& b = arcs_[j];
      if (a.start() == b.start() || a.contains(b.start(), 0.0) || b.contains(a.start(), 0.0)) {
        throw std::invalid_argument("gap arcs overlap");
      }
    }
  }
}

bool GapSet::contains(double theta, double endpoint_tol) const {
  return std::any_of(arcs_.begin(), arcs_.end(),
                     [&](const Arc& a) { return a.contains(theta, endpoint_tol); });
}

GapSet conjugate_set(const GapSet& gap) {
  std::vector<Arc> out;
  out.reserve(gap.arcs().size());
  for (const auto& a : gap.arcs()) out.emplace_back(-a.end(), -a.start());
  return GapSet(std::move(out));
}

std::vector<GridPoint> arc_grid(const GapSet& set, int grid_n) {
  std::vector<GridPoint> out;
  for (std::size_t a = 0; a < set.arcs().size(); ++a) {
    for (double t : set.arcs()[a].grid(grid_n)) {
      out.push_back({t, std::polar(1.0, t), static_cast<int>(a)});
    }
  }
  return out;
}

double RegularityCertificate::min_margin() const {
  const double grid_min = margins.empty() ? std::numeric_limits<double>::infinity()
                                          : *std::min_element(margins.begin(), margins.end());
  return std::min(grid_min, refined_margin);
}

namespace {

/// sigma_min of E - zeta A on D(A); zero exactly where zeta is not of regular type.
double regular_margin(const IsometryModel& model, double theta) {
  const Complex zeta = std::polar(1.0, theta);
  return sigma_min(model.domain_basis - zeta * (model.range_basis * model.a_matrix));
}

struct RegularityRefiner {
  const IsometryModel& model;
  double tol;
  int max_depth;
  RegularityCertificate& cert;
  double worst = std::numeric_limits<double>::infinity();

  void note(double theta, double margin) {
    if (margin < worst) {
      worst = margin;
      cert.worst_zeta = std::polar(1.0, theta);
    }
  }

  void refine(double ta, double ma, double tb, double mb, int depth) {
    if (!cert.certified || depth >= max_depth) return;
    // Largest |zeta - zeta_a| + |zeta - zeta_b| over the arc from zeta_a to zeta_b.
    // Near a zero both sides agree to O(width^3), so demand a clear excess.
    if (ma + mb > (1.0 + kExcess) * 4.0 * std::sin(0.25 * (tb - ta))) return;
    const double tm = ta + kSplit * (tb - ta);
    if (tm == ta || tm == tb) return;
    const double mm = regular_margin(model, tm);
    ++cert.refined_points;
    cert.refined_margin = std::min(cert.refined_margin, mm);
    note(tm, mm);
    if (!(mm > tol)) {
      cert.certified = false;
      return;
    }
    refine(ta, ma, tm, mm, depth + 1);
    refine(tm, mm, tb, mb, depth + 1);
  }

  static constexpr double kSplit = 0.41421356237309503;
  static constexpr double kExcess = 1e-6;
};

}  // namespace

RegularityCertificate regular_type_certificate(const IsometryModel& model, const GapSet& gap,
                                               int grid_n, double tol) {
  require_indeterminate(model);
  RegularityCertificate cert;
  cert.tol = tol;
  cert.grid = arc_grid(conjugate_set(gap), grid_n);
  cert.refined_margin = std::numeric_limits<double>::infinity();
  cert.certified = true;
  RegularityRefiner refiner{model, tol, 60, cert};
  for (const auto& p : cert.grid) {
    const CMatrix basis = m_zeta_basis(model, p.zeta);
    const int tt = static_cast<int>(basis.cols());
    double margin = 0.0;
    if (tt == model.tau()) margin = sigma_min(regularity_matrix(model, basis, p.zeta));
    cert.tau_tilde.push_back(tt);
    cert.margins.push_back(margin);
    refiner.note(p.theta, margin);
    if (!(margin > tol)) cert.certified = false;
  }
  for (std::size_t i = 1; i < cert.grid.size() && cert.certified; ++i) {
    const GridPoint& a = cert.grid[i - 1];
    const GridPoint& b = cert.grid[i];
    if (a.arc != b.arc) continue;
    refiner.refine(a.theta, cert.margins[i - 1], b.theta, cert.margins[i], 0);
  }
  // Edge strips: walk from the outer samples toward the arc endpoints.
  const std::size_t per_arc = static_cast<std::size_t>(grid_n);
  for (std::size_t first = 0; per_arc > 1 && first < cert.grid.size() && cert.certified;
       first += per_arc) {
    const std::size_t last = first + per_arc - 1;
    const double half = 0.5 * (cert.grid[first + 1].theta - cert.grid[first].theta);
    for (int side = 0; side < 2 && cert.certified; ++side) {
      const std::size_t i = side == 0 ? first : last;
      double prev_t = cert.grid[i].theta, prev_m = cert.margins[i];
      const double endpoint = side == 0 ? prev_t - half : prev_t + half;
      const double dir = side == 0 ? 1.0 : -1.0;
      for (int k = 1; k <= kEdgeLevels && cert.certified; ++k) {
        const double t = endpoint + dir * std::ldexp(half, -k);
        const double m = regular_margin(model, t);
        ++cert.refined_points;
        cert.refined_margin = std::min(cert.refined_margin, m);
        refiner.note(t, m);
        if (!(m > tol)) {
          cert.certified = false;
          break;
        }
        if (side == 0) {
          refiner.refine(t, m, prev_t, prev_m, 0);
        } else {
          refiner.refine(prev_t, prev_m, t, m, 0);
        }
        prev_t = t;
        prev_m = m;
      }
    }
  }
  return cert;
}

DefectProjections szeta_qzeta(const IsometryModel& model, Complex zeta, double tol) {
  require_unimodular(zeta);
  const CMatrix basis = m_zeta_basis(model, zeta);
  if (basis.cols() != model.tau() ||
      !(sigma_min(regularity_matrix(model, basis, zeta)) > tol)) {
    throw NotRegularType("zeta is not a point of regular type");
  }
  const CMatrix gprime = n_zeta_basis(model, basis);
  DefectProjections p;
  p.m_s = model.defect0.adjoint() * gprime;
  p.m_q = model.defect_inf.adjoint() * gprime;
  if (!(sigma_min(p.m_s) > tol)) throw NotRegularType("M_S is singular");
  return p;
}

CMatrix w_tilde(const IsometryModel& model, Complex zeta, double tol) {
  const DefectProjections p = szeta_qzeta(model, zeta, tol);
  return (p.m_q * p.m_s.inverse()) / zeta;
}

ClassCheckReport class_check(const IsometryModel& model, const GapSet& gap,
                             const SchurParameter& f, const ClassCheckOptions& options) {
  require_indeterminate(model);
  if (f.dim() != model.delta()) {
    throw std::invalid_argument("class_check: parameter dimension differs from delta");
  }
  const GapSet conj = conjugate_set(gap);
  const auto grid = arc_grid(conj, options.grid_n);
  const int delta = model.delta();
  const CMatrix eye = CMatrix::Identity(delta, delta);

  ClassCheckReport rep;
  rep.grid_points = static_cast<int>(grid.size());

  // A) radial Cauchy behaviour
  rep.continuity_ok = true;
  for (const auto& p : grid) {
    const CMatrix boundary = f.at(p.zeta);
    CMatrix prev = f.at((1.0 - std::ldexp(1.0, -options.radial_k_min)) * p.zeta);
    double first_step = -1.0;
    double last_step = 0.0;
    for (int k = options.radial_k_min + 1; k <= options.radial_k_max; ++k) {
      CMatrix cur = f.at((1.0 - std::ldexp(1.0, -k)) * p.zeta);
      last_step = (cur - prev).norm();
      if (first_step < 0.0) first_step = last_step;
      prev = std::move(cur);
    }
    const double to_boundary = (prev - boundary).norm();
    rep.continuity_defect = std::max(rep.continuity_defect, to_boundary);
    const bool shrinking = last_step <= std::max(options.tol, 0.25 * first_step);
    const bool reaches = to_boundary <= std::max(options.tol, 4.0 * last_step);
    if (!shrinking || !reaches) rep.continuity_ok = false;
  }

  // B) unitary on the conjugate set
  for (const auto& p : grid) {
    const CMatrix v = f.at(p.zeta);
    rep.unitarity_defect = std::max(rep.unitarity_defect, spectral_norm(v.adjoint() * v - eye));
  }
  rep.unitary_ok = rep.unitarity_defect <= options.tol;

  // C) F - W~ invertible
  const BoundarySamples samples = sample_boundary(model, conj, options.grid_n,
                                                  options.regular_tol);
  const ParameterAt at = [&f](Complex z) { return f.at(z); };
  ConditionC c = condition_c(model, samples, at, options.tol, options.regular_tol,
                             options.max_refine_depth);
  if (f.is_constant()) probe_spectrum(model, conj, f.value(), options.tol, options.regular_tol, c);
  rep.invertible_ok = c.ok;
  rep.margin = c.margin;
  rep.worst_zeta = std::polar(1.0, c.theta);
  rep.refined_points = c.refined;
  rep.non_regular_points = c.non_regular;

  rep.pass = rep.continuity_ok && rep.unitary_ok && rep.invertible_ok;
  return rep;
}

CandidateSearchResult constant_candidate_search(const IsometryModel& model, const GapSet& gap,
                                                const CandidateSearchOptions& options) {
  require_indeterminate(model);
  const GapSet conj = conjugate_set(gap);
  const BoundarySamples samples = sample_boundary(model, conj, options.grid_n,
                                                  options.regular_tol);
  for (const auto& row : samples.w) {
    for (const auto& w : row) {
      if (w.size() == 0) throw NotRegularType("conjugate gap contains a non-regular sample");
    }
  }

  const auto pool = candidate_unitaries(model.delta(), options.attempts, options.seed);
  std::vector<double> margins(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) margins[i] = grid_margin(samples, pool[i], nullptr);

  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return margins[a] > margins[b]; });

  CandidateSearchResult res;
  res.candidates_generated = static_cast<int>(pool.size());
  for (std::size_t i : order) {
    if (!(margins[i] > options.tol)) break;
    ++res.candidates_verified;
    const CMatrix& f = pool[i];
    const ParameterAt at = [&f](Complex) { return f; };
    ConditionC c = condition_c(model, samples, at, options.tol, options.regular_tol,
                               ClassCheckOptions{}.max_refine_depth);
    probe_spectrum(model, conj, f, options.tol, options.regular_tol, c);
    if (c.ok) {
      res.candidate = f;
      res.grid_margin = grid_margin(samples, f, &res.min_abs_det);
      res.margin = c.margin;
      return res;
    }
  }
  if (!order.empty()) {
    res.grid_margin = grid_margin(samples, pool[order.front()], &res.min_abs_det);
    res.margin = res.grid_margin;
  }
  return res;
}

GapMass gap_mass(const AtomicMeasure& measure, const GapSet& gap) {
  GapMass g;
  g.mass = CMatrix::Zero(measure.N, measure.N);
  for (const auto& a : measure.atoms) {
    if (gap.contains(a.theta)) g.mass += a.weight;
  }
  g.norm = max_abs(g.mass);
  return g;
}

std::string to_string(GapVerdict v) {
  switch (v) {
    case GapVerdict::necessary_failed: return "necessary_failed";
    case GapVerdict::candidate_found: return "candidate_found";
    case GapVerdict::no_candidate_found: return "no_candidate_found";
  }
  return "unknown";
}

GapCertificate certify_gap(const MomentSequence& moments, const IsometryModel& model,
                           const GapSet& gap, const GapCheckOptions& options) {
  GapCertificate cert;
  cert.gap = gap;
  cert.conjugate = conjugate_set(gap);

  auto finish_with = [&](const CMatrix& f) {
    cert.measure = atomic_measure(model, SchurParameter::constant(f));
    cert.residuals = verify_moments(*cert.measure, moments, options.moment_tol);
    cert.mass = gap_mass(*cert.measure, gap);
    cert.solution_verified = cert.residuals->pass && cert.mass->norm <= options.mass_tol;
  };

  if (model.delta() == 0) {
    // The unique solution decides the question.
    cert.determinate = true;
    finish_with(CMatrix(0, 0));
    cert.verdict = cert.mass->norm <= options.mass_tol ? GapVerdict::candidate_found
                                                       : GapVerdict::necessary_failed;
    return cert;
  }

  const RegularityCertificate reg =
      regular_type_certificate(model, gap, options.grid_n, options.regular_tol);
  cert.grid = reg.grid;
  cert.regularity_margin = reg.margins;
  cert.regularity = reg;
  if (!reg.certified) {
    cert.verdict = GapVerdict::necessary_failed;
    return cert;
  }
  for (const auto& p : cert.grid) cert.w_tilde.push_back(w_tilde(model, p.zeta, options.regular_tol));

  CandidateSearchOptions so;
  so.grid_n = options.grid_n;
  so.attempts = options.attempts;
  so.tol = options.tol;
  so.regular_tol = options.regular_tol;
  so.seed = options.seed;
  cert.search = constant_candidate_search(model, gap, so);
  if (!cert.search->candidate) {
    cert.verdict = GapVerdict::no_candidate_found;
    return cert;
  }

  ClassCheckOptions co;
  co.grid_n = options.grid_n;
  co.tol = options.tol;
  co.regular_tol = options.regular_tol;
  cert.class_report = class_check(model, gap, SchurParameter::constant(*cert.search->candidate), co);
  if (!cert.class_report->pass) {
    // The search verified condition C itself; disagreement means a bug.
    throw std::logic_error("candidate accepted by the search failed class_check");
  }
  cert.verdict = GapVerdict::candidate_found;
  finish_with(*cert.search->candidate);
  return cert;
}

}  // namespace trigmoment
