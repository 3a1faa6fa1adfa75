#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trigmoment/resolvent_solver.hpp"

namespace trigmoment {

/// Atoms closer than this (in angle) to an arc endpoint are outside the arc.
inline constexpr double kEndpointTol = 1e-12;

/// Open arc of the unit circle, traversed counterclockwise from start to end.
///
/// Endpoints are stored as angles in (-pi, pi], so conjugation is plain
/// negation and therefore exact.
class Arc {
 public:
  /// Any real angles; throws std::invalid_argument if they name the same point.
  Arc(double start, double end);

  double start() const { return start_; }
  double end() const { return end_; }
  /// Counterclockwise length in (0, 2*pi).
  double length() const;
  /// Whether e^{i theta} lies strictly inside, at least endpoint_tol away from both ends.
  bool contains(double theta, double endpoint_tol = kEndpointTol) const;
  /// Angle start + fraction * length (not reduced).
  double angle_at(double fraction) const { return start_ + fraction * length(); }
  /// n midpoint samples: fractions (i + 1/2) / n.
  std::vector<double> grid(int n) const;

  bool operator==(const Arc&) const = default;

 private:
  double start_;
  double end_;
};

/// Angle reduced to (-pi, pi], with -0 mapped to 0.
double reduce_angle(double theta);

/// l(z, w): the open arc from arg z counterclockwise to arg w.
/// Throws std::invalid_argument if z = w or either is off the unit circle.
Arc make_arc(Complex z, Complex w);

/// Finite union of open arcs with pairwise disjoint interiors.
class GapSet {
 public:
  GapSet() = default;
  explicit GapSet(std::vector<Arc> arcs);

  const std::vector<Arc>& arcs() const { return arcs_; }
  bool empty() const { return arcs_.empty(); }
  bool contains(double theta, double endpoint_tol = kEndpointTol) const;

  bool operator==(const GapSet&) const = default;

 private:
  std::vector<Arc> arcs_;
};

/// { z : conj(z) in gap }. Exact involution.
GapSet conjugate_set(const GapSet& gap);

inline constexpr double kDefaultRegularTol = 1e-8;
inline constexpr int kDefaultGridSize = 1024;

/// Between an arc endpoint and its nearest midpoint sample, extra points are
/// placed at distances h/2 * 2^-k, k = 1..kEdgeLevels, where h is the grid
/// step. Singular points closer to an endpoint than h * 2^-(kEdgeLevels+1)
/// are not resolved, since the boundary matrices may legitimately degenerate
/// at the endpoint itself.
inline constexpr int kEdgeLevels = 10;

struct GridPoint {
  double theta = 0.0;
  Complex zeta;
  int arc = 0;
};

/// Midpoint samples of every arc of `set`, grid_n per arc.
std::vector<GridPoint> arc_grid(const GapSet& set, int grid_n);

struct RegularityCertificate {
  std::vector<GridPoint> grid;   // samples of the conjugate set
  std::vector<double> margins;   // sigma_min of the matrix of E - zeta A
  std::vector<int> tau_tilde;
  int refined_points = 0;
  double refined_margin = 0.0;   // smallest margin among refined points (inf if none)
  Complex worst_zeta;            // where the smallest margin overall was seen
  double tol = 0.0;
  bool certified = false;

  double min_margin() const;
};

/// Samples the conjugate set of `gap` and records how far E - zeta A is
/// from singular between the domain frame and the M_zeta frame. A point
/// with tau~ < tau gets margin 0.
///
/// The margin is 1-Lipschitz in zeta, so two neighbouring samples whose
/// margins sum to more than the largest |zeta - zeta_a| + |zeta - zeta_b| on
/// the arc between them enclose no singular point. Other sample intervals
/// are bisected until that holds or a margin at most `tol` turns up. The
/// half steps next to the arc endpoints are probed as described at
/// kEdgeLevels. Throws DeterminateProblem when delta = 0.
RegularityCertificate regular_type_certificate(const IsometryModel& model, const GapSet& gap,
                                               int grid_n = kDefaultGridSize,
                                               double tol = kDefaultRegularTol);

struct DefectProjections {
  CMatrix m_s;  // (g'_k, u_j)
  CMatrix m_q;  // (g'_k, v_j)
};

/// Matrices of S_zeta and Q_zeta for unimodular zeta. Throws NotRegularType
/// if zeta is not a regular-type point or M_S is singular (both to `tol`).
DefectProjections szeta_qzeta(const IsometryModel& model, Complex zeta,
                              double tol = kDefaultRegularTol);

/// W~_zeta = zeta^{-1} M_Q M_S^{-1}.
CMatrix w_tilde(const IsometryModel& model, Complex zeta, double tol = kDefaultRegularTol);

struct ClassCheckOptions {
  int grid_n = kDefaultGridSize;
  double tol = 1e-6;
  double regular_tol = kDefaultRegularTol;
  int radial_k_min = 4;   // radii 1 - 2^-k
  int radial_k_max = 12;
  int max_refine_depth = 60;
};

struct ClassCheckReport {
  bool continuity_ok = false;
  bool unitary_ok = false;
  bool invertible_ok = false;
  bool pass = false;

  double continuity_defect = 0.0;  // largest |F(r zeta) - F(zeta)| at the last radius
  double unitarity_defect = 0.0;   // largest |F^* F - I| on the grid
  double margin = 0.0;             // smallest sigma_min(F - W~) seen
  Complex worst_zeta;
  int grid_points = 0;
  int refined_points = 0;
  int non_regular_points = 0;
};

/// Grid test of conditions A), B), C) for F on the conjugate set of `gap`.
///
/// A) radial Cauchy test along r zeta, r = 1 - 2^-k;
/// B) |F^* F - I| <= tol at the samples;
/// C) sigma_min(F - W~) > tol at the samples, at the edge points of
///    kEdgeLevels, and at points found by refining every interval where the
///    margins at its ends do not exceed the change of F - W~ across it.
///    For constant F the conjugates of the extension eigenvalues that lie in
///    the conjugate set are also evaluated, since F - W~ can be singular only
///    there. Points where W~ is undefined count as failures.
ClassCheckReport class_check(const IsometryModel& model, const GapSet& gap,
                             const SchurParameter& f, const ClassCheckOptions& options = {});

struct CandidateSearchOptions {
  int grid_n = kDefaultGridSize;
  int attempts = 0;  // 0: 4096 phases for delta = 1, 256 random unitaries otherwise
  double tol = 1e-6;
  double regular_tol = kDefaultRegularTol;
  std::uint64_t seed = 0;
};

struct CandidateSearchResult {
  std::optional<CMatrix> candidate;
  double grid_margin = 0.0;  // min sigma_min(F - W~) over the uniform samples
  double margin = 0.0;       // including refinement
  double min_abs_det = 0.0;  // min |det(F - W~)| over the uniform samples
  int candidates_generated = 0;
  int candidates_verified = 0;
};

/// Looks for a constant unitary F with F - W~ invertible on the conjugate
/// set. Failure is inconclusive. Throws DeterminateProblem when delta = 0 and
/// NotRegularType when a uniform sample is not of regular type.
CandidateSearchResult constant_candidate_search(const IsometryModel& model, const GapSet& gap,
                                                const CandidateSearchOptions& options = {});

struct GapMass {
  CMatrix mass;
  double norm = 0.0;  // largest entry modulus
};

/// Sum of the weights of atoms strictly inside the gap.
GapMass gap_mass(const AtomicMeasure& measure, const GapSet& gap);

enum class GapVerdict { necessary_failed, candidate_found, no_candidate_found };

std::string to_string(GapVerdict v);

struct GapCheckOptions {
  int grid_n = kDefaultGridSize;
  int attempts = 0;
  double tol = 1e-6;
  double regular_tol = kDefaultRegularTol;
  double mass_tol = 1e-8;
  double moment_tol = 1e-8;
  std::uint64_t seed = 0;
};

struct GapCertificate {
  GapSet gap;
  GapSet conjugate;
  bool determinate = false;
  std::vector<GridPoint> grid;
  std::vector<double> regularity_margin;
  std::optional<RegularityCertificate> regularity;
  std::vector<CMatrix> w_tilde;  // empty when regularity failed
  std::optional<CandidateSearchResult> search;
  std::optional<ClassCheckReport> class_report;
  std::optional<AtomicMeasure> measure;
  std::optional<ResidualReport> residuals;
  std::optional<GapMass> mass;
  GapVerdict verdict = GapVerdict::no_candidate_found;
  /// Candidate (or unique) solution verified: moments reproduce and the gap carries no mass.
  bool solution_verified = false;
};

/// Regularity certificate, candidate search and, on success, the solution
/// measure with its gap mass. A determinate problem is decided directly from
/// its unique solution: candidate_found if it has no mass in the gap,
/// necessary_failed otherwise.
GapCertificate certify_gap(const MomentSequence& moments, const IsometryModel& model,
                           const GapSet& gap, const GapCheckOptions& options = {});

}  // namespace trigmoment
