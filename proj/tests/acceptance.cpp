// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "cli_app.hpp"
#include "corpus.hpp"
#include "trigmoment/example21.hpp"
#include "trigmoment/gap_analysis.hpp"
#include "trigmoment/json_io.hpp"

using namespace trigmoment;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

IsometryModel example_model() {
  return build_isometry(build_model_space(build_toeplitz(example21_moments())));
}

Outcome golden_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto checks = run_example21_checks();
  const double elapsed = seconds_since(t0);
  double worst = 0.0;
  for (const auto& c : checks) {
    o.require(c.pass, c.name);
    worst = std::max(worst, c.error);
  }
  o.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  if (o.pass) {
    o.detail = std::to_string(checks.size()) + " checks, worst error " + std::to_string(worst) +
               ", " + std::to_string(elapsed) + " s";
  }
  return o;
}

Outcome transform_values() {
  Outcome o;
  const IsometryModel m = example_model();
  const Complex zetas[] = {{0.0, 0.0}, {0.3, 0.0}, {0.0, 0.5}, {-0.4, 0.2}, std::polar(0.9, 2.0)};
  double worst = 0.0;
  for (Complex z : zetas) {
    const CMatrix g = transform_eval(m, SchurParameter::phase(1, 0.0), z).transpose();
    CMatrix want = CMatrix::Zero(3, 3);
    want.topLeftCorner(2, 2).setConstant(1.0 / (1.0 - z));
    want(2, 2) = 1.0 / (1.0 - z * z);
    worst = std::max(worst, max_abs(g - want));
  }
  o.require(worst <= 1e-10, "transform error " + std::to_string(worst));

  const CMatrix s0 = example21_moments()[0];
  double at_zero = 0.0;
  std::vector<SchurParameter> params;
  for (int k = 0; k < 8; ++k) params.push_back(SchurParameter::phase(1, 0.8 * k));
  params.push_back(SchurParameter::constant(CMatrix::Zero(1, 1)));
  params.push_back(SchurParameter::evaluator(1, [](Complex z) { return CMatrix::Constant(1, 1, z); }));
  for (const auto& p : params) at_zero = std::max(at_zero, max_abs(transform_eval(m, p, 0.0) - s0));
  o.require(at_zero <= 1e-12, "G(0) - S_0 = " + std::to_string(at_zero));
  if (o.pass) {
    std::ostringstream s;
    s << "max error " << worst << " at 5 points, |G(0) - S_0| " << at_zero << " over "
      << params.size() << " parameters";
    o.detail = s.str();
  }
  return o;
}

Outcome gap_solvability(const std::filesystem::path& dir) {
  Outcome o;
  const std::string file = (dir / "example21.json").string();
  std::ofstream(file) << to_json(example21_moments()).dump();
  std::ostringstream out, err;
  const int code = cli::run({"gap-check", file, "--gap", "0,3.141592653589793"}, out, err);
  o.require(code == cli::kExitOk, "exit code " + std::to_string(code) + " " + err.str());
  if (code != cli::kExitOk) return o;
  const json j = json::parse(out.str());
  o.require(j["verdict"] == "candidate_found", "verdict " + j["verdict"].dump());
  const double mass = j["gap_mass"]["norm"].get<double>();
  double residual = 0.0;
  for (const auto& r : j["moment_residuals"]["residuals"]) residual = std::max(residual, r.get<double>());
  const auto atoms = j["measure"]["atoms"].size();
  o.require(mass < 1e-10, "gap mass " + std::to_string(mass));
  o.require(residual < 1e-10, "moment residual " + std::to_string(residual));
  o.require(atoms == 2, std::to_string(atoms) + " atoms");
  if (o.pass) {
    std::ostringstream s;
    s << "F = " << j["candidate"]["F"].dump() << ", " << atoms << " atoms, gap mass " << mass
      << ", moment residual " << residual;
    o.detail = s.str();
  }
  return o;
}

Outcome roundtrip_suite(const std::vector<corpus::Instance>& instances, double build_seconds) {
  Outcome o;
  const auto t0 = Clock::now();
  double moments = 0.0, transforms = 0.0;
  for (const auto& c : instances) {
    const SchurParameter f = SchurParameter::constant(c.parameter);
    const AtomicMeasure mu = atomic_measure(c.model, f);
    const ResidualReport res = verify_moments(mu, c.moments, 1e-8);
    for (double r : res.residuals) moments = std::max(moments, r);
    for (Complex z : c.zetas) {
      transforms = std::max(transforms, max_abs(transform_eval(c.model, f, z) - measure_transform(mu, z)));
    }
  }
  const double elapsed = build_seconds + seconds_since(t0);
  o.require(moments < 1e-8, "moment residual " + std::to_string(moments));
  o.require(transforms < 1e-9, "transform disagreement " + std::to_string(transforms));
  o.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
  std::ostringstream s;
  s << instances.size() << " instances, moments " << moments << ", transforms " << transforms
    << " at 50 points each, " << elapsed << " s";
  if (o.pass) o.detail = s.str();
  return o;
}

Outcome invariant_suite(const std::vector<corpus::Instance>& instances) {
  Outcome o;
  double isometry = 0.0, negativity = 0.0, weight_sum = 0.0, herglotz = 0.0;
  bool dims = true, involution = true;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (const auto& c : instances) {
    const IsometryModel& m = c.model;
    const CMatrix a = m.shift_operator();
    for (int i = 0; i < 4; ++i) {
      const CVector h = m.domain_basis * oracle::random_unitary(m.tau(), rng).col(0);
      isometry = std::max(isometry, std::abs((a * h).norm() - h.norm()));
    }
    dims = dims && m.defect0.cols() == m.defect_inf.cols() && m.delta() >= 0 && m.delta() <= m.N();

    const AtomicMeasure mu = atomic_measure(m, SchurParameter::constant(c.parameter));
    const double scale = std::max(1.0, max_abs(c.moments[0]));
    for (const auto& atom : mu.atoms) {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(atom.weight, Eigen::EigenvaluesOnly);
      negativity = std::max(negativity, -es.eigenvalues().minCoeff() / scale);
    }
    weight_sum = std::max(weight_sum, max_abs(mu.total() - c.moments[0]));

    for (Complex z : c.zetas) {
      const CMatrix g = 2.0 * transform_eval(m, SchurParameter::constant(c.parameter), z) - c.moments[0];
      Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
      herglotz = std::max(herglotz, -es.eigenvalues().minCoeff() / scale);
    }

    const double s = u(rng);
    const GapSet gap({Arc(s, s + 0.1 + std::abs(u(rng)) / 4.0), Arc(s - 3.0, s - 2.0)});
    involution = involution && conjugate_set(conjugate_set(gap)) == gap;
  }
  o.require(isometry < 1e-10, "isometry defect " + std::to_string(isometry));
  o.require(dims, "defect dimensions");
  o.require(negativity < 1e-10, "weight negativity " + std::to_string(negativity));
  o.require(weight_sum < 1e-8, "sum of weights - S_0 = " + std::to_string(weight_sum));
  o.require(herglotz < 1e-9, "Hermitian part negativity " + std::to_string(herglotz));
  o.require(involution, "conjugation is not an involution");
  if (o.pass) {
    std::ostringstream s;
    s << "isometry " << isometry << ", weight negativity " << negativity << ", weight sum "
      << weight_sum << ", Herglotz negativity " << herglotz << ", involution exact";
    o.detail = s.str();
  }
  return o;
}

Outcome negative_controls(const std::filesystem::path& dir) {
  Outcome o;
  const std::string bad = (dir / "not_psd.json").string();
  std::ofstream(bad) << R"({"N":1,"d":1,"S":[[[[1,0]]],[[[2,0]]]]})";
  std::ostringstream out, err;
  const int code = cli::run({"check", bad}, out, err);
  o.require(code == cli::kExitNotSolvable, "check exit " + std::to_string(code));

  const IsometryModel m = example_model();
  bool rejected = false;
  try {
    atomic_measure(m, SchurParameter::constant(CMatrix::Constant(1, 1, 0.5)));
  } catch (const NotUnitary&) {
    rejected = true;
  }
  o.require(rejected, "non-unitary parameter accepted");

  const ClassCheckReport zero =
      class_check(m, GapSet({make_arc(1.0, -1.0)}), SchurParameter::constant(CMatrix::Zero(1, 1)));
  o.require(!zero.unitary_ok && !zero.pass, "F = 0 passed condition B");

  const GapSet around_one({make_arc(std::polar(1.0, -std::numbers::pi / 2),
                                    std::polar(1.0, std::numbers::pi / 2))});
  const ClassCheckReport one = class_check(m, around_one, SchurParameter::phase(1, 0.0));
  o.require(!one.invertible_ok && !one.pass && one.margin < 1e-6,
            "F = 1 condition C margin " + std::to_string(one.margin));
  if (o.pass) {
    std::ostringstream s;
    s << "check exit 2, NotUnitary, F = 0 unitarity defect " << zero.unitarity_defect
      << ", F = 1 margin " << one.margin << " at zeta = (" << one.worst_zeta.real() << ", "
      << one.worst_zeta.imag() << ")";
    o.detail = s.str();
  }
  return o;
}

}  // namespace

int main() {
  const auto dir = std::filesystem::temp_directory_path() / "trigmoment_acceptance";
  std::filesystem::create_directories(dir);

  int failures = 0;
  auto report = [&](int id, const char* title, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "Example golden suite", golden_suite);
  report(2, "transform values", transform_values);
  report(3, "gap solvability", [&] { return gap_solvability(dir); });

  const auto t0 = Clock::now();
  std::vector<corpus::Instance> instances;
  for (int seed = 0; seed < 100; ++seed) instances.push_back(corpus::make(seed));
  const double build_seconds = seconds_since(t0);
  report(4, "oracle round trip", [&] { return roundtrip_suite(instances, build_seconds); });
  report(5, "invariants", [&] { return invariant_suite(instances); });
  report(6, "negative controls", [&] { return negative_controls(dir); });

  std::filesystem::remove_all(dir);
  return failures == 0 ? 0 : 1;
}
