#include "trigmoment/example21.hpp"

#include <cmath>

namespace trigmoment {

MomentSequence example21_moments() {
  CMatrix s0(3, 3), s1(3, 3);
  s0 << 1, 1, 0,
        1, 1, 0,
        0, 0, 1;
  s1 << 1, 1, 0,
        1, 1, 0,
        0, 0, 0;
  return MomentSequence({s0, s1});
}

CMatrix example21_transform(Complex zeta, Complex f) {
  CMatrix g = CMatrix::Zero(3, 3);
  const Complex a = 1.0 / (1.0 - zeta);
  g(0, 0) = g(0, 1) = g(1, 0) = g(1, 1) = a;
  g(2, 2) = 1.0 + zeta * zeta * f / (1.0 - zeta * zeta * f);
  return g;
}

std::vector<GoldenCheck> run_example21_checks() {
  std::vector<GoldenCheck> out;
  auto exact = [&](std::string name, long got, long want) {
    out.push_back({name + " = " + std::to_string(want) + " (got " + std::to_string(got) + ")",
                   got == want, static_cast<double>(std::labs(got - want))});
  };
  auto close = [&](std::string name, double err, double tol) {
    out.push_back({std::move(name), err <= tol, err});
  };

  const MomentSequence s = example21_moments();
  const ToeplitzGram t = build_toeplitz(s);
  const PsdReport psd = psd_check(t);
  exact("rank T_1", psd.rank, 3);

  const IsometryModel model = build_isometry(build_model_space(t));
  exact("tau", model.tau(), 2);
  exact("delta", model.delta(), 1);

  const GapSet gap({make_arc(1.0, -1.0)});
  const auto grid = arc_grid(conjugate_set(gap), 16);
  const double root2 = std::sqrt(2.0);
  double err_s = 0.0, err_q = 0.0, err_w = 0.0;
  for (const auto& p : grid) {
    const DefectProjections dp = szeta_qzeta(model, p.zeta);
    err_s = std::max(err_s, std::abs(dp.m_s(0, 0) - p.zeta / root2));
    err_q = std::max(err_q, std::abs(dp.m_q(0, 0) - 1.0 / root2));
    err_w = std::max(err_w, std::abs(w_tilde(model, p.zeta)(0, 0) - 1.0 / (p.zeta * p.zeta)));
  }
  close("M_S = zeta/sqrt(2) on 16 conjugate-arc points", err_s, 1e-10);
  close("M_Q = 1/sqrt(2) on 16 conjugate-arc points", err_q, 1e-10);
  close("W~ = zeta^-2 on 16 conjugate-arc points", err_w, 1e-10);

  const SchurParameter one = SchurParameter::phase(1, 0.0);
  const Complex zetas[] = {{0.0, 0.0},  {0.3, 0.0},   {0.0, 0.5},  {-0.4, 0.2},
                           std::polar(0.9, 2.0), {0.5, 0.0}, {-0.7, -0.1}, std::polar(0.6, -2.5)};
  double err_g = 0.0;
  for (Complex z : zetas) {
    // The closed form is written for dM^T.
    const CMatrix g = transform_eval(model, one, z).transpose();
    err_g = std::max(err_g, max_abs(g - example21_transform(z, 1.0)));
  }
  close("transform with F = 1 at 8 points of the disk", err_g, 1e-10);

  const GapCertificate cert = certify_gap(s, model, gap);
  out.push_back({"gap l(1,-1) solvable (verdict " + to_string(cert.verdict) + ")",
                 cert.verdict == GapVerdict::candidate_found && cert.solution_verified,
                 cert.mass ? cert.mass->norm : 1.0});
  return out;
}

}  // namespace trigmoment
