#include "cli_app.hpp"

#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "trigmoment/example21.hpp"
#include "trigmoment/json_io.hpp"
#include "trigmoment/roundtrip.hpp"

namespace trigmoment::cli {

namespace {

constexpr const char* kConvention =
    "G[k][j] = sum_m W_m[k][j] / (1 - zeta exp(i theta_m)), the transform of dm_{k,j}; "
    "its transpose is the transform of dM^T";

struct Sink {
  std::ostream& out;
  std::string path;

  void write(const json& j) const {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream file(path);
    if (!file) throw std::invalid_argument("cannot write " + path);
    file << text;
  }
};

struct ParameterArgs {
  std::optional<double> phase;
  std::string unitary_path;

  void attach(CLI::App* cmd) {
    auto* p = cmd->add_option("--phase", phase, "constant parameter F = exp(i phase) I");
    auto* u = cmd->add_option("--unitary", unitary_path, "JSON file holding the matrix F")
                  ->check(CLI::ExistingFile);
    p->excludes(u);
  }

  /// F for a problem with defect number delta; phase 0 when nothing was given.
  SchurParameter resolve(int delta) const {
    if (unitary_path.empty()) return SchurParameter::phase(delta, phase.value_or(0.0));
    const json j = read_json_file(unitary_path);
    CMatrix f = matrix_from_json(j.is_object() ? j.at("F") : j);
    if (f.rows() != delta || f.cols() != delta) {
      throw std::invalid_argument("parameter is " + std::to_string(f.rows()) + "x" +
                                  std::to_string(f.cols()) + ", defect number is " +
                                  std::to_string(delta));
    }
    return SchurParameter::constant(std::move(f));
  }

  bool given() const { return phase.has_value() || !unitary_path.empty(); }
};

Complex parse_zeta(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("zeta is written re,im");
  std::size_t used_re = 0, used_im = 0;
  const std::string re = text.substr(0, comma), im = text.substr(comma + 1);
  double a = 0.0, b = 0.0;
  try {
    a = std::stod(re, &used_re);
    b = std::stod(im, &used_im);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad zeta \"" + text + "\"");
  }
  if (used_re != re.size() || used_im != im.size()) {
    throw std::invalid_argument("bad zeta \"" + text + "\"");
  }
  return {a, b};
}

IsometryModel model_of(const MomentSequence& s, double psd_tol, double rank_tol) {
  const ToeplitzGram t = build_toeplitz(s);
  const PsdReport psd = psd_check(t, psd_tol);
  if (!psd.solvable) {
    throw NotPositiveSemidefinite("T_d has eigenvalue " + std::to_string(psd.min_eigenvalue));
  }
  return build_isometry(build_model_space(t, rank_tol));
}

int cmd_check(const std::string& path, double psd_tol, double rank_tol, const Sink& sink) {
  const MomentSequence s = moments_from_json(read_json_file(path));
  const ToeplitzGram t = build_toeplitz(s);
  const PsdReport psd = psd_check(t, psd_tol);
  json report = {{"solvable", psd.solvable},
                 {"rank", psd.rank},
                 {"min_eigenvalue", psd.min_eigenvalue},
                 {"max_eigenvalue", psd.max_eigenvalue}};
  if (!psd.solvable) {
    sink.write(report);
    return kExitNotSolvable;
  }
  const Deficiency def = deficiency(build_isometry(build_model_space(t, rank_tol)));
  report["tau"] = def.tau;
  report["delta"] = def.delta;
  report["indeterminate"] = def.indeterminate;
  sink.write(report);
  return kExitOk;
}

int cmd_solve(const std::string& path, const ParameterArgs& param, double tol, double psd_tol,
              double rank_tol, const Sink& sink, std::ostream& err) {
  const MomentSequence s = moments_from_json(read_json_file(path));
  const IsometryModel model = model_of(s, psd_tol, rank_tol);
  if (model.delta() == 0 && param.given()) {
    err << "warning: the problem is determinate; the parameter is ignored\n";
  }
  const SchurParameter f =
      model.delta() == 0 ? SchurParameter::constant(CMatrix(0, 0)) : param.resolve(model.delta());
  const AtomicMeasure m = atomic_measure(model, f);
  const ResidualReport res = verify_moments(m, s, tol);
  sink.write({{"determinate", model.delta() == 0},
              {"parameter", to_json(f.value())},
              {"convention", kConvention},
              {"measure", to_json(m)},
              {"moment_residuals", to_json(res)}});
  return res.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_transform(const std::string& path, const ParameterArgs& param,
                  const std::vector<std::string>& zetas, double psd_tol, double rank_tol,
                  const Sink& sink) {
  const MomentSequence s = moments_from_json(read_json_file(path));
  const IsometryModel model = model_of(s, psd_tol, rank_tol);
  const SchurParameter f =
      model.delta() == 0 ? SchurParameter::constant(CMatrix(0, 0)) : param.resolve(model.delta());
  json values = json::array();
  for (const auto& text : zetas) {
    const Complex z = parse_zeta(text);
    values.push_back({{"zeta", to_json(z)}, {"G", to_json(transform_eval(model, f, z))}});
  }
  sink.write({{"convention", kConvention},
              {"parameter", to_json(f.value())},
              {"values", std::move(values)}});
  return kExitOk;
}

int cmd_gap_check(const std::string& path, const std::string& gap_text,
                  const std::string& gap_path, const GapCheckOptions& opts, double psd_tol,
                  double rank_tol, const Sink& sink) {
  const MomentSequence s = moments_from_json(read_json_file(path));
  const GapSet gap = gap_path.empty() ? parse_gap_arcs(gap_text) : gap_from_json(read_json_file(gap_path));
  const ToeplitzGram t = build_toeplitz(s);
  const PsdReport psd = psd_check(t, psd_tol);
  if (!psd.solvable) {
    // Without any solution the constrained problem fails its first necessary condition.
    sink.write({{"verdict", to_string(GapVerdict::necessary_failed)},
                {"reason", "block-Toeplitz matrix is not positive semidefinite"},
                {"min_eigenvalue", psd.min_eigenvalue},
                {"gap", to_json(gap)}});
    return kExitNecessaryFailed;
  }
  const IsometryModel model = build_isometry(build_model_space(t, rank_tol));
  const GapCertificate cert = certify_gap(s, model, gap, opts);
  sink.write(to_json(cert));
  switch (cert.verdict) {
    case GapVerdict::candidate_found:
      return cert.solution_verified ? kExitOk : kExitVerificationFailed;
    case GapVerdict::necessary_failed:
      return kExitNecessaryFailed;
    case GapVerdict::no_candidate_found:
      return kExitNoCandidate;
  }
  return kExitVerificationFailed;
}

int cmd_example21(const Sink& sink) {
  json checks = json::array();
  bool all = true;
  for (const auto& c : run_example21_checks()) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"error", c.error}});
    all = all && c.pass;
  }
  sink.write({{"pass", all}, {"checks", std::move(checks)}});
  return all ? kExitOk : kExitVerificationFailed;
}

int cmd_roundtrip(int atoms, int dim, int order, std::uint64_t seed, int samples,
                  const Sink& sink) {
  const RoundtripReport r = oracle_roundtrip(atoms, dim, order, seed, samples);
  sink.write({{"atoms", r.atoms},
              {"N", r.N},
              {"d", r.d},
              {"seed", r.seed},
              {"rank", r.rank},
              {"delta", r.delta},
              {"determinate", r.delta == 0},
              {"moment_residual", r.moment_residual},
              {"transform_residual", r.transform_residual},
              {"weight_residual", r.weight_residual},
              {"pass", r.pass}});
  return r.pass ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated matrix trigonometric moment problem solver"};
  app.require_subcommand(1);

  std::string moments_path, out_path, gap_text, gap_path;
  double psd_tol = kDefaultPsdTol, rank_tol = kDefaultRankTol, moment_tol = 1e-8;
  ParameterArgs solve_param, transform_param;
  std::vector<std::string> zetas;
  GapCheckOptions gap_opts;
  int atoms = 1, dim = 1, order = 1, zeta_samples = 50;
  std::uint64_t seed = 0;

  auto common = [&](CLI::App* cmd, bool with_moments) {
    if (with_moments) {
      cmd->add_option("moments", moments_path, "moment file")->required()->check(CLI::ExistingFile);
      cmd->add_option("--psd-tol", psd_tol, "relative eigenvalue tolerance for T_d >= 0")
          ->check(CLI::PositiveNumber);
      cmd->add_option("--rank-tol", rank_tol, "relative eigenvalue cutoff for rank")
          ->check(CLI::PositiveNumber);
    }
    cmd->add_option("--out", out_path, "write JSON here instead of standard output");
  };

  auto* check = app.add_subcommand("check", "solvability, rank and defect numbers");
  common(check, true);

  auto* solve = app.add_subcommand("solve", "atomic solution for a constant unitary parameter");
  common(solve, true);
  solve_param.attach(solve);
  solve->add_option("--tol", moment_tol, "moment residual tolerance")->check(CLI::PositiveNumber);

  auto* transform = app.add_subcommand("transform", "transform G(zeta) of a solution");
  common(transform, true);
  transform_param.attach(transform);
  transform->add_option("--zeta", zetas, "point re,im with |zeta| < 1 (repeatable)")
      ->required()
      ->allow_extra_args(false);

  auto* gap = app.add_subcommand("gap-check", "certify a solution vanishing on a gap");
  common(gap, true);
  auto* gap_opt = gap->add_option("--gap", gap_text, "arcs start,end;start,end (radians)");
  auto* gap_file = gap->add_option("--gap-file", gap_path, "gap JSON file")->check(CLI::ExistingFile);
  gap_opt->excludes(gap_file);
  gap->add_option("--grid", gap_opts.grid_n, "samples per arc")->check(CLI::Range(16, 1 << 20));
  gap->add_option("--attempts", gap_opts.attempts, "candidate count (0: default)")
      ->check(CLI::NonNegativeNumber);
  gap->add_option("--tol", gap_opts.tol, "class condition tolerance")->check(CLI::PositiveNumber);
  gap->add_option("--regular-tol", gap_opts.regular_tol, "regular-type margin tolerance")
      ->check(CLI::PositiveNumber);
  gap->add_option("--mass-tol", gap_opts.mass_tol, "allowed gap mass")->check(CLI::PositiveNumber);
  gap->add_option("--moment-tol", gap_opts.moment_tol, "moment residual tolerance")
      ->check(CLI::PositiveNumber);
  gap->add_option("--seed", gap_opts.seed, "seed for random candidates");

  auto* ex = app.add_subcommand("example21", "built-in N = 3, d = 1 regression");
  common(ex, false);

  auto* rt = app.add_subcommand("oracle-roundtrip", "random measure -> moments -> solution");
  common(rt, false);
  rt->add_option("--atoms", atoms, "number of atoms")->check(CLI::PositiveNumber);
  rt->add_option("--dim", dim, "matrix size N")->check(CLI::PositiveNumber);
  rt->add_option("--order", order, "moment order d")->check(CLI::PositiveNumber);
  rt->add_option("--seed", seed, "random seed");
  rt->add_option("--zeta-samples", zeta_samples, "transform comparison points")
      ->check(CLI::PositiveNumber);

  std::vector<const char*> argv{"trigmoment"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const Sink sink{out, out_path};
  try {
    if (*check) return cmd_check(moments_path, psd_tol, rank_tol, sink);
    if (*solve) return cmd_solve(moments_path, solve_param, moment_tol, psd_tol, rank_tol, sink, err);
    if (*transform) {
      return cmd_transform(moments_path, transform_param, zetas, psd_tol, rank_tol, sink);
    }
    if (*gap) {
      if (gap_text.empty() && gap_path.empty()) {
        throw std::invalid_argument("gap-check needs --gap or --gap-file");
      }
      return cmd_gap_check(moments_path, gap_text, gap_path, gap_opts, psd_tol, rank_tol, sink);
    }
    if (*ex) return cmd_example21(sink);
    if (*rt) return cmd_roundtrip(atoms, dim, order, seed, zeta_samples, sink);
  } catch (const NotPositiveSemidefinite& e) {
    err << "error: not solvable: " << e.what() << "\n";
    return kExitNotSolvable;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::domain_error& e) {
    // NotUnitary, NotRegularType, points on the circle.
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  return kExitInputError;
}

}  // namespace trigmoment::cli
