#include "trigmoment/json_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace trigmoment {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw std::invalid_argument(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string("field \"") + name + "\" must be an integer");
  }
  return v.get<int>();
}

double real_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number()) {
    throw std::invalid_argument(std::string("field \"") + name + "\" must be a number");
  }
  return v.get<double>();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: \"" + text + "\"");
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used != text.size()) throw std::invalid_argument("not a number: \"" + text + "\"");
  return v;
}

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("complex numbers are written as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) throw std::invalid_argument("matrix rows must be arrays");
    cols = static_cast<Eigen::Index>(j[0].size());
  }
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix rows have unequal lengths");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
    }
  }
  return m;
}

json to_json(const MomentSequence& s) {
  json list = json::array();
  for (const auto& m : s.moments()) list.push_back(to_json(m));
  return {{"N", s.size()}, {"d", s.order()}, {"S", std::move(list)}};
}

MomentSequence moments_from_json(const json& j) {
  const int n = int_field(j, "N");
  const int d = int_field(j, "d");
  if (n < 1) throw std::invalid_argument("N must be positive");
  if (d < 1) throw std::invalid_argument("d must be at least 1");
  const json& list = field(j, "S");
  if (!list.is_array() || static_cast<int>(list.size()) != d + 1) {
    throw std::invalid_argument("\"S\" must hold d+1 = " + std::to_string(d + 1) + " matrices");
  }
  std::vector<CMatrix> s;
  for (const auto& m : list) {
    CMatrix mat = matrix_from_json(m);
    if (mat.rows() != n || mat.cols() != n) {
      throw std::invalid_argument("moment matrix is " + std::to_string(mat.rows()) + "x" +
                                  std::to_string(mat.cols()) + ", expected N = " +
                                  std::to_string(n));
    }
    s.push_back(std::move(mat));
  }
  return MomentSequence(std::move(s));
}

json to_json(const AtomicMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms) atoms.push_back({{"theta", a.theta}, {"weight", to_json(a.weight)}});
  return {{"atoms", std::move(atoms)}};
}

AtomicMeasure measure_from_json(const json& j) {
  const json& atoms = field(j, "atoms");
  if (!atoms.is_array()) throw std::invalid_argument("\"atoms\" must be an array");
  AtomicMeasure m;
  for (const auto& a : atoms) {
    Atom atom{real_field(a, "theta"), matrix_from_json(field(a, "weight"))};
    if (atom.weight.rows() != atom.weight.cols()) throw std::invalid_argument("weight not square");
    if (m.atoms.empty()) {
      m.N = static_cast<int>(atom.weight.rows());
    } else if (atom.weight.rows() != m.N) {
      throw std::invalid_argument("atom weights differ in size");
    }
    m.atoms.push_back(std::move(atom));
  }
  return m;
}

json to_json(const ResidualReport& r) {
  return {{"residuals", r.residuals}, {"pass", r.pass}, {"tol", r.tol}};
}

json to_json(const GapSet& g) {
  json arcs = json::array();
  for (const auto& a : g.arcs()) arcs.push_back({{"start", a.start()}, {"end", a.end()}});
  return {{"arcs", std::move(arcs)}};
}

GapSet gap_from_json(const json& j) {
  const json& arcs = field(j, "arcs");
  if (!arcs.is_array()) throw std::invalid_argument("\"arcs\" must be an array");
  std::vector<Arc> out;
  for (const auto& a : arcs) out.emplace_back(real_field(a, "start"), real_field(a, "end"));
  return GapSet(std::move(out));
}

GapSet parse_gap_arcs(const std::string& spec) {
  std::vector<Arc> out;
  for (const auto& piece : split(spec, ';')) {
    if (piece.find_first_not_of(" \t") == std::string::npos) continue;
    const auto ends = split(piece, ',');
    if (ends.size() != 2) throw std::invalid_argument("gap arcs are written start,end");
    out.emplace_back(parse_real(ends[0]), parse_real(ends[1]));
  }
  if (out.empty()) throw std::invalid_argument("empty gap");
  return GapSet(std::move(out));
}

json to_json(const RegularityCertificate& c) {
  json grid = json::array();
  for (const auto& p : c.grid) grid.push_back(to_json(p.zeta));
  return {{"grid", std::move(grid)},
          {"regularity_margin", c.margins},
          {"tau_tilde", c.tau_tilde},
          {"refined_points", c.refined_points},
          {"min_margin", c.min_margin()},
          {"worst_zeta", to_json(c.worst_zeta)},
          {"tol", c.tol},
          {"certified", c.certified}};
}

json to_json(const ClassCheckReport& r) {
  return {{"pass", r.pass},
          {"continuity_ok", r.continuity_ok},
          {"unitary_ok", r.unitary_ok},
          {"invertible_ok", r.invertible_ok},
          {"continuity_defect", r.continuity_defect},
          {"unitarity_defect", r.unitarity_defect},
          {"margin", r.margin},
          {"worst_zeta", to_json(r.worst_zeta)},
          {"grid_points", r.grid_points},
          {"refined_points", r.refined_points},
          {"non_regular_points", r.non_regular_points}};
}

json to_json(const GapCertificate& c) {
  json grid = json::array();
  for (const auto& p : c.grid) grid.push_back(to_json(p.zeta));
  json w = json::array();
  for (const auto& m : c.w_tilde) w.push_back(to_json(m));

  json out = {{"verdict", to_string(c.verdict)},
              {"determinate", c.determinate},
              {"gap", to_json(c.gap)},
              {"conjugate_gap", to_json(c.conjugate)},
              {"grid", std::move(grid)},
              {"regularity_margin", c.regularity_margin},
              {"w_tilde", std::move(w)},
              {"solution_verified", c.solution_verified}};
  if (c.regularity) {
    out["regularity"] = {{"certified", c.regularity->certified},
                         {"min_margin", c.regularity->min_margin()},
                         {"worst_zeta", to_json(c.regularity->worst_zeta)},
                         {"refined_points", c.regularity->refined_points},
                         {"tol", c.regularity->tol}};
  }
  if (c.search) {
    json cand = nullptr;
    if (c.search->candidate) cand = to_json(*c.search->candidate);
    out["candidate"] = {{"F", std::move(cand)},
                        {"grid_margin", c.search->grid_margin},
                        {"margin", c.search->margin},
                        {"min_abs_det", c.search->min_abs_det},
                        {"candidates_generated", c.search->candidates_generated},
                        {"candidates_verified", c.search->candidates_verified}};
  } else {
    out["candidate"] = nullptr;
  }
  if (c.class_report) out["class_check"] = to_json(*c.class_report);
  if (c.measure) out["measure"] = to_json(*c.measure);
  if (c.residuals) out["moment_residuals"] = to_json(*c.residuals);
  if (c.mass) out["gap_mass"] = {{"mass", to_json(c.mass->mass)}, {"norm", c.mass->norm}};
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  return json::parse(in);
}

}  // namespace trigmoment
