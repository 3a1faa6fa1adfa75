#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "trigmoment/gap_analysis.hpp"

namespace trigmoment {

using json = nlohmann::json;

// Complex numbers are [re, im]; matrices are arrays of rows of complex numbers.
// All readers throw std::invalid_argument (or json::exception for syntax
// errors) on malformed input.

json to_json(Complex z);
Complex complex_from_json(const json& j);

json to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

/// {"N": int, "d": int, "S": [S_0, ..., S_d]}
json to_json(const MomentSequence& s);
MomentSequence moments_from_json(const json& j);

/// {"atoms": [{"theta": real, "weight": matrix}, ...]}
json to_json(const AtomicMeasure& m);
AtomicMeasure measure_from_json(const json& j);

/// {"residuals": [...], "pass": bool, "tol": real}
json to_json(const ResidualReport& r);

/// {"arcs": [{"start": real, "end": real}, ...]}
json to_json(const GapSet& g);
GapSet gap_from_json(const json& j);

/// "start,end;start,end;..." in radians.
GapSet parse_gap_arcs(const std::string& spec);

json to_json(const RegularityCertificate& c);
json to_json(const ClassCheckReport& r);
json to_json(const GapCertificate& c);

json read_json_file(const std::filesystem::path& path);

}  // namespace trigmoment
