#pragma once

#include "pik/quantum.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pik {

using Json = nlohmann::json;

/// Malformed input; the message names the offending field.
class FormatError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// {"rows": k, "cols": n, "data": ["p/q", ...]} row-major. With `decimal`
/// the entries are 12-significant-digit decimal strings.
Json matrix_to_json(const RationalMatrix& m, bool decimal = false);
/// Entries may be rational strings or JSON integers. `field` prefixes errors.
RationalMatrix matrix_from_json(const Json& j, std::string_view field = "matrix");
/// As matrix_from_json, additionally requiring row-stochasticity.
CommMatrix comm_matrix_from_json(const Json& j, std::string_view field = "matrix");

/// {"dim": d, "re": [...], "im": [...]} row-major; "im" may be omitted.
Json operator_to_json(const ComplexMatrix& m);
ComplexMatrix operator_from_json(const Json& j, std::string_view field = "operator");

/// A JSON array of operators or {"states": [...]}.
std::vector<DensityOperator> states_from_json(const Json& j);
Json states_to_json(const std::vector<DensityOperator>& states);
/// A JSON array of operators or {"effects": [...]}.
Povm povm_from_json(const Json& j);
Json povm_to_json(const Povm& povm);

/// {"verdict": "yes", "L": {...}, "R": {...}}.
Json certificate_to_json(const Certificate& cert, bool decimal = false);
Certificate certificate_from_json(const Json& j);

/// Reads and parses a JSON file; FormatError on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& path);

}  // namespace pik
