#include "pik/io.hpp"

#include <fstream>
#include <sstream>

namespace pik {

namespace {

const Json& require(const Json& j, const char* key, std::string_view field) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string(field) + "." + key + ": missing");
  return j.at(key);
}

std::size_t require_count(const Json& j, const char* key, std::string_view field) {
  const Json& v = require(j, key, field);
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    throw FormatError(std::string(field) + "." + key + ": expected a positive integer");
  return v.get<std::size_t>();
}

std::string at(std::string_view field, const char* key, std::size_t index) {
  return std::string(field) + "." + key + "[" + std::to_string(index) + "]";
}

}  // namespace

Json matrix_to_json(const RationalMatrix& m, bool decimal) {
  Json data = Json::array();
  for (const auto& v : m.data()) data.push_back(decimal ? to_decimal(v) : to_string(v));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

RationalMatrix matrix_from_json(const Json& j, std::string_view field) {
  const auto rows = require_count(j, "rows", field);
  const auto cols = require_count(j, "cols", field);
  const Json& data = require(j, "data", field);
  if (!data.is_array() || data.size() != rows * cols)
    throw FormatError(std::string(field) + ".data: expected an array of rows*cols = " + std::to_string(rows * cols) +
                      " entries");
  std::vector<Rational> values;
  values.reserve(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    const Json& e = data[k];
    try {
      if (e.is_string()) values.push_back(parse_rational(e.get<std::string>()));
      else if (e.is_number_integer()) values.push_back(parse_rational(std::to_string(e.get<long long>())));
      else throw std::invalid_argument("expected a rational string");
    } catch (const std::invalid_argument& ex) {
      throw FormatError(at(field, "data", k) + ": " + ex.what());
    }
  }
  return RationalMatrix(rows, cols, std::move(values));
}

CommMatrix comm_matrix_from_json(const Json& j, std::string_view field) {
  auto m = matrix_from_json(j, field);
  try {
    return CommMatrix(std::move(m));
  } catch (const std::invalid_argument& ex) {
    throw FormatError(std::string(field) + ": " + ex.what());
  }
}

Json operator_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix operator_from_json(const Json& j, std::string_view field) {
  const auto d = require_count(j, "dim", field);
  auto read = [&](const char* key) {
    const Json& arr = require(j, key, field);
    if (!arr.is_array() || arr.size() != d * d)
      throw FormatError(std::string(field) + "." + key + ": expected " + std::to_string(d * d) + " numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < arr.size(); ++k) {
      if (!arr[k].is_number()) throw FormatError(at(field, key, k) + ": expected a number");
      out.push_back(arr[k].get<double>());
    }
    return out;
  };
  auto re = read("re");
  std::vector<double> im = j.contains("im") ? read("im") : std::vector<double>(d * d, 0.0);
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      auto k = static_cast<std::size_t>(r * n + c);
      m(r, c) = {re[k], im[k]};
    }
  return m;
}

namespace {

const Json& operator_list(const Json& j, const char* key) {
  const Json& list = j.is_object() ? require(j, key, "$") : j;
  if (!list.is_array() || list.empty()) throw FormatError(std::string(key) + ": expected a nonempty array of operators");
  return list;
}

}  // namespace

std::vector<DensityOperator> states_from_json(const Json& j) {
  const Json& list = operator_list(j, "states");
  std::vector<DensityOperator> out;
  for (std::size_t k = 0; k < list.size(); ++k) {
    std::string field = "states[" + std::to_string(k) + "]";
    try {
      out.emplace_back(operator_from_json(list[k], field));
    } catch (const PhysicalityError& ex) {
      throw FormatError(field + ": " + ex.what());
    }
  }
  return out;
}

Json states_to_json(const std::vector<DensityOperator>& states) {
  Json arr = Json::array();
  for (const auto& s : states) arr.push_back(operator_to_json(s.matrix()));
  return arr;
}

Povm povm_from_json(const Json& j) {
  const Json& list = operator_list(j, "effects");
  std::vector<ComplexMatrix> effects;
  for (std::size_t k = 0; k < list.size(); ++k)
    effects.push_back(operator_from_json(list[k], "effects[" + std::to_string(k) + "]"));
  try {
    return Povm(std::move(effects));
  } catch (const PhysicalityError& ex) {
    throw FormatError(std::string("effects: ") + ex.what());
  }
}

Json povm_to_json(const Povm& povm) {
  Json arr = Json::array();
  for (const auto& e : povm.effects()) arr.push_back(operator_to_json(e));
  return arr;
}

Json certificate_to_json(const Certificate& cert, bool decimal) {
  return {{"verdict", "yes"}, {"L", matrix_to_json(cert.left.matrix(), decimal)}, {"R", matrix_to_json(cert.right.matrix(), decimal)}};
}

Certificate certificate_from_json(const Json& j) {
  return Certificate{comm_matrix_from_json(require(j, "L", "certificate"), "certificate.L"),
                     comm_matrix_from_json(require(j, "R", "certificate"), "certificate.R")};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& ex) {
    throw FormatError(path.string() + ": " + ex.what());
  }
}

}  // namespace pik
