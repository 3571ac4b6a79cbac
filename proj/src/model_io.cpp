#include "nkv/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "nkv/errors.hpp"

namespace nkv {

namespace {

[[noreturn]] void bad(const std::string& what) { throw NkError(ErrorKind::BadInput, what); }

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where + " must be a number");
  return j.get<double>();
}

Matrix matrix_from(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array of rows");
  const std::size_t rows = j.size();
  if (rows == 0) return Matrix();
  if (!j[0].is_array()) bad(where + " must be an array of rows");
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) bad(where + " is ragged at row " + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = number(j[r][c], where);
  }
  return m;
}

Tensor3 tensor_from(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) bad(where + " must have " + std::to_string(n) + " slices");
  Tensor3 t(n);
  for (std::size_t a = 0; a < n; ++a) {
    Matrix s = matrix_from(j[a], where);
    if (s.rows() != n || s.cols() != n) bad(where + " is ragged at slice " + std::to_string(a));
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) t(a, b, c) = s(b, c);
  }
  return t;
}

Json tensor_to_json(const Tensor3& t) {
  Json out = Json::array();
  for (std::size_t a = 0; a < t.dim0(); ++a) {
    Json slice = Json::array();
    for (std::size_t b = 0; b < t.dim1(); ++b) {
      Json row = Json::array();
      for (std::size_t c = 0; c < t.dim2(); ++c) row.push_back(t(a, b, c));
      slice.push_back(row);
    }
    out.push_back(slice);
  }
  return out;
}

std::size_t dimension_of(const Json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0)
    bad("\"dim\" must be a positive integer");
  return static_cast<std::size_t>(j["dim"].get<long long>());
}

}  // namespace

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

Json model_to_json(const NKModel& m) {
  Json j;
  j["name"] = m.name();
  j["dim"] = m.dim();
  j["g"] = matrix_to_json(m.metric());
  j["J"] = matrix_to_json(m.J());
  j["A"] = tensor_to_json(m.A());
  j["tol"] = m.tol();
  return j;
}

NKModel model_from_json(const Json& j) {
  if (!j.is_object()) bad("model must be a JSON object");
  const std::size_t n = dimension_of(j);
  if (n % 2 != 0) bad("\"dim\" must be even, got " + std::to_string(n));
  for (const char* key : {"g", "J", "A"})
    if (!j.contains(key)) bad(std::string("missing \"") + key + "\"");
  Matrix g = matrix_from(j["g"], "g"), jm = matrix_from(j["J"], "J");
  if (g.rows() != n || g.cols() != n) bad("\"g\" must be dim x dim");
  if (jm.rows() != n || jm.cols() != n) bad("\"J\" must be dim x dim");
  Tensor3 a = tensor_from(j["A"], n, "A");
  double tol = j.contains("tol") ? number(j["tol"], "tol") : kDefaultTol;
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "model";
  return NKModel(name, g, jm, a, tol);
}

LieAlgebraInput lie_algebra_from_json(const Json& j) {
  if (!j.is_object()) bad("Lie algebra must be a JSON object");
  const std::size_t n = dimension_of(j);
  if (!j.contains("c") || !j.contains("s_star")) bad("Lie algebra needs \"c\" and \"s_star\"");
  LieAlgebraInput in{LieAlgebra{tensor_from(j["c"], n, "c")}, matrix_from(j["s_star"], "s_star"), std::nullopt};
  if (in.s_star.rows() != n || in.s_star.cols() != n) bad("\"s_star\" must be dim x dim");
  if (j.contains("B_m") && !j["B_m"].is_null()) {
    Matrix b = matrix_from(j["B_m"], "B_m");
    if (b.rows() != n || b.cols() != n) bad("\"B_m\" must be dim x dim");
    in.b_m = b;
  }
  return in;
}

LagrangianInput lagrangian_from_json(const Json& j) {
  if (!j.is_object()) bad("Lagrangian must be a JSON object");
  if (!j.contains("model") || !j["model"].is_string()) bad("Lagrangian needs a \"model\" string");
  if (!j.contains("basis")) bad("Lagrangian needs \"basis\"");
  Matrix rows = matrix_from(j["basis"], "basis");
  return LagrangianInput{j["model"].get<std::string>(), rows.transpose()};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path);
  out << j.dump(2) << '\n';
}

Json check_to_json(const CheckReport& c) {
  Json j;
  j["name"] = c.name;
  j["anchor"] = c.anchor;
  j["status"] = to_string(c.status);
  j["residual"] = std::isfinite(c.residual) ? Json(c.residual) : Json(std::to_string(c.residual));
  j["tolerance"] = c.tolerance;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json suite_to_json(const CheckSuite& s) {
  std::vector<CheckReport> sorted = s.checks;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  Json checks = Json::array();
  for (const CheckReport& c : sorted) checks.push_back(check_to_json(c));
  Json j;
  j["name"] = s.name;
  j["passed"] = s.all_passed();
  j["checks"] = checks;
  return j;
}

}  // namespace nkv
