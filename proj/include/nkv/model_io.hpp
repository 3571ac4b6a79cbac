#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "nkv/check_report.hpp"
#include "nkv/homogeneous.hpp"
#include "nkv/nk_model.hpp"

namespace nkv {

using Json = nlohmann::json;

// {"name", "dim", "g", "J", "A", "tol"}; A[i][j][k] = k-th component of A(e_i, e_j).
// Written in the model's orthonormal frame.
Json model_to_json(const NKModel& m);
// Throws BadInput on odd dim, ragged or missing arrays.
NKModel model_from_json(const Json& j);

struct LieAlgebraInput {
  LieAlgebra algebra;
  Matrix s_star;
  std::optional<Matrix> b_m;  // invariant form on g coordinates
};

// {"dim", "c", "s_star", "B_m"?}
LieAlgebraInput lie_algebra_from_json(const Json& j);

struct LagrangianInput {
  std::string model;
  Matrix basis;  // spanning vectors as columns
};

// {"model": name-or-file, "basis": [[real]]}, one spanning vector per inner array
LagrangianInput lagrangian_from_json(const Json& j);

// Throws BadInput when the file is missing or not JSON.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

Json vector_to_json(const Vector& v);
Json matrix_to_json(const Matrix& m);
// elapsed time is left out so that reports are reproducible
Json check_to_json(const CheckReport& c);
// checks sorted by name
Json suite_to_json(const CheckSuite& s);

}  // namespace nkv
