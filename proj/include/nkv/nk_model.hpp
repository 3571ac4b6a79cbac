#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nkv/check_report.hpp"
#include "nkv/linalg.hpp"
#include "nkv/tensor.hpp"

namespace nkv {

inline constexpr double kDefaultTol = 1e-9;

// Pointwise almost Hermitian data (g, J, A = nabla J). The input frame is
// orthonormalized with respect to g at construction; every stored quantity and
// every check lives in that orthonormal frame, so metric() is the identity.
class NKModel {
 public:
  NKModel(std::string name, const Matrix& g, const Matrix& j, const Tensor3& a,
          double tol = kDefaultTol, std::vector<std::size_t> blocks = {});

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const Matrix& metric() const { return g_; }
  const Matrix& J() const { return j_; }
  const Tensor3& A() const { return a_; }
  double tol() const { return tol_; }
  // factor dimensions for products, a single entry otherwise
  const std::vector<std::size_t>& blocks() const { return blocks_; }
  // columns are the orthonormal frame expressed in input coordinates
  const Matrix& frame() const { return frame_; }
  const Matrix& frame_inverse() const { return frame_inv_; }

  Vector apply_A(const Vector& x, const Vector& y) const { return bilinear_apply(a_, x, y); }
  Vector apply_J(const Vector& x) const { return j_ * x; }
  Vector from_input_coordinates(const Vector& x) const { return frame_inv_ * x; }

  NKModel renamed(std::string name) const;
  NKModel with_tol(double tol) const;

 private:
  NKModel() = default;
  std::string name_;
  std::size_t dim_ = 0;
  Matrix g_, j_, frame_, frame_inv_;
  Tensor3 a_;
  double tol_ = kDefaultTol;
  std::vector<std::size_t> blocks_;
};

struct TorsionData {
  Tensor3 T;    // T(i,j,k) = k-th component of T(e_i,e_j) = -J A(e_i,e_j)
  Tensor3 tau;  // tau(i,j,k) = g(T(e_i,e_j), e_k)
  CheckSuite checks;
};

struct ROperatorReport {
  Matrix r;
  std::vector<EigenGroup> spectrum;
  std::size_t kernel_dim = 0;
  bool is_strict = false;
  CheckSuite checks;
};

struct TypeConstantReport {
  double alpha_type = 0.0;
  double residual = 0.0;
  bool is_strict = false;
  bool reliable = false;
  double scalar_curvature = 0.0;  // 30 * alpha_type
};

CheckSuite verify_model(const NKModel& m);
// Throws ModelInvalid when verify_model fails.
void require_valid(const NKModel& m);

NKModel build_flat_kahler(std::size_t n, double tol = kDefaultTol);
NKModel build_s6(double scale = 1.0, double tol = kDefaultTol);
NKModel build_s3s3(double scale = 1.0, double tol = kDefaultTol);
NKModel build_cp3(double scale = 1.0, double tol = kDefaultTol);
NKModel build_product(const NKModel& m1, const NKModel& m2);

TorsionData torsion(const NKModel& m);
// Koto sum <rX,Y> = sum_i <A(X,e_i), A(Y,e_i)>, no validity precondition.
Matrix koto_r(const NKModel& m);
ROperatorReport r_operator(const NKModel& m);
TypeConstantReport type_constant(const NKModel& m);

// grouping tolerance used for r spectra
double spectrum_group_tol(const NKModel& m);

}  // namespace nkv
