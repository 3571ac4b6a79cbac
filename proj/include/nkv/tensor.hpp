#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace nkv {

using Vector = std::vector<double>;

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t dim);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;
  void set_column(std::size_t j, const Vector& v);
  Matrix columns(std::size_t first, std::size_t count) const;

  Matrix transpose() const;
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// Endomorphisms and bilinear forms share the matrix representation.
using Endomorphism = Matrix;
using BilinearForm = Matrix;

// Dense rank-3 array. For a vector-valued bilinear map A the convention is
// t(i, j, k) = k-th component of A(e_i, e_j).
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t n0, std::size_t n1, std::size_t n2, double fill = 0.0)
      : n0_(n0), n1_(n1), n2_(n2), data_(n0 * n1 * n2, fill) {}
  explicit Tensor3(std::size_t n, double fill = 0.0) : Tensor3(n, n, n, fill) {}

  std::size_t dim0() const { return n0_; }
  std::size_t dim1() const { return n1_; }
  std::size_t dim2() const { return n2_; }
  bool cubic() const { return n0_ == n1_ && n1_ == n2_; }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * n1_ + j) * n2_ + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n1_ + j) * n2_ + k];
  }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t n0_ = 0, n1_ = 0, n2_ = 0;
  std::vector<double> data_;
};

using Trilinear = Tensor3;

// vectors
double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
double max_abs(const Vector& a);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& a);
Vector basis_vector(std::size_t dim, std::size_t i);
Vector cross3(const Vector& a, const Vector& b);

// matrices
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
double max_abs(const Matrix& a);
double bilinear(const Matrix& g, const Vector& x, const Vector& y);
double trace(const Matrix& a);
Matrix block_diagonal(const Matrix& a, const Matrix& b);
Matrix kron_identity(std::size_t n, const Matrix& block);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

// tensors
double max_abs(const Tensor3& t);
Tensor3 operator-(const Tensor3& a, const Tensor3& b);
Tensor3 operator+(const Tensor3& a, const Tensor3& b);
Tensor3 operator*(double s, const Tensor3& t);

// A(x, y) for a vector-valued bilinear map stored with output index.
Vector bilinear_apply(const Tensor3& a, const Vector& x, const Vector& y);
// sum t(i,j,k) x_i y_j z_k
double trilinear_eval(const Tensor3& t, const Vector& x, const Vector& y, const Vector& z);
// Change of frame for a vector-valued bilinear map: out(i,j) = inv * A(P e_i, P e_j).
Tensor3 transform_bilinear(const Tensor3& a, const Matrix& p, const Matrix& p_inv);
// Trilinear form pulled back along the columns of basis: out(a,b,c) = t(q_a, q_b, q_c).
Tensor3 restrict_trilinear(const Tensor3& t, const Matrix& basis);

}  // namespace nkv
