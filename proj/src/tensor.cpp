#include "nkv/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "nkv/errors.hpp"

namespace nkv {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw NkError(ErrorKind::DimensionMismatch, what);
}

}  // namespace

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t dim) {
  Matrix m(dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  require(v.size() == rows_, "column length");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
  require(first + count <= cols_, "column range");
  Matrix m(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double dot(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

double max_abs(const Vector& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

Vector operator+(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), "vector add");
  Vector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), "vector sub");
  Vector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector operator*(double s, const Vector& a) {
  Vector r(a);
  for (double& x : r) x *= s;
  return r;
}

Vector basis_vector(std::size_t dim, std::size_t i) {
  Vector v(dim, 0.0);
  v.at(i) = 1.0;
  return v;
}

Vector cross3(const Vector& a, const Vector& b) {
  require(a.size() == 3 && b.size() == 3, "cross3");
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "matmul");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  require(a.cols() == x.size(), "matvec");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix add");
  Matrix c(a);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sub");
  Matrix c(a);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c(a);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

double max_abs(const Matrix& a) { return max_abs(a.data()); }

double bilinear(const Matrix& g, const Vector& x, const Vector& y) { return dot(x, g * y); }

double trace(const Matrix& a) {
  require(a.square(), "trace");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

Matrix kron_identity(std::size_t n, const Matrix& block) {
  Matrix c(n * block.rows(), n * block.cols());
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        c(q * block.rows() + i, q * block.cols() + j) = block(i, j);
  return c;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), "hstack");
  Matrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  require(a.cols() == b.cols(), "vstack");
  Matrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

double max_abs(const Tensor3& t) { return max_abs(t.data()); }

Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
  require(a.dim0() == b.dim0() && a.dim1() == b.dim1() && a.dim2() == b.dim2(), "tensor sub");
  Tensor3 c(a);
  for (std::size_t i = 0; i < a.dim0(); ++i)
    for (std::size_t j = 0; j < a.dim1(); ++j)
      for (std::size_t k = 0; k < a.dim2(); ++k) c(i, j, k) -= b(i, j, k);
  return c;
}

Tensor3 operator+(const Tensor3& a, const Tensor3& b) { return a - (-1.0) * b; }

Tensor3 operator*(double s, const Tensor3& t) {
  Tensor3 c(t);
  for (std::size_t i = 0; i < t.dim0(); ++i)
    for (std::size_t j = 0; j < t.dim1(); ++j)
      for (std::size_t k = 0; k < t.dim2(); ++k) c(i, j, k) *= s;
  return c;
}

Vector bilinear_apply(const Tensor3& a, const Vector& x, const Vector& y) {
  require(x.size() == a.dim0() && y.size() == a.dim1(), "bilinear_apply");
  Vector out(a.dim2(), 0.0);
  for (std::size_t i = 0; i < a.dim0(); ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < a.dim1(); ++j) {
      double w = x[i] * y[j];
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < a.dim2(); ++k) out[k] += w * a(i, j, k);
    }
  }
  return out;
}

double trilinear_eval(const Tensor3& t, const Vector& x, const Vector& y, const Vector& z) {
  require(x.size() == t.dim0() && y.size() == t.dim1() && z.size() == t.dim2(),
          "trilinear_eval");
  return dot(bilinear_apply(t, x, y), z);
}

Tensor3 transform_bilinear(const Tensor3& a, const Matrix& p, const Matrix& p_inv) {
  std::size_t n = p.cols();
  Tensor3 out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector v = p_inv * bilinear_apply(a, p.column(i), p.column(j));
      for (std::size_t k = 0; k < n; ++k) out(i, j, k) = v[k];
    }
  return out;
}

Tensor3 restrict_trilinear(const Tensor3& t, const Matrix& basis) {
  std::size_t n = basis.cols();
  std::vector<Vector> q(n);
  for (std::size_t a = 0; a < n; ++a) q[a] = basis.column(a);
  Tensor3 out(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector v = bilinear_apply(t, q[a], q[b]);
      for (std::size_t c = 0; c < n; ++c) out(a, b, c) = dot(v, q[c]);
    }
  return out;
}

}  // namespace nkv
