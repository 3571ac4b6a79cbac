#include "nkv/lie_examples.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nkv {

namespace {

Matrix elementary_so5(std::size_t i, std::size_t j) {
  Matrix e(5, 5);
  e(i, j) = 1.0;
  e(j, i) = -1.0;
  return e;
}

std::vector<Matrix> so5_basis() {
  std::vector<Matrix> basis;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) basis.push_back(elementary_so5(i, j));
  return basis;
}

double frobenius(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * b(i, j);
  return s;
}

Matrix plane_rotation(double angle) {
  Matrix g = Matrix::identity(5);
  double c = std::cos(angle), s = std::sin(angle);
  for (std::size_t p : {0u, 2u}) {
    g(p, p) = c;
    g(p, p + 1) = -s;
    g(p + 1, p) = s;
    g(p + 1, p + 1) = c;
  }
  return g;
}

}  // namespace

LieAlgebra su2_cubed() {
  LieAlgebra g{Tensor3(9)};
  for (std::size_t f = 0; f < 3; ++f)
    for (std::size_t i = 0; i < 3; ++i) {
      std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
      g.c(3 * f + i, 3 * f + j, 3 * f + k) = 2.0;
      g.c(3 * f + j, 3 * f + i, 3 * f + k) = -2.0;
    }
  return g;
}

Matrix su2_cubed_cycle() {
  Matrix s(9, 9);
  for (std::size_t f = 0; f < 3; ++f)
    for (std::size_t i = 0; i < 3; ++i) s(3 * ((f + 1) % 3) + i, 3 * f + i) = 1.0;
  return s;
}

ThreeSymmetricSpace s3s3_space(double scale, double tol) {
  return decompose(su2_cubed(), su2_cubed_cycle(), std::nullopt, scale, tol);
}

LieAlgebra so5() {
  auto basis = so5_basis();
  const std::size_t n = basis.size();
  LieAlgebra g{Tensor3(n)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Matrix br = basis[a] * basis[b] - basis[b] * basis[a];
      for (std::size_t k = 0; k < n; ++k) g.c(a, b, k) = 0.5 * frobenius(br, basis[k]);
    }
  return g;
}

Matrix so5_cp3_automorphism() {
  auto basis = so5_basis();
  Matrix rot = plane_rotation(2.0 * std::numbers::pi / 3.0);
  Matrix s(basis.size(), basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    Matrix img = rot * basis[a] * rot.transpose();
    for (std::size_t k = 0; k < basis.size(); ++k) s(k, a) = 0.5 * frobenius(img, basis[k]);
  }
  return s;
}

ThreeSymmetricSpace cp3_space(double scale, double tol) {
  return decompose(so5(), so5_cp3_automorphism(), std::nullopt, scale, tol);
}

Matrix so5_squashed_form(double horizontal_factor) {
  Matrix b = -1.0 * so5().killing_form();
  Matrix d = Matrix::identity(b.rows());
  std::size_t a = 0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j, ++a)
      if (j == 4) d(a, a) = std::sqrt(horizontal_factor);
  return d * b * d;
}

NKModel build_s3s3(double scale, double tol) {
  std::string name = scale == 1.0 ? "s3s3" : "s3s3:" + std::to_string(scale);
  return to_nk_model(s3s3_space(scale, tol), name);
}

NKModel build_cp3(double scale, double tol) {
  std::string name = scale == 1.0 ? "cp3" : "cp3:" + std::to_string(scale);
  return to_nk_model(cp3_space(scale, tol), name);
}

ThreeSymmetricSpace abelian_plane_space(double tol) {
  LieAlgebra g{Tensor3(2)};
  double c = std::cos(2.0 * std::numbers::pi / 3.0), s = std::sin(2.0 * std::numbers::pi / 3.0);
  Matrix rot{{c, -s}, {s, c}};
  return decompose(g, rot, Matrix::identity(2), 1.0, tol);
}

}  // namespace nkv
