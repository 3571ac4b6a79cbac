#include <doctest.h>

#include <cmath>

#include "nkv/errors.hpp"
#include "nkv/exterior.hpp"
#include "nkv/linalg.hpp"
#include "nkv/octonion.hpp"
#include "nkv/random.hpp"
#include "nkv/tensor.hpp"

using namespace nkv;

namespace {

Matrix random_symmetric(Rng& rng, std::size_t n) {
  Matrix g = rng.normal_matrix(n, n);
  return 0.5 * (g + g.transpose());
}

// quaternion product on 4-vectors (1, i, j, k)
Vector qmul(const Vector& a, const Vector& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}
Vector qconj(const Vector& a) { return {a[0], -a[1], -a[2], -a[3]}; }

// (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c))
Vector cayley_dickson(const Vector& x, const Vector& y) {
  Vector a(x.begin(), x.begin() + 4), b(x.begin() + 4, x.end());
  Vector c(y.begin(), y.begin() + 4), d(y.begin() + 4, y.end());
  Vector lo = qmul(a, c) - qmul(qconj(d), b);
  Vector hi = qmul(d, a) + qmul(b, qconj(c));
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;
}

}  // namespace

TEST_CASE("matrix arithmetic") {
  Matrix a{{1, 2}, {3, 4}};
  Matrix b{{0, 1}, {1, 0}};
  Matrix ab = a * b;
  CHECK(ab(0, 0) == 2);
  CHECK(ab(1, 1) == 3);
  CHECK(trace(a) == 5);
  CHECK(a.transpose()(0, 1) == 3);
  Vector x = a * Vector{1, 1};
  CHECK(x[0] == 3);
  CHECK(x[1] == 7);
  CHECK(bilinear(a, {1, 0}, {0, 1}) == 2);
  CHECK_THROWS_AS(a * Matrix(3, 3), NkError);
  Matrix h = hstack(a, b);
  CHECK(h.cols() == 4);
  CHECK(vstack(Matrix(), a).rows() == 2);
  Matrix k = kron_identity(2, a);
  CHECK(k(2, 3) == 2);
  CHECK(k(0, 2) == 0);
}

TEST_CASE("cross3 and bilinear maps") {
  Vector e1{1, 0, 0}, e2{0, 1, 0};
  CHECK(cross3(e1, e2)[2] == 1);
  Tensor3 t(3);
  t(0, 1, 2) = 1;
  t(1, 0, 2) = -1;
  CHECK(bilinear_apply(t, e1, e2)[2] == 1);
  CHECK(trilinear_eval(t, e1, e2, {0, 0, 1}) == 1);
}

TEST_CASE("solve and inverse") {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    Matrix a = rng.normal_matrix(5, 5) + 5.0 * Matrix::identity(5);
    CHECK(max_abs(a * inverse(a) - Matrix::identity(5)) < 1e-12);
  }
  CHECK_THROWS_AS(inverse(Matrix(2, 2)), NkError);
}

TEST_CASE("eigendecomposition reconstructs 100 random symmetric matrices") {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    std::size_t n = 2 + static_cast<std::size_t>(k % 7);
    Matrix m = random_symmetric(rng, n);
    SymEigResult e = sym_eigendecomposition(m, 1e-12);
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = e.eigenvalues[i];
    CHECK(max_abs(e.eigenvectors * d * e.eigenvectors.transpose() - m) < 1e-12);
    CHECK(max_abs(e.eigenvectors.transpose() * e.eigenvectors - Matrix::identity(n)) < 1e-12);
    for (std::size_t i = 1; i < n; ++i) CHECK(e.eigenvalues[i - 1] <= e.eigenvalues[i]);
  }
  CHECK_THROWS_AS(sym_eigendecomposition(Matrix{{0, 1}, {0, 0}}, 1e-9), NkError);
}

TEST_CASE("eigenvalue grouping") {
  Matrix m(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1 + 1e-10;
  m(2, 2) = 3;
  m(3, 3) = 3;
  auto groups = group_eigenvalues(sym_eigendecomposition(m, 1e-12), 1e-7);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].multiplicity == 2);
  CHECK(groups[1].basis.cols() == 2);
}

TEST_CASE("svd, rank and nullspace") {
  Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    Matrix a = rng.normal_matrix(8, 3), b = rng.normal_matrix(3, 6);
    Matrix m = a * b;  // rank 3
    CHECK(numerical_rank(m, 1e-9) == 3);
    Matrix ns = nullspace(m, 1e-9);
    CHECK(ns.cols() == 3);
    CHECK(max_abs(m * ns) < 1e-10);
    CHECK(column_space(m, 1e-9).cols() == 3);
    // singular values squared are the eigenvalues of m^t m
    SvdResult s = svd(m);
    SymEigResult e = sym_eigendecomposition(m.transpose() * m, 1e-8);
    CHECK(std::abs(s.singular_values[0] * s.singular_values[0] - e.eigenvalues.back()) <
          1e-9 * e.eigenvalues.back());
  }
}

TEST_CASE("row space containment") {
  Matrix c{{1, 0, 0}, {0, 1, 0}};
  auto in = row_space_contains(c, Matrix{{2, 3, 0}}, 1e-9);
  CHECK(in.contained);
  auto out = row_space_contains(c, Matrix{{0, 0, 1}}, 1e-9);
  CHECK_FALSE(out.contained);
  CHECK(out.residual > 0.5);
}

TEST_CASE("Gram-Schmidt and subspace intersection") {
  Matrix v{{1, 1, 2}, {0, 1, 1}, {0, 0, 0}};
  Matrix q = gram_schmidt(v, 1e-12);
  CHECK(q.cols() == 2);
  CHECK(max_abs(q.transpose() * q - Matrix::identity(2)) < 1e-14);
  Matrix g{{2, 0}, {0, 3}};
  Matrix qg = gram_schmidt(Matrix::identity(2), g, 1e-12);
  CHECK(max_abs(qg.transpose() * g * qg - Matrix::identity(2)) < 1e-14);

  Matrix a = Matrix::identity(3).columns(0, 2);
  Matrix b = gram_schmidt(Matrix{{0, 1}, {1, 0}, {0, 1}}, 1e-12);
  Matrix i = intersect_subspaces(a, b);
  REQUIRE(i.cols() == 1);
  CHECK(std::abs(std::abs(i(1, 0)) - 1.0) < 1e-12);
  CHECK(orthogonal_complement(a, 1e-12).cols() == 1);
}

TEST_CASE("exterior algebra") {
  CHECK(permutation_sign({0, 1, 2}) == 1);
  CHECK(permutation_sign({1, 0, 2}) == -1);
  CHECK(permutation_sign({2, 0, 1}) == 1);
  CHECK(permutation_sign({1, 1, 0}) == 0);
  CHECK(increasing_multi_indices(4, 2).size() == 6);
  CHECK(multi_index_position(4, {1, 3}) == 4);
  // ** = (-1)^{p(n-p)}
  for (std::size_t n : {3u, 4u, 6u})
    for (std::size_t p = 0; p <= n; ++p) {
      Matrix ss = hodge_star_matrix(n, n - p, 1.0) * hodge_star_matrix(n, p, 1.0);
      double sign = (p * (n - p)) % 2 == 0 ? 1.0 : -1.0;
      CHECK(max_abs(ss - sign * Matrix::identity(ss.rows())) < 1e-15);
    }
  Matrix w{{0, 2}, {-2, 0}};
  ExteriorForm f = ExteriorForm::from_antisymmetric(w);
  CHECK(f.on_basis({0, 1}) == 2);
  CHECK(f.on_basis({1, 0}) == -2);
}

TEST_CASE("Maurer-Cartan d on su(2)") {
  Tensor3 c(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) c(i, j, k) = permutation_sign({i, j, k});
  Matrix d1 = maurer_cartan_d(c, 1), d2 = maurer_cartan_d(c, 2);
  CHECK(max_abs(d2 * d1) < 1e-15);
  // d e^3 (e_1, e_2) = -e^3([e_1, e_2]) = -1
  CHECK(d1(multi_index_position(3, {0, 1}), 2) == -1);
  CHECK(max_abs(maurer_cartan_d(c, 0)) == 0);
}

TEST_CASE("octonion table matches the Cayley-Dickson doubling of the quaternions") {
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      Vector p = octonion::multiply(basis_vector(8, i), basis_vector(8, j));
      Vector q = cayley_dickson(basis_vector(8, i), basis_vector(8, j));
      CHECK(max_abs(p - q) == 0.0);
    }
  Rng rng(17);
  for (int k = 0; k < 50; ++k) {
    Vector x = rng.normal_vector(8), y = rng.normal_vector(8);
    Vector xy = octonion::multiply(x, y);
    CHECK(max_abs(xy - cayley_dickson(x, y)) < 1e-12);
    CHECK(std::abs(norm(xy) - norm(x) * norm(y)) < 1e-12 * norm(x) * norm(y));
    // alternativity (xx)y = x(xy)
    CHECK(max_abs(octonion::multiply(octonion::multiply(x, x), y) -
                  octonion::multiply(x, octonion::multiply(x, y))) < 1e-10);
  }
}

TEST_CASE("seven dimensional cross product") {
  Rng rng(19);
  for (int k = 0; k < 50; ++k) {
    Vector u = rng.normal_vector(7), v = rng.normal_vector(7);
    Vector w = octonion::cross7(u, v);
    CHECK(std::abs(dot(w, u)) < 1e-12);
    CHECK(max_abs(w + octonion::cross7(v, u)) < 1e-12);
    double lag = dot(u, u) * dot(v, v) - dot(u, v) * dot(u, v);
    CHECK(std::abs(dot(w, w) - lag) < 1e-10 * (1.0 + lag));
  }
}

TEST_CASE("rng is reproducible") {
  Rng a(42), b(42);
  for (int k = 0; k < 10; ++k) CHECK(a.normal() == b.normal());
  Rng c(1);
  for (int k = 0; k < 1000; ++k) {
    double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
