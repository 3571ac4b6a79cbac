#include <doctest.h>

#include <cmath>

#include "nkv/deformation.hpp"
#include "nkv/errors.hpp"
#include "nkv/exterior.hpp"
#include "nkv/lie_examples.hpp"
#include "nkv/linalg.hpp"
#include "nkv/random.hpp"
#include "nkv/registry.hpp"

using namespace nkv;

namespace {

Vector fano_cross(const Vector& u, const Vector& v) {
  static const int lines[7][3] = {{1, 2, 3}, {1, 4, 5}, {2, 4, 6}, {3, 4, 7}, {1, 7, 6}, {2, 5, 7}, {3, 6, 5}};
  Vector w(7, 0.0);
  for (const auto& l : lines)
    for (int r = 0; r < 3; ++r) {
      int a = l[r] - 1, b = l[(r + 1) % 3] - 1, c = l[(r + 2) % 3] - 1;
      w[c] += u[a] * v[b] - u[b] * v[a];
    }
  return w;
}

// g((u x v) + <u, p x v> p, p x w)-free form: T(X,Y) = -p x A(X,Y) with A = tangential part of X x Y
Vector s6_torsion(std::size_t x, std::size_t y) {
  Vector p = basis_vector(7, 0);
  Vector a = fano_cross(basis_vector(7, x + 1), basis_vector(7, y + 1));
  a[0] = 0.0;
  return -1.0 * fano_cross(p, a);
}

Matrix k_matrix(std::initializer_list<int> signs) {
  Matrix k(9, 3);
  std::size_t f = 0;
  for (int s : signs) {
    for (std::size_t i = 0; i < 3; ++i) k(3 * f + i, i) = s;
    ++f;
  }
  return k;
}

struct Presented {
  StarOperator star;
  InvariantComplex cx;
};

Presented present(std::initializer_list<int> signs) {
  ThreeSymmetricSpace t = s3s3_space();
  NKModel m = resolve_model("s3s3");
  InvariantLagrangian il = invariant_lagrangian_from_subalgebra(t, m, k_matrix(signs), "k");
  StarOperator s = build_star(il.l);
  return {s, build_invariant_complex(il.bracket, s, 1e-9)};
}

}  // namespace

TEST_CASE("star operator on S6 against the octonion table") {
  NKModel m = build_s6();
  // tangent directions 0, 2, 5 are e2, e4, e7 with p = e1
  LagrangianSubspace l =
      make_lagrangian(m, Matrix::from_columns({basis_vector(6, 0), basis_vector(6, 2), basis_vector(6, 5)}, 6));
  StarOperator s = build_star(l);
  CHECK(s.checks.all_passed());
  CHECK(std::abs(s.alpha - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(s.a) - 1.0) < 1e-12);
  const std::size_t idx[3] = {0, 2, 5};
  auto pairs = increasing_multi_indices(3, 2);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      double t = dot(s6_torsion(idx[pairs[r][0]], idx[pairs[r][1]]), basis_vector(7, idx[k] + 1));
      CHECK(std::abs(s.star[1](r, k) - t / std::sqrt(s.alpha)) < 1e-12);
    }
  for (std::size_t p = 0; p <= 3; ++p)
    CHECK(max_abs(s.star[3 - p] * s.star[p] - Matrix::identity(s.star[p].cols())) < 1e-12);
}

TEST_CASE("star operator on random S6 and S3xS3 Lagrangians") {
  for (const char* name : {"s6", "s6:2", "s3s3"}) {
    NKModel m = resolve_model(name);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      CAPTURE(name);
      StarOperator s = build_star(random_lagrangian(m, seed));
      CHECK(s.checks.all_passed());
      CHECK(std::abs(s.a * s.a - s.alpha) < 1e-9);
      CHECK(eigenvalue_chain_check(s, 1e-9).all_passed());
    }
  }
}

TEST_CASE("star operator errors") {
  NKModel flat = build_flat_kahler(3);
  try {
    build_star(random_lagrangian(flat, 1));
    FAIL("expected DegenerateTorsion");
  } catch (const NkError& e) {
    CHECK(e.kind() == ErrorKind::DegenerateTorsion);
  }
  NKModel tw = resolve_model("twistor:2:1");
  try {
    build_star(random_lagrangian(tw, 1));
    FAIL("expected NotDimension6");
  } catch (const NkError& e) {
    CHECK(e.kind() == ErrorKind::NotDimension6);
  }
}

TEST_CASE("d squares to zero for several brackets") {
  Presented p = present({1, 1, 0});
  CHECK(p.cx.checks.all_passed());
  Rng rng(12);
  // su(2) scaled, a solvable algebra and the abelian one
  std::vector<Tensor3> brackets;
  Tensor3 su(3), sol(3), ab(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) su(i, j, k) = 3.0 * permutation_sign({i, j, k});
  sol(0, 1, 1) = 1;
  sol(1, 0, 1) = -1;
  sol(0, 2, 2) = 2;
  sol(2, 0, 2) = -2;
  for (const Tensor3& c : {su, sol, ab}) {
    InvariantComplex cx = build_invariant_complex(c, p.star, 1e-12);
    CHECK(cx.checks.all_passed());
    CHECK(max_abs(cx.d[1] * cx.d[0]) < 1e-14);
    CHECK(max_abs(cx.d[2] * cx.d[1]) < 1e-14);
  }
  CHECK_THROWS_AS(build_invariant_complex(Tensor3(4), p.star, 1e-12), NkError);
}

TEST_CASE("deformation constraint") {
  Presented p = present({1, 1, 0});
  CHECK(deformation_constraint(Vector(3, 0.0), p.star, p.cx, 1e-12).passed());
  Rng rng(3);
  for (int k = 0; k < 10; ++k) CHECK_FALSE(deformation_constraint(rng.normal_vector(3), p.star, p.cx, 1e-9).passed());
  CHECK_THROWS_AS(deformation_constraint(Vector(2, 0.0), p.star, p.cx, 1e-9), NkError);
}

TEST_CASE("deformation spectrum depends on the presentation") {
  Presented k1 = present({1, 1, 0});
  DeformationSpectrum s1 = deformation_spectrum(k1.star, k1.cx, 1e-9);
  CHECK(s1.dimension() == 0);
  CHECK(s1.checks.all_passed());

  Presented k3 = present({0, 0, 1});
  DeformationSpectrum s3 = deformation_spectrum(k3.star, k3.cx, 1e-9);
  CHECK(s3.dimension() == 3);
  CHECK(s3.checks.all_passed());
  CHECK(std::abs(k3.star.alpha - 1.0 / 12.0) < 1e-12);
  for (std::size_t j = 0; j < 3; ++j) {
    Vector th = s3.solutions.column(j);
    CHECK(max_abs(k3.cx.delta[1] * th) < 1e-12);
    CHECK(max_abs(k3.cx.laplacian1 * th - (9.0 * k3.star.alpha) * th) < 1e-12);
  }
  CHECK(s3.ratio == 0.3);
  CHECK(s3.lambda == doctest::Approx(0.75).epsilon(1e-12));

  Presented f1 = present({1, 0, 0});
  CHECK(deformation_spectrum(f1.star, f1.cx, 1e-9).dimension() == 3);
  Presented f23 = present({0, 1, 1});
  CHECK(deformation_spectrum(f23.star, f23.cx, 1e-9).dimension() == 0);
}

TEST_CASE("transported bracket is a multiple of the volume form") {
  ThreeSymmetricSpace t = s3s3_space();
  NKModel m = resolve_model("s3s3");
  for (auto signs : {std::initializer_list<int>{1, 1, 0}, {0, 0, 1}, {1, 0, 0}}) {
    InvariantLagrangian il = invariant_lagrangian_from_subalgebra(t, m, k_matrix(signs), "k");
    double lambda = il.bracket(0, 1, 2);
    CHECK(std::abs(lambda) > 0.1);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k)
          CHECK(std::abs(il.bracket(i, j, k) - lambda * permutation_sign({i, j, k})) < 1e-12);
  }
}

TEST_CASE("subalgebra presentation errors") {
  ThreeSymmetricSpace t = s3s3_space();
  NKModel m = resolve_model("s3s3");
  try {
    invariant_lagrangian_from_subalgebra(t, m, k_matrix({1, 1, 1}), "h");
    FAIL("expected Degenerate");
  } catch (const NkError& e) {
    CHECK(e.kind() == ErrorKind::Degenerate);
  }
  Matrix twisted = k_matrix({1, 1, 0});
  twisted(5, 2) = -1.0;  // (x, diag(1,1,-1) x, 0)
  try {
    invariant_lagrangian_from_subalgebra(t, m, twisted, "twisted");
    FAIL("expected NotSubalgebra");
  } catch (const NkError& e) {
    CHECK(e.kind() == ErrorKind::NotSubalgebra);
  }
}
