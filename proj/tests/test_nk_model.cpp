#include <doctest.h>

#include <cmath>

#include "nkv/errors.hpp"
#include "nkv/nk_model.hpp"
#include "nkv/random.hpp"
#include "nkv/registry.hpp"

using namespace nkv;

namespace {

// Im(u v) for imaginary octonions from the Fano triples, written out independently
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

Vector tangent7(std::size_t t) { return basis_vector(7, t + 1); }

double max_residual(const CheckSuite& s) {
  double r = 0.0;
  for (const auto& c : s.checks) r = std::max(r, c.residual);
  return r;
}

// same data in input coordinates y = M^{-1} x
NKModel skewed_copy(const NKModel& m, const Matrix& M) {
  Matrix Mi = inverse(M);
  const std::size_t d = m.dim();
  Tensor3 a(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector v = Mi * m.apply_A(M.column(i), M.column(j));
      for (std::size_t k = 0; k < d; ++k) a(i, j, k) = v[k];
    }
  return NKModel("skewed", M.transpose() * M, Mi * m.J() * M, a);
}

}  // namespace

TEST_CASE("S6 model agrees with the octonion cross product oracle") {
  NKModel m = build_s6();
  Vector p = basis_vector(7, 0);
  for (std::size_t x = 0; x < 6; ++x) {
    Vector jx = fano_cross(p, tangent7(x));
    for (std::size_t k = 0; k < 6; ++k) CHECK(m.J()(k, x) == doctest::Approx(jx[k + 1]).epsilon(1e-15));
    for (std::size_t y = 0; y < 6; ++y) {
      Vector a = fano_cross(tangent7(x), tangent7(y));
      double jy_x = dot(tangent7(x), fano_cross(p, tangent7(y)));
      a = a + jy_x * p;
      CHECK(std::abs(a[0]) < 1e-15);  // A(X,Y) is tangent
      for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(m.A()(x, y, k) - a[k + 1]) < 1e-15);
    }
  }
}

TEST_CASE("identity suite on built-in models") {
  for (const char* name : {"flat-kahler:1", "flat-kahler:2", "flat-kahler:3", "s6", "s6:2", "s3s3", "cp3",
                           "twistor:1:1", "twistor:2:1", "twistor:3:0.5", "product:c1,s6"}) {
    CAPTURE(name);
    NKModel m = resolve_model(name);
    CHECK(m.name() == name);
    CheckSuite s = verify_model(m);
    CHECK(s.all_passed());
    CHECK(max_residual(s) <= 1e-9);
    TorsionData td = torsion(m);
    CHECK(td.checks.all_passed());
  }
}

TEST_CASE("type constant and r operator on S6") {
  for (double scale : {1.0, 2.0, 0.5}) {
    NKModel m = build_s6(scale);
    TypeConstantReport tc = type_constant(m);
    CHECK(tc.alpha_type == doctest::Approx(1.0 / scale).epsilon(1e-12));
    CHECK(tc.scalar_curvature == doctest::Approx(30.0 / scale).epsilon(1e-12));
    CHECK(tc.is_strict);
    CHECK(tc.reliable);
    ROperatorReport r = r_operator(m);
    CHECK(r.checks.all_passed());
    CHECK(max_abs(r.r - (4.0 / scale) * Matrix::identity(6)) < 1e-12);
  }
}

TEST_CASE("Koto sum against a direct contraction") {
  NKModel m = resolve_model("product:c1,s6");
  Matrix r = koto_r(m);
  const std::size_t d = m.dim();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += dot(m.apply_A(basis_vector(d, a), basis_vector(d, i)),
                                                   m.apply_A(basis_vector(d, b), basis_vector(d, i)));
      CHECK(std::abs(r(a, b) - s) < 1e-14);
    }
  ROperatorReport rep = r_operator(m);
  CHECK(rep.kernel_dim == 2);
  CHECK_FALSE(rep.is_strict);
}

TEST_CASE("flat model is Kaehler") {
  NKModel m = build_flat_kahler(3);
  ROperatorReport r = r_operator(m);
  CHECK(r.kernel_dim == 6);
  CHECK_FALSE(type_constant(m).is_strict);
  CHECK(max_abs(torsion(m).T) == 0.0);
}

TEST_CASE("torsion is a 3-form with tau = -g(J A)") {
  NKModel m = build_s6();
  TorsionData td = torsion(m);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      Vector t = -1.0 * (m.J() * m.apply_A(basis_vector(6, i), basis_vector(6, j)));
      for (std::size_t k = 0; k < 6; ++k) {
        CHECK(std::abs(td.T(i, j, k) - t[k]) < 1e-15);
        CHECK(std::abs(td.tau(i, j, k) + td.tau(j, i, k)) < 1e-15);
        CHECK(std::abs(td.tau(i, j, k) + td.tau(i, k, j)) < 1e-15);
      }
    }
}

TEST_CASE("a non-orthonormal input frame is normalized") {
  Rng rng(23);
  NKModel base = build_s6();
  for (int k = 0; k < 10; ++k) {
    Matrix M = rng.normal_matrix(6, 6) + 3.0 * Matrix::identity(6);
    NKModel m = skewed_copy(base, M);
    CHECK(verify_model(m).all_passed());
    CHECK(max_abs(m.metric() - Matrix::identity(6)) == 0.0);
    CHECK(type_constant(m).alpha_type == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(max_abs(r_operator(m).r - 4.0 * Matrix::identity(6)) < 1e-9);
    // frame maps orthonormal coordinates back to input coordinates
    Matrix g = M.transpose() * M;
    CHECK(max_abs(m.frame().transpose() * g * m.frame() - Matrix::identity(6)) < 1e-9);
  }
}

TEST_CASE("construction errors") {
  NKModel s6 = build_s6();
  CHECK_THROWS_AS(NKModel("odd", Matrix::identity(3), Matrix(3, 3), Tensor3(3)), NkError);
  try {
    NKModel("bad", -1.0 * Matrix::identity(6), s6.J(), s6.A());
    FAIL("expected BadMetric");
  } catch (const NkError& e) {
    CHECK(e.kind() == ErrorKind::BadMetric);
  }
  Tensor3 broken = s6.A();
  broken(0, 2, 4) += 0.5;
  NKModel b("broken", Matrix::identity(6), s6.J(), broken);
  CheckSuite s = verify_model(b);
  CHECK_FALSE(s.all_passed());
  CHECK(s.find("nk1")->status == Status::Fail);
  try {
    require_valid(b);
    FAIL("expected ModelInvalid");
  } catch (const NkError& e) {
    CHECK(e.kind() == ErrorKind::ModelInvalid);
  }
}

TEST_CASE("products") {
  NKModel p = build_product(build_flat_kahler(1), build_s6());
  REQUIRE(p.blocks().size() == 2);
  CHECK(p.blocks()[0] == 2);
  CHECK(p.blocks()[1] == 6);
  ROperatorReport r = r_operator(p);
  REQUIRE(r.spectrum.size() == 2);
  CHECK(r.spectrum[0].multiplicity == 2);
  CHECK(r.spectrum[1].eigenvalue == doctest::Approx(4.0));
}

TEST_CASE("registry errors") {
  CHECK_THROWS_AS(resolve_model("nosuch"), NkError);
  CHECK_THROWS_AS(resolve_model("flat-kahler:0"), NkError);
  CHECK_THROWS_AS(resolve_model("s6:-1"), NkError);
  CHECK_THROWS_AS(resolve_model("product:s6"), NkError);
  CHECK(resolve_model("c2").dim() == 4);
  CHECK(resolve_model("product:c1,product:c1,s6").dim() == 10);
}
