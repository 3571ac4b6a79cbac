#include <doctest.h>

#include <cmath>
#include <string>

#include "nkv/errors.hpp"
#include "nkv/lagrangian.hpp"
#include "nkv/lie_examples.hpp"
#include "nkv/linalg.hpp"
#include "nkv/random.hpp"
#include "nkv/registry.hpp"
#include "nkv/su2_classify.hpp"

using namespace nkv;

namespace {

// omega and the cubic form g(A(X,Y),Z) on L, evaluated directly
double isotropy_defect(const LagrangianSubspace& l) {
  const NKModel& m = l.model();
  const Matrix& q = l.basis();
  double r = 0.0;
  for (std::size_t a = 0; a < q.cols(); ++a)
    for (std::size_t b = 0; b < q.cols(); ++b) {
      r = std::max(r, std::abs(dot(m.J() * q.column(a), q.column(b))));
      for (std::size_t c = 0; c < q.cols(); ++c)
        r = std::max(r, std::abs(dot(m.apply_A(q.column(a), q.column(b)), q.column(c))));
    }
  return r;
}

CTensor random_symmetric_c(Rng& rng, std::size_t n) {
  auto idx = sym3_index(n);
  return sym3_to_tensor(n, rng.normal_vector(idx.size()));
}

// alpha, beta, h straight from their definitions
TraceTensors traces_oracle(const Tensor3& C, const Tensor3& T) {
  const std::size_t n = C.dim0();
  TraceTensors o{Matrix(n, n), Tensor3(n), Vector(n, 0.0)};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t w = 0; w < n; ++w) o.alpha(x, y) += C(i, x, w) * T(i, y, w);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) o.beta(x, y, z) += T(i, x, p) * C(p, y, q) * T(i, z, q);
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t i = 0; i < n; ++i) o.h[z] += C(i, i, z);
  return o;
}

}  // namespace

TEST_CASE("make_lagrangian validates its input") {
  NKModel m = build_s6();
  Matrix good = Matrix::from_columns({basis_vector(6, 0), basis_vector(6, 2), basis_vector(6, 5)}, 6);
  LagrangianSubspace l = make_lagrangian(m, good);
  CHECK(l.dim() == 3);
  CHECK(lemma1_check(l).all_passed());
  CHECK_THROWS_AS(make_lagrangian(m, good.columns(0, 2)), NkError);
  Matrix dependent = Matrix::from_columns({basis_vector(6, 0), basis_vector(6, 0), basis_vector(6, 5)}, 6);
  try {
    make_lagrangian(m, dependent);
    FAIL("expected BadInput");
  } catch (const NkError& e) {
    CHECK(e.kind() == ErrorKind::BadInput);
  }
  // J e_2 = e_3 in the S6 model, so omega(x_0, x_1) = 1
  Matrix bad = Matrix::from_columns({basis_vector(6, 0), basis_vector(6, 1), basis_vector(6, 2)}, 6);
  try {
    make_lagrangian(m, bad);
    FAIL("expected NotLagrangian");
  } catch (const NkError& e) {
    CHECK(e.kind() == ErrorKind::NotLagrangian);
    CHECK(std::string(e.what()).find("omega(x_0, x_1)") != std::string::npos);
  }
}

TEST_CASE("sampler produces Lagrangians on S6 and S3xS3") {
  for (const char* name : {"s6", "s3s3"}) {
    NKModel m = resolve_model(name);
    double alpha = type_constant(m).alpha_type;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      CAPTURE(name);
      CAPTURE(seed);
      LagrangianSubspace l = random_lagrangian(m, seed);
      CHECK(isotropy_defect(l) < 1e-12);
      CHECK(lemma1_check(l).all_passed());
      LagrangianTorsion lt = restrict_torsion(l);
      CHECK(lt.normal_leakage < 1e-10);
      double a = lt.t(0, 1, 2);
      CHECK(std::abs(a * a - alpha) < 1e-9);
    }
  }
  NKModel m = build_s6();
  CHECK(max_abs(random_lagrangian(m, 9).basis() - random_lagrangian(m, 9).basis()) == 0.0);
}

TEST_CASE("admissible C-space dimensions") {
  AdmissibleSpace s = admissible_c_space(volume_torsion(0.5));
  CHECK(s.dimension() == 7);
  CHECK(s.rank == 3);
  AdmissibleSpace flat = admissible_c_space(volume_torsion(0.0));
  CHECK(flat.dimension() == 10);
  auto tr = row_space_contains(s.constraints, mean_curvature_functionals(3), kRankRelTol);
  CHECK(tr.contained);
  auto tr_flat = row_space_contains(flat.constraints.rows() ? flat.constraints : Matrix(1, 10),
                                    mean_curvature_functionals(3), kRankRelTol);
  CHECK_FALSE(tr_flat.contained);
}

TEST_CASE("trace tensors agree with their definitions") {
  Rng rng(31);
  LagrangianTorsion t = volume_torsion(0.7);
  for (int k = 0; k < 20; ++k) {
    CTensor c = random_symmetric_c(rng, 3);
    CHECK(check_c_symmetry(c).passed());
    TraceTensors got = trace_tensors(c, t);
    TraceTensors want = traces_oracle(c.entries, t.t);
    CHECK(max_abs(got.alpha - want.alpha) < 1e-12);
    CHECK(max_abs(got.beta - want.beta) < 1e-12);
    CHECK(max_abs(got.h - want.h) < 1e-12);
    // alpha-trace vanishes for every symmetric C when T is a volume form
    CHECK(max_abs(got.alpha) < 1e-12);
  }
}

TEST_CASE("cyclic identities on the admissible space") {
  for (double a : {1.0, 0.3, -2.0}) {
    AdmissibleSpace s = admissible_c_space(volume_torsion(a));
    LagrangianTorsion t = volume_torsion(a);
    for (std::size_t i = 0; i < s.dimension(); ++i) {
      CheckSuite r = check_cyclic_identities(s.element(i), t);
      CHECK(r.all_passed());
      CHECK(r.max_residual() <= 1e-9);
    }
  }
}

TEST_CASE("cyc2 counterexample is rejected") {
  Rng rng(8);
  LagrangianTorsion t = volume_torsion(1.0);
  CTensor c = random_symmetric_c(rng, 3);
  CyclicResiduals r = cyclic_identity_residuals(c, t);
  CHECK(r.cyc2 > 1e-3);
  try {
    check_cyclic_identities(c, t);
    FAIL("expected Cyc2Violated");
  } catch (const NkError& e) {
    CHECK(e.kind() == ErrorKind::Cyc2Violated);
  }
}

TEST_CASE("minimality on S6 and S3xS3") {
  for (const char* name : {"s6", "s3s3"}) {
    NKModel m = resolve_model(name);
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
      CAPTURE(name);
      CheckSuite s = theorem_a_check(m, random_lagrangian(m, seed));
      CHECK(s.all_passed());
    }
  }
  NKModel flat = build_flat_kahler(3);
  CHECK_THROWS_AS(theorem_a_check(flat, random_lagrangian(flat, 1)), NkError);
  NKModel tw = resolve_model("twistor:2:1");
  try {
    theorem_a_check(tw, random_lagrangian(tw, 1));
    FAIL("expected NotDimension6");
  } catch (const NkError& e) {
    CHECK(e.kind() == ErrorKind::NotDimension6);
  }
}

TEST_CASE("splitting by r on c1 x S6") {
  NKModel m = resolve_model("product:c1,s6");
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    LagrangianSubspace l = random_lagrangian(m, seed);
    SplitResult s = split_by_r(l);
    CHECK(s.checks.all_passed());
    CHECK(s.l_k.cols() == 1);
    CHECK(s.l_snk.cols() == 3);
    CHECK(s.leakage <= 1e-8);
    for (const SplitGroup& g : s.groups) CHECK(2 * g.dim_in_l == g.multiplicity);
  }
}

TEST_CASE("omega-Lagrangian frames with nonzero cubic form need not reduce r") {
  NKModel m = resolve_model("product:c1,s6");
  int rejected = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    try {
      split_by_r(greedy_lagrangian(m, seed));
    } catch (const NkError& e) {
      CHECK(e.kind() == ErrorKind::RNotReducing);
      ++rejected;
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("splitting by spectrum recovers the factors") {
  NKModel m = resolve_model("product:s6,s6:2");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    LagrangianSubspace l = random_lagrangian(m, seed);
    SpectrumSplit s = split_by_spectrum(l);
    CHECK(s.checks.all_passed());
    CHECK(s.l1.cols() == 3);
    CHECK(s.l2.cols() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t i = 6; i < 12; ++i) CHECK(std::abs(s.l1(i, j)) < 1e-8);
      for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(s.l2(i, j)) < 1e-8);
    }
  }
  NKModel same = resolve_model("product:s6,s6");
  try {
    split_by_spectrum(random_lagrangian(same, 1));
    FAIL("expected SpectraOverlap");
  } catch (const NkError& e) {
    CHECK(e.kind() == ErrorKind::SpectraOverlap);
  }
}

TEST_CASE("C from the homogeneous structure vanishes on the diagonal") {
  ThreeSymmetricSpace t = s3s3_space();
  NKModel m = to_nk_model(t, "s3s3");
  Matrix lm = graph_subspace(t, Matrix::identity(3));
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < 3; ++j) cols.push_back(m.from_input_coordinates(lm.column(j)));
  LagrangianSubspace l = make_lagrangian(m, Matrix::from_columns(cols, 6));
  CHECK(max_abs(c_from_invariant(t, l).entries) < 1e-12);
}
