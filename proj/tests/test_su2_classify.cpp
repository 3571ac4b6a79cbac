#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nkv/errors.hpp"
#include "nkv/lie_examples.hpp"
#include "nkv/linalg.hpp"
#include "nkv/random.hpp"
#include "nkv/su2_classify.hpp"

using namespace nkv;

namespace {

Matrix diag3(double a, double b, double c) { return Matrix{{a, 0, 0}, {0, b, 0}, {0, 0, c}}; }

double det3(const Matrix& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// brute force: does A intertwine lambda * cross on the basis pairs
bool bracket_oracle(const Matrix& a, double lambda) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Vector x = basis_vector(3, i), y = basis_vector(3, j);
      if (max_abs(a * (lambda * cross3(x, y)) - lambda * cross3(a * x, a * y)) > 1e-12) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("graph flags by direct evaluation") {
  GraphEntry id = check_graph(Matrix::identity(3));
  CHECK(id.lagrangian);
  CHECK(id.subalgebra);
  CHECK(id.signature == "(+,+,+)");
  GraphEntry rot = check_graph(diag3(1, -1, -1));
  CHECK(rot.both());
  CHECK(rot.signature == "(+,-,-)");
  GraphEntry refl = check_graph(diag3(1, 1, -1));
  CHECK(refl.lagrangian);
  CHECK_FALSE(refl.subalgebra);
  // A(e1 x e2) = -e3 while (A e1) x (A e2) = e3
  Matrix a = diag3(1, 1, -1);
  CHECK((a * cross3(basis_vector(3, 0), basis_vector(3, 1)))[2] == -1.0);
  CHECK(cross3(a * basis_vector(3, 0), a * basis_vector(3, 1))[2] == 1.0);
  GraphEntry minus = check_graph(diag3(-1, -1, -1));
  CHECK(minus.lagrangian);
  CHECK_FALSE(minus.subalgebra);
  GraphEntry skew = check_graph(Matrix{{0, 1, 0}, {-1, 0, 0}, {0, 0, 1}});
  CHECK_FALSE(skew.lagrangian);
  CHECK_THROWS_AS(check_graph(Matrix::identity(2)), NkError);
}

TEST_CASE("orthogonal maps scale the bracket by their determinant") {
  Rng rng(77);
  for (int k = 0; k < 50; ++k) {
    Matrix r = random_rotation(rng.normal() > 0 ? 1000 + k : 2000 + k);
    CHECK(std::abs(det3(r) - 1.0) < 1e-12);
    Matrix q = r * diag3(1, 1, -1);
    Vector x = rng.normal_vector(3), y = rng.normal_vector(3);
    CHECK(max_abs(cross3(q * x, q * y) + q * cross3(x, y)) < 1e-12);
    CHECK(max_abs(cross3(r * x, r * y) - r * cross3(x, y)) < 1e-12);
  }
}

TEST_CASE("a bracket scale does not change the flags") {
  for (const Matrix& a : {Matrix::identity(3), diag3(1, -1, -1), diag3(1, 1, -1), diag3(-1, -1, -1), diag3(0, 0, 0)}) {
    bool base = check_graph(a).subalgebra;
    for (double lambda : {0.5, 2.0, 3.0}) CHECK(bracket_oracle(a, lambda) == base);
  }
}

TEST_CASE("equivariance under rotations") {
  Rng rng(5);
  std::vector<Matrix> cands{Matrix::identity(3), diag3(1, -1, -1), diag3(1, 1, -1), diag3(-1, -1, -1)};
  for (int k = 0; k < 5; ++k) {
    Matrix g = rng.normal_matrix(3, 3);
    cands.push_back(0.5 * (g + g.transpose()));
  }
  for (std::size_t i = 0; i < cands.size(); ++i) CHECK(graph_equivariance(cands[i], 50, 100 + i).passed());
}

TEST_CASE("enumeration of solution classes") {
  CHECK_THROWS_AS(enumerate_solutions(999, 1), NkError);
  ClassificationResult r = enumerate_solutions(1000, 42);
  CHECK(r.converged > 0);
  std::vector<std::string> sigs;
  for (const GraphEntry& e : r.solutions) {
    sigs.push_back(e.signature);
    GraphEntry again = check_graph(e.a);
    CHECK(again.both());
    // nonzero solutions are involutions; the zero map is the first factor
    if (e.signature != "(0,0,0)") CHECK(max_abs(e.a * e.a - Matrix::identity(3)) < 1e-9);
  }
  CHECK(std::find(sigs.begin(), sigs.end(), "(+,+,+)") != sigs.end());
  CHECK(std::find(sigs.begin(), sigs.end(), "(+,-,-)") != sigs.end());
  REQUIRE(r.listed_classes.size() == 4);
  CHECK(r.listed_classes[0].verdict == "agrees");
  CHECK(r.listed_classes[2].verdict == "agrees");
  CHECK(r.listed_classes[1].verdict != "agrees");
  CHECK(r.listed_classes[3].verdict != "agrees");
  CHECK(r.discrepancies.size() == 2);
  REQUIRE(r.factors.size() == 2);
  for (const FactorEntry& f : r.factors) {
    CHECK(f.lagrangian);
    CHECK(f.subalgebra);
  }
  // deterministic
  ClassificationResult r2 = enumerate_solutions(1000, 42);
  CHECK(r2.converged == r.converged);
  CHECK(r2.solutions.size() == r.solutions.size());
}

TEST_CASE("solutions are totally geodesic") {
  ThreeSymmetricSpace t = s3s3_space();
  ClassificationResult r = enumerate_solutions(1000, 3);
  CheckSuite s = verify_totally_geodesic(r, t, 1e-12);
  CHECK(s.all_passed());
  CHECK(s.checks.size() == r.solutions.size() + 2);
}

TEST_CASE("omega in the e/f frame") {
  EfFrameReport ef = ef_frame(s3s3_space());
  CHECK(ef.checks.all_passed());
  CHECK(std::abs(std::abs(ef.c) - 8.0 / std::sqrt(3.0)) < 1e-12);
  EfFrameReport ef2 = ef_frame(s3s3_space(2.0));
  CHECK(std::abs(std::abs(ef2.c) - 16.0 / std::sqrt(3.0)) < 1e-12);
}
