#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nkv/check_report.hpp"
#include "nkv/homogeneous.hpp"
#include "nkv/lagrangian.hpp"

namespace nkv {

// su(2) is realized as (R^3, x). A graph candidate is {X + AX} inside m in the
// e/f frame, i.e. proj_m{(x, Ax, 0)}.
struct GraphEntry {
  std::string label;
  Matrix a;
  bool lagrangian = false;   // A^t = A
  bool subalgebra = false;   // A[X,Y] = [AX,AY]
  double lagrangian_residual = 0.0;
  double subalgebra_residual = 0.0;
  Vector eigenvalues;        // of the symmetric part, descending
  std::string signature;     // e.g. "(+,-,-)"
  double det = 0.0;
  bool both() const { return lagrangian && subalgebra; }
};

GraphEntry check_graph(const Matrix& a, double tol = kDefaultTol, std::string label = {});

// Sign pattern of sorted eigenvalues; |lambda| <= zero_tol counts as 0.
std::string sign_signature(const Vector& eigenvalues_desc, double zero_tol = 1e-6);

struct FactorEntry {
  std::string label;  // "su(2)+0" or "0+su(2)"
  Matrix l_basis;     // m coordinates
  bool lagrangian = false;
  bool subalgebra = false;
};

struct ListedClassRow {
  std::string label;
  GraphEntry entry;
  bool found_by_enumeration = false;
  std::string verdict;  // "agrees" or a description of the disagreement
};

struct ClassificationResult {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t converged = 0;          // random starts that reached the constraint set
  std::vector<GraphEntry> solutions;  // one verified representative per signature, sorted
  std::vector<ListedClassRow> listed_classes;
  std::vector<FactorEntry> factors;
  std::vector<std::string> discrepancies;
};

// samples >= 1000; throws BadInput otherwise.
ClassificationResult enumerate_solutions(std::size_t samples, std::uint64_t seed,
                                         double tol = kDefaultTol);

// Lagrangian spanned by proj_m{(x, Ax, 0)}, columns in m coordinates.
Matrix graph_subspace(const ThreeSymmetricSpace& t, const Matrix& a);

// C = 0 for every both-flag solution and both factors; each is also checked
// through make_lagrangian and lemma1 on the model of t.
CheckSuite verify_totally_geodesic(const ClassificationResult& r, const ThreeSymmetricSpace& t,
                                   double tol = kDefaultTol);

// omega in the e/f frame: no e^e or f^f terms, e^f proportional to the identity.
struct EfFrameReport {
  Matrix e, f;      // columns in m coordinates
  double c = 0.0;   // omega(e_i, f_i)
  CheckSuite checks;
};
EfFrameReport ef_frame(const ThreeSymmetricSpace& t);

// Flags of R A R^t agree with flags of A for `count` random rotations.
CheckReport graph_equivariance(const Matrix& a, std::size_t count, std::uint64_t seed,
                               double tol = kDefaultTol);
Matrix random_rotation(std::uint64_t seed);

}  // namespace nkv
