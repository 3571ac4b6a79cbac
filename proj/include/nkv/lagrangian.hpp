#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "nkv/check_report.hpp"
#include "nkv/homogeneous.hpp"
#include "nkv/nk_model.hpp"

namespace nkv {

class LagrangianSubspace {
 public:
  const NKModel& model() const { return model_; }
  const Matrix& basis() const { return basis_; }  // d x n, orthonormal columns
  std::size_t dim() const { return basis_.cols(); }
  Matrix normal_basis() const { return model_.J() * basis_; }
  // coefficients of a vector of the model in the basis (orthogonal projection)
  Vector coordinates(const Vector& x) const { return basis_.transpose() * x; }

 private:
  LagrangianSubspace(NKModel m, Matrix basis) : model_(std::move(m)), basis_(std::move(basis)) {}
  friend LagrangianSubspace make_lagrangian(const NKModel& m, const Matrix& spanning);
  NKModel model_;
  Matrix basis_;
};

// spanning vectors are the columns, in the model's orthonormal frame.
LagrangianSubspace make_lagrangian(const NKModel& m, const Matrix& spanning);

struct SamplerStats {
  int iterations = 0;
  int restarts = 0;
  double final_residual = 0.0;
};

// Greedy omega-Lagrangian frame refined over U(n) until the cubic form
// g(A(X,Y),Z) vanishes on L (max |.| < 1e-13). Deterministic per seed.
LagrangianSubspace random_lagrangian(const NKModel& m, std::uint64_t seed,
                                     SamplerStats* stats = nullptr);
// The greedy construction alone (omega|L = 0 only).
LagrangianSubspace greedy_lagrangian(const NKModel& m, std::uint64_t seed);

CheckSuite lemma1_check(const LagrangianSubspace& l);

// T restricted to L: t(a,b,c) = <T(x_a,x_b), x_c>; normal_leakage is the largest
// normal component of T(x_a,x_b).
struct LagrangianTorsion {
  Tensor3 t;
  double normal_leakage = 0.0;
};

LagrangianTorsion restrict_torsion(const LagrangianSubspace& l);
// torsion on a 3-dim space of the form a * eps_ijk
LagrangianTorsion volume_torsion(double a);

CTensor c_from_invariant(const ThreeSymmetricSpace& t, const LagrangianSubspace& l);

CheckReport check_c_symmetry(const CTensor& c, double tol = kDefaultTol);

struct TraceTensors {
  Matrix alpha;  // alpha(X,Y) = sum_i C(e_i, X, T(e_i,Y))
  Tensor3 beta;  // beta(X,Y,Z) = sum_i C(T(e_i,X), Y, T(e_i,Z))
  Vector h;      // h(Z) = sum_i C(e_i, e_i, Z)
};

TraceTensors trace_tensors(const CTensor& c, const LagrangianTorsion& t, double tol = kDefaultTol);

struct CyclicResiduals {
  double cyc2 = 0.0;
  double mean = 0.0;
  double beta_swap = 0.0;   // beta(X,Y,Z) = beta(Z,Y,X)
  double beta_shift = 0.0;  // beta(X,Y,Z) = beta(Y,X,Z) + alpha(T(Y,X),Z)
  double beta2 = 0.0;       // cyclic sum of alpha(T(X,Y),Z)
};

// No precondition; used for counterexamples.
CyclicResiduals cyclic_identity_residuals(const CTensor& c, const LagrangianTorsion& t);
// Throws Cyc2Violated unless the cyc2 residual is within tol.
CheckSuite check_cyclic_identities(const CTensor& c, const LagrangianTorsion& t,
                                   double tol = kDefaultTol);

// Totally symmetric cubic forms on R^n in coordinates indexed by sorted triples i <= j <= k.
std::vector<std::array<std::size_t, 3>> sym3_index(std::size_t n);
CTensor sym3_to_tensor(std::size_t n, const Vector& coeffs);
// Matrix of a linear map on Sym^3: column t is f applied to the t-th basis tensor.
Matrix sym3_linear_map(std::size_t n, const std::function<Vector(const Tensor3&)>& f);

// rows: the cyc2 identity over all (X,Y,Z,V)
Matrix cyc2_constraints(const Tensor3& t);
// rows: h(Z) for each Z
Matrix mean_curvature_functionals(std::size_t n);
// rows: alpha(X,Y) for each (X,Y)
Matrix alpha_trace_functionals(const Tensor3& t);

struct AdmissibleSpace {
  std::size_t n = 0;
  Matrix constraints;  // rows over Sym^3 coordinates
  Matrix basis;        // columns: Sym^3 coordinates of a basis of the solution space
  std::size_t rank = 0;
  std::size_t dimension() const { return basis.cols(); }
  CTensor element(std::size_t i) const { return sym3_to_tensor(n, basis.column(i)); }
};

inline constexpr double kRankRelTol = 1e-9;

AdmissibleSpace admissible_c_space(const LagrangianTorsion& t, double tol = kDefaultTol);

CheckSuite theorem_a_check(const NKModel& m, const LagrangianSubspace& l);

struct SplitGroup {
  double eigenvalue;
  std::size_t multiplicity;
  std::size_t dim_in_l;
};

struct SplitResult {
  Matrix l_k;    // L cap ker r
  Matrix l_snk;  // L cap (ker r)^perp
  std::vector<SplitGroup> groups;
  double leakage = 0.0;
  CheckSuite checks;
};

// Throws RNotReducing when r(TL) leaves TL.
SplitResult split_by_r(const LagrangianSubspace& l);

struct SpectrumSplit {
  Matrix l1, l2;  // model coordinates
  CheckSuite checks;
};

// The model must be a product; the first block is the first factor.
SpectrumSplit split_by_spectrum(const LagrangianSubspace& l);

}  // namespace nkv
