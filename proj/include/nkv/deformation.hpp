#pragma once

#include <array>
#include <optional>
#include <string>

#include "nkv/check_report.hpp"
#include "nkv/homogeneous.hpp"
#include "nkv/lagrangian.hpp"

namespace nkv {

// Star operator of a 3-dim Lagrangian in a strict 6-dim model, in an
// orthonormal basis of L. The orientation is the sign of a, where
// tau|L = a e^123.
struct StarOperator {
  double a = 0.0;
  double alpha = 0.0;
  double orientation = 1.0;
  std::array<Matrix, 4> star;  // star[p]: Lambda^p -> Lambda^{3-p}
  CheckSuite checks;           // star-squared, star-one-form, volume-coefficient
};

// Throws NotDimension6, NotStrict or DegenerateTorsion.
StarOperator build_star(const LagrangianSubspace& l);

// Invariant forms of a 3-dim Lie algebra acting on L: d, delta = (-1)^p * d *,
// Laplacian on 1-forms.
struct InvariantComplex {
  Tensor3 c;                  // transported bracket on the orthonormal basis of L
  std::array<Matrix, 3> d;    // d[p]: Lambda^p -> Lambda^{p+1}
  std::array<Matrix, 4> delta;  // delta[p]: Lambda^p -> Lambda^{p-1}, delta[0] empty
  Matrix laplacian1;
  CheckSuite checks;          // d-squared
};

InvariantComplex build_invariant_complex(const Tensor3& c, const StarOperator& star, double tol);

// dtheta = 3 sqrt(alpha) * theta
CheckReport deformation_constraint(const Vector& theta, const StarOperator& star,
                                   const InvariantComplex& cx, double tol);

struct DeformationSpectrum {
  Matrix solutions;  // columns: 1-forms solving the constraint
  double lambda = 0.0;
  double scalar_curvature = 0.0;
  double ratio = 0.0;  // lambda / s
  CheckSuite checks;
  std::size_t dimension() const { return solutions.cols(); }
};

DeformationSpectrum deformation_spectrum(const StarOperator& star, const InvariantComplex& cx,
                                         double tol);

// Operator identities behind the eigenvalue: ** = Id, *D = 3 sqrt(alpha) Id for
// D = 3 sqrt(alpha) *, (*D)^2 = 9 alpha Id.
CheckSuite eigenvalue_chain_check(const StarOperator& star, double tol);

// A homogeneous Lagrangian presented as the orbit of a subalgebra k of g.
struct InvariantLagrangian {
  std::string presentation;
  LagrangianSubspace l;
  Tensor3 bracket;  // [x_a, x_b] transported from k, on the orthonormal basis of L
};

// k_basis columns in g coordinates. Throws NotSubalgebra, NotLagrangian or
// Degenerate (k meets h).
InvariantLagrangian invariant_lagrangian_from_subalgebra(const ThreeSymmetricSpace& t,
                                                         const NKModel& model,
                                                         const Matrix& k_basis,
                                                         std::string presentation);

}  // namespace nkv
