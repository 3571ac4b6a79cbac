#pragma once

#include <cstddef>

#include "nkv/check_report.hpp"
#include "nkv/lagrangian.hpp"
#include "nkv/nk_model.hpp"

namespace nkv {

// Synthetic infinitesimal twistor model on H + V = H^n + R^2. Coordinates:
// quaternion q occupies 4q..4q+3 (1, i, j, k), then u = 4n, v = 4n + 1.
struct TwistorModel {
  std::size_t n = 0;
  double kappa = 0.0;
  NKModel model;
  Matrix horizontal;  // d x 4n
  Matrix vertical;    // d x 2, columns u, v
  Matrix I, Jq, K;    // left multiplication by i, j, k on H coordinates
  std::size_t u_index() const { return 4 * n; }
  std::size_t v_index() const { return 4 * n + 1; }
};

// left multiplication by the unit quaternion (q0,q1,q2,q3) on H
Matrix quaternion_left(std::size_t n, double q0, double q1, double q2, double q3);

TwistorModel build_twistor_model(std::size_t n, double kappa, double tol = kDefaultTol);

// Containments T(H,H) in V, T(H,V) in H, T(V,V) = 0 and surjectivity of X -> T(Y,X).
CheckSuite check_torsion_axioms(const NKModel& m, const Matrix& h, const Matrix& v);
CheckSuite check_torsion_axioms(const TwistorModel& t);

struct PhiMap {
  Matrix phi_w;  // X -> T(W,X) on H coordinates
  CheckSuite checks;
};

// W in model coordinates, unit and vertical; throws NotVertical otherwise.
PhiMap phi_maps(const NKModel& m, const Matrix& h, const Matrix& v, const Vector& w, double kappa);
PhiMap phi_maps(const TwistorModel& t, const Vector& w);

struct BlockStructure {
  Matrix d;        // unit vector spanning L cap V
  Matrix d_perp;   // L cap H
  Matrix adapted;  // columns d_perp then d, an orthonormal basis of L
  CheckSuite checks;
};

BlockStructure lagrangian_block_structure(const TwistorModel& t, const LagrangianSubspace& l);

// Constraint rows over Sym^3 coordinates in the adapted basis.
struct TheoremBSystem {
  Matrix block;     // C(x,U,.) = 0 for horizontal x
  Matrix pluri;     // C(Phi X, Phi Y, Z) + C(X,Y,Z) = 0
  Matrix cyc2;      // cyc2 for the restricted torsion
  Matrix trace;     // h(Z)
  Matrix vertical;  // C(U, a, b)
  Matrix phi;       // normalized Phi on D_perp coordinates
};

struct ContainmentSummary {
  std::size_t dimension = 0;  // dimension of the constrained space
  bool trace_contained = false;
  bool vertical_contained = false;
};

struct TheoremBReport {
  CheckSuite checks;
  TheoremBSystem system;
  ContainmentSummary constrained;  // symmetry + block + pluri + cyc2
  ContainmentSummary literal;      // symmetry + block + pluri
};

TheoremBReport theorem_b_linear_check(const TwistorModel& t, const LagrangianSubspace& l);
// max |row . C| over the rows of symmetry + block + pluri + cyc2
double theorem_b_constraint_residual(const TheoremBSystem& s, const CTensor& c);
CheckReport vertical_geodesic_note(const TwistorModel& t, const TheoremBReport* report);

// span{1_q, j_q for each q, u}
LagrangianSubspace twistor_explicit_lagrangian(const TwistorModel& t);

}  // namespace nkv
