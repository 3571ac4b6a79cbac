#pragma once

#include <optional>
#include <string>

#include "nkv/check_report.hpp"
#include "nkv/nk_model.hpp"
#include "nkv/tensor.hpp"

namespace nkv {

struct LieAlgebra {
  Tensor3 c;  // c(i,j,k) = coefficient of e_k in [e_i, e_j]

  std::size_t dim() const { return c.dim0(); }
  Vector bracket(const Vector& x, const Vector& y) const { return bilinear_apply(c, x, y); }
  Matrix ad(const Vector& x) const;
  Matrix killing_form() const;
  double antisymmetry_residual() const;
  double jacobi_residual() const;
};

// Trilinear form on a Lagrangian: C(X,Y,Z) = <II(X,Y), JZ> in an orthonormal basis of L.
struct CTensor {
  Tensor3 entries;
  std::size_t dim() const { return entries.dim0(); }
};

class ThreeSymmetricSpace {
 public:
  LieAlgebra algebra;
  Matrix s_star;
  Matrix h_basis;        // lie_dim x dim h
  Matrix m_basis;        // lie_dim x dim m, B-orthonormal
  Matrix B;              // B on m in m_basis coordinates (identity up to rounding)
  Matrix J;              // on m in m_basis coordinates
  Matrix split_inverse;  // inverse of [h_basis | m_basis]
  double tol = kDefaultTol;
  CheckSuite checks;     // structural invariants computed by decompose

  std::size_t lie_dim() const { return algebra.dim(); }
  std::size_t dim_h() const { return h_basis.cols(); }
  std::size_t dim_m() const { return m_basis.cols(); }

  Vector embed(const Vector& m_coords) const { return m_basis * m_coords; }
  // components along h and m of a Lie algebra vector
  Vector h_part(const Vector& x) const;
  Vector m_part(const Vector& x) const;
  // [X,Y]_m in m coordinates for X, Y in m coordinates
  Vector bracket_m(const Vector& x, const Vector& y) const;
  double b(const Vector& x, const Vector& y) const { return bilinear(B, x, y); }
};

// b_form is an optional invariant form on g coordinates restricted to m; the
// default is scale times the negative Killing form.
ThreeSymmetricSpace decompose(const LieAlgebra& g, const Matrix& s_star,
                              const std::optional<Matrix>& b_form = std::nullopt,
                              double scale = 1.0, double tol = kDefaultTol);

struct NaturalReductivityReport {
  double residual = 0.0;
  bool passes = false;
};

NaturalReductivityReport check_naturally_reductive(const ThreeSymmetricSpace& t);

NKModel to_nk_model(const ThreeSymmetricSpace& t, const std::string& name);

struct BasePointConnections {
  Vector levi_civita;     // nabla_X Y at the base point
  Vector canonical_diff;  // (canonical - Levi-Civita)_X Y
};

BasePointConnections base_point_connections(const ThreeSymmetricSpace& t, const Vector& x,
                                            const Vector& y);

// L given by columns in m coordinates. Requires omega|L = 0, dim L = dim m / 2
// and [L,L]_m in L.
CTensor invariant_second_fundamental(const ThreeSymmetricSpace& t, const Matrix& l_basis);

}  // namespace nkv
