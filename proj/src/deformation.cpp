#include "nkv/deformation.hpp"

#include <cmath>
#include <cstdio>

#include "nkv/errors.hpp"
#include "nkv/exterior.hpp"
#include "nkv/linalg.hpp"

namespace nkv {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Matrix column_matrix(const Vector& v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

// least squares coefficients of the columns of b in the columns of a
Matrix coefficients(const Matrix& a, const Matrix& b) {
  Matrix at = a.transpose();
  return solve(at * a, at * b);
}

}  // namespace

StarOperator build_star(const LagrangianSubspace& l) {
  const NKModel& m = l.model();
  if (m.dim() != 6 || l.dim() != 3) throw NkError(ErrorKind::NotDimension6, "star operator needs dim L = 3");
  const double tol = m.tol();
  LagrangianTorsion lt = restrict_torsion(l);
  StarOperator s;
  s.a = lt.t(0, 1, 2);
  if (std::abs(s.a) <= tol) throw NkError(ErrorKind::DegenerateTorsion, "tau|L vanishes");
  TypeConstantReport tc = type_constant(m);
  if (!tc.is_strict) throw NkError(ErrorKind::NotStrict, "model is not strict");
  s.alpha = tc.alpha_type;
  s.orientation = s.a > 0 ? 1.0 : -1.0;
  for (std::size_t p = 0; p <= 3; ++p) s.star[p] = hodge_star_matrix(3, p, s.orientation);

  s.checks.name = "star";
  double sq = 0.0;
  for (std::size_t p = 0; p <= 3; ++p) {
    Matrix id = Matrix::identity(s.star[p].cols());
    sq = std::max(sq, max_abs(s.star[3 - p] * s.star[p] - id));
  }
  s.checks.add(make_check("star-squared", "** = Id on every degree", sq, tol));

  // *phi = (1/sqrt(alpha)) phi o T on 1-forms
  auto pairs = increasing_multi_indices(3, 2);
  double one = 0.0;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      double expect = lt.t(pairs[r][0], pairs[r][1], k) / std::sqrt(s.alpha);
      one = std::max(one, std::abs(s.star[1](r, k) - expect));
    }
  s.checks.add(make_check("star-one-form", "*phi = (1/sqrt(alpha)) phi o T", one, 100.0 * tol));
  s.checks.add(make_check("volume-coefficient", "tau|L = a vol with a^2 = alpha",
                          std::abs(s.a * s.a - s.alpha), 100.0 * tol, "a = " + fmt(s.a)));
  s.checks.add(make_check("tau-volume", "tau|L is a multiple of the volume form",
                          max_abs(lt.t - s.a * [] {
                            Tensor3 e(3);
                            for (std::size_t i = 0; i < 3; ++i)
                              for (std::size_t j = 0; j < 3; ++j)
                                for (std::size_t k = 0; k < 3; ++k)
                                  e(i, j, k) = permutation_sign({i, j, k});
                            return e;
                          }()),
                          tol));
  return s;
}

InvariantComplex build_invariant_complex(const Tensor3& c, const StarOperator& star, double tol) {
  if (c.dim0() != 3 || !c.cubic()) throw NkError(ErrorKind::DimensionMismatch, "bracket must be 3-dimensional");
  InvariantComplex cx;
  cx.c = c;
  for (std::size_t p = 0; p < 3; ++p) cx.d[p] = maurer_cartan_d(c, p);
  for (std::size_t p = 1; p <= 3; ++p) {
    double sign = (p % 2 == 0) ? 1.0 : -1.0;
    cx.delta[p] = sign * (star.star[4 - p] * cx.d[3 - p] * star.star[p]);
  }
  cx.laplacian1 = cx.delta[2] * cx.d[1] + cx.d[0] * cx.delta[1];
  double dd = std::max(max_abs(cx.d[1] * cx.d[0]), max_abs(cx.d[2] * cx.d[1]));
  cx.checks.name = "invariant-complex";
  cx.checks.add(make_check("d-squared", "d o d = 0 on invariant forms", dd, tol));
  return cx;
}

CheckReport deformation_constraint(const Vector& theta, const StarOperator& star,
                                   const InvariantComplex& cx, double tol) {
  if (theta.size() != 3) throw NkError(ErrorKind::DimensionMismatch, "theta must be a 1-form on L");
  Vector lhs = cx.d[1] * theta;
  Vector rhs = (3.0 * std::sqrt(star.alpha)) * (star.star[1] * theta);
  return make_check("deformation-constraint", "d theta = 3 sqrt(alpha) * theta", norm(lhs - rhs), tol);
}

DeformationSpectrum deformation_spectrum(const StarOperator& star, const InvariantComplex& cx,
                                         double tol) {
  DeformationSpectrum out;
  const double root = std::sqrt(star.alpha);
  Matrix system = cx.d[1] - (3.0 * root) * star.star[1];
  out.solutions = max_abs(system) <= tol ? Matrix::identity(3) : nullspace(system, 1e-9);
  out.lambda = 9.0 * star.alpha;
  out.scalar_curvature = 30.0 * star.alpha;
  out.ratio = out.lambda / out.scalar_curvature;

  double constraint = 0.0, coclosed = 0.0, eigen = 0.0;
  for (std::size_t j = 0; j < out.solutions.cols(); ++j) {
    Vector theta = out.solutions.column(j);
    constraint = std::max(constraint, deformation_constraint(theta, star, cx, tol).residual);
    coclosed = std::max(coclosed, max_abs(cx.delta[1] * theta));
    eigen = std::max(eigen, max_abs(cx.laplacian1 * theta - out.lambda * theta));
  }
  const std::string dim = "solution dimension " + std::to_string(out.dimension());
  out.checks.name = "deformation-spectrum";
  out.checks.add(make_check("solutions-satisfy-constraint", "d theta = 3 sqrt(alpha) * theta", constraint, tol, dim));
  out.checks.add(make_check("coclosed", "delta theta = 0", coclosed, tol, dim));
  out.checks.add(make_check("hodge-eigenvalue", "Laplacian theta = 9 alpha theta", eigen, tol, dim));
  out.checks.add(make_check("eigenvalue-ratio", "lambda = (3/10) s with s = 30 alpha",
                            std::abs(out.ratio - 0.3), 0.0, "lambda/s = " + fmt(out.ratio)));
  return out;
}

CheckSuite eigenvalue_chain_check(const StarOperator& star, double tol) {
  const double root = std::sqrt(star.alpha);
  Matrix id = Matrix::identity(3);
  Matrix d = (3.0 * root) * star.star[1];
  Matrix sd = star.star[2] * d;
  CheckSuite s{"eigenvalue-chain", {}};
  s.add(make_check("scalar", "(3 sqrt(alpha))^2 = 9 alpha",
                   std::abs((3.0 * root) * (3.0 * root) - 9.0 * star.alpha), 1e-15 * std::max(1.0, star.alpha)));
  s.add(make_check("star-star-one-forms", "** = Id on 1-forms", max_abs(star.star[2] * star.star[1] - id), tol));
  s.add(make_check("star-D", "*D = 3 sqrt(alpha) Id", max_abs(sd - (3.0 * root) * id), tol));
  s.add(make_check("delta-d", "delta d theta = 9 alpha theta", max_abs(sd * sd - (9.0 * star.alpha) * id), tol));
  return s;
}

InvariantLagrangian invariant_lagrangian_from_subalgebra(const ThreeSymmetricSpace& t,
                                                         const NKModel& model,
                                                         const Matrix& k_basis,
                                                         std::string presentation) {
  if (k_basis.rows() != t.lie_dim()) throw NkError(ErrorKind::DimensionMismatch, "k must be in g coordinates");
  const std::size_t n = k_basis.cols();
  Matrix p(model.dim(), n);
  for (std::size_t a = 0; a < n; ++a) {
    Vector x = model.from_input_coordinates(t.m_part(k_basis.column(a)));
    p.set_column(a, x);
  }
  if (n == 0 || svd(p).singular_values[n - 1] <= 1e-9) throw NkError(ErrorKind::Degenerate, "k meets h");

  // closure of k under the bracket
  double closure = 0.0;
  Matrix kq = gram_schmidt(k_basis, 1e-12);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector br = t.algebra.bracket(k_basis.column(a), k_basis.column(b));
      closure = std::max(closure, max_abs(br - kq * (kq.transpose() * br)));
    }
  if (closure > t.tol) throw NkError(ErrorKind::NotSubalgebra, "[k,k] leaves k by " + fmt(closure));

  LagrangianSubspace l = make_lagrangian(model, p);
  // k vectors projecting onto the orthonormal basis of L
  Matrix coeff = coefficients(p, l.basis());
  Matrix k = k_basis * coeff;
  Tensor3 c(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Matrix br = column_matrix(t.algebra.bracket(k.column(a), k.column(b)));
      Matrix cc = coefficients(k, br);
      for (std::size_t j = 0; j < n; ++j) c(a, b, j) = cc(j, 0);
    }
  return InvariantLagrangian{std::move(presentation), std::move(l), c};
}

}  // namespace nkv
