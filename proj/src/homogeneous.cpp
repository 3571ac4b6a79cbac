#include "nkv/homogeneous.hpp"

#include <algorithm>
#include <cmath>

#include "nkv/errors.hpp"
#include "nkv/linalg.hpp"

namespace nkv {

namespace {

constexpr double kRankTol = 1e-8;

}  // namespace

Matrix LieAlgebra::ad(const Vector& x) const {
  const std::size_t n = dim();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m.set_column(j, bracket(x, basis_vector(n, j)));
  return m;
}

Matrix LieAlgebra::killing_form() const {
  const std::size_t n = dim();
  std::vector<Matrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(ad(basis_vector(n, i)));
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k(i, j) = trace(ads[i] * ads[j]);
  return k;
}

double LieAlgebra::antisymmetry_residual() const {
  double r = 0.0;
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) r = std::max(r, std::abs(c(i, j, k) + c(j, i, k)));
  return r;
}

double LieAlgebra::jacobi_residual() const {
  const std::size_t n = dim();
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vector x = basis_vector(n, i), y = basis_vector(n, j), z = basis_vector(n, k);
        Vector s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
        r = std::max(r, max_abs(s));
      }
  return r;
}

Vector ThreeSymmetricSpace::h_part(const Vector& x) const {
  Vector c = split_inverse * x;
  return Vector(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(dim_h()));
}

Vector ThreeSymmetricSpace::m_part(const Vector& x) const {
  Vector c = split_inverse * x;
  return Vector(c.begin() + static_cast<std::ptrdiff_t>(dim_h()), c.end());
}

Vector ThreeSymmetricSpace::bracket_m(const Vector& x, const Vector& y) const {
  return m_part(algebra.bracket(embed(x), embed(y)));
}

ThreeSymmetricSpace decompose(const LieAlgebra& g, const Matrix& s_star,
                              const std::optional<Matrix>& b_form, double scale, double tol) {
  const std::size_t n = g.dim();
  if (!g.c.cubic() || s_star.rows() != n || s_star.cols() != n)
    throw NkError(ErrorKind::DimensionMismatch, "structure constants and s_star disagree");
  if (g.antisymmetry_residual() > tol || g.jacobi_residual() > tol)
    throw NkError(ErrorKind::BadInput, "structure constants are not a Lie algebra");
  if (!(scale > 0.0)) throw NkError(ErrorKind::BadInput, "scale must be positive");

  const Matrix id = Matrix::identity(n);
  double order3 = max_abs(s_star * s_star * s_star - id);
  if (order3 > tol)
    throw NkError(ErrorKind::NotOrderThree, "|s^3 - Id| = " + std::to_string(order3));
  double automorphism = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector x = basis_vector(n, i), y = basis_vector(n, j);
      automorphism = std::max(
          automorphism, max_abs(s_star * g.bracket(x, y) - g.bracket(s_star * x, s_star * y)));
    }
  if (automorphism > tol)
    throw NkError(ErrorKind::NotAutomorphism, "|s[X,Y] - [sX,sY]| = " + std::to_string(automorphism));

  ThreeSymmetricSpace t;
  t.algebra = g;
  t.s_star = s_star;
  t.tol = tol;
  t.h_basis = nullspace(s_star - id, kRankTol);
  Matrix m_raw = column_space(s_star - id, kRankTol);
  if (m_raw.cols() == 0) throw NkError(ErrorKind::Degenerate, "m = 0, no almost complex structure");
  if (t.h_basis.cols() + m_raw.cols() != n)
    throw NkError(ErrorKind::Degenerate, "ker(s - Id) and im(s - Id) are not complementary");

  Matrix bg = b_form ? *b_form : (-scale) * g.killing_form();
  if (bg.rows() != n || bg.cols() != n)
    throw NkError(ErrorKind::DimensionMismatch, "B form must be given on g coordinates");
  Matrix bm = m_raw.transpose() * bg * m_raw;
  if (max_abs(bm - bm.transpose()) > tol || !is_positive_definite(bm, tol))
    throw NkError(ErrorKind::BadMetric, "B is not positive definite on m");
  Matrix p = gram_schmidt(Matrix::identity(m_raw.cols()), bm, tol);
  t.m_basis = m_raw * p;
  t.split_inverse = inverse(hstack(t.h_basis, t.m_basis));
  const std::size_t dh = t.dim_h(), dm = t.dim_m();
  t.B = t.m_basis.transpose() * bg * t.m_basis;

  Matrix s_full = t.split_inverse * s_star * t.m_basis;
  Matrix s_m(dm, dm);
  double s_leak = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < dm; ++j) {
      if (i < dh) s_leak = std::max(s_leak, std::abs(s_full(i, j)));
      else s_m(i - dh, j) = s_full(i, j);
    }
  t.J = (2.0 / std::sqrt(3.0)) * (s_m + 0.5 * Matrix::identity(dm));

  t.checks.name = "three-symmetric";
  t.checks.add(make_check("order-three", "s^3 = Id", order3, tol));
  t.checks.add(make_check("automorphism", "s[X,Y] = [sX,sY]", automorphism, tol));
  t.checks.add(make_check("s-preserves-m", "s(m) = m", s_leak, tol));
  t.checks.add(make_check("J-squared", "J^2 = -Id on m", max_abs(t.J * t.J + Matrix::identity(dm)), tol));
  t.checks.add(make_check("J-orthogonal", "B(JX,JY) = B(X,Y)", max_abs(t.J.transpose() * t.B * t.J - t.B), tol));
  t.checks.add(make_check("s-invariant-B", "B(sX,sY) = B(X,Y) on m", max_abs(s_m.transpose() * t.B * s_m - t.B), tol));

  Matrix blocks = block_diagonal(Matrix::identity(dh),
                                 -0.5 * Matrix::identity(dm) + (std::sqrt(3.0) / 2.0) * t.J);
  Matrix rebuilt = hstack(t.h_basis, t.m_basis) * blocks * t.split_inverse;
  t.checks.add(make_check("s-reconstruction", "s = Id on h and -1/2 Id + (sqrt3/2) J on m",
                          max_abs(rebuilt - s_star), tol));

  double reductive = 0.0, ad_inv = 0.0;
  for (std::size_t a = 0; a < dh; ++a) {
    Vector z = t.h_basis.column(a);
    for (std::size_t i = 0; i < dm; ++i) {
      Vector zx = g.bracket(z, t.m_basis.column(i));
      reductive = std::max(reductive, max_abs(t.h_part(zx)));
      Vector zx_m = t.m_part(zx);
      for (std::size_t j = 0; j < dm; ++j) {
        Vector zy_m = t.m_part(g.bracket(z, t.m_basis.column(j)));
        ad_inv = std::max(ad_inv, std::abs(t.b(zx_m, basis_vector(dm, j)) +
                                           t.b(basis_vector(dm, i), zy_m)));
      }
    }
  }
  t.checks.add(make_check("reductive", "[h,m] in m", reductive, tol));
  t.checks.add(make_check("ad-h-invariant-B", "B([Z,X]_m,Y) + B(X,[Z,Y]_m) = 0 for Z in h", ad_inv, tol));
  return t;
}

NaturalReductivityReport check_naturally_reductive(const ThreeSymmetricSpace& t) {
  const std::size_t dm = t.dim_m();
  NaturalReductivityReport rep;
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t j = 0; j < dm; ++j) {
      Vector xy = t.bracket_m(basis_vector(dm, i), basis_vector(dm, j));
      for (std::size_t k = 0; k < dm; ++k) {
        Vector yz = t.bracket_m(basis_vector(dm, j), basis_vector(dm, k));
        rep.residual = std::max(rep.residual, std::abs(t.b(xy, basis_vector(dm, k)) -
                                                       t.b(basis_vector(dm, i), yz)));
      }
    }
  rep.passes = rep.residual <= t.tol;
  return rep;
}

NKModel to_nk_model(const ThreeSymmetricSpace& t, const std::string& name) {
  NaturalReductivityReport nr = check_naturally_reductive(t);
  if (!nr.passes)
    throw NkError(ErrorKind::NotNaturallyReductive, "residual " + std::to_string(nr.residual));
  const std::size_t dm = t.dim_m();
  Tensor3 A(dm);
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t j = 0; j < dm; ++j) {
      Vector v = -1.0 * (t.J * t.bracket_m(basis_vector(dm, i), basis_vector(dm, j)));
      for (std::size_t k = 0; k < dm; ++k) A(i, j, k) = v[k];
    }
  return NKModel(name, t.B, t.J, A, t.tol);
}

BasePointConnections base_point_connections(const ThreeSymmetricSpace& t, const Vector& x,
                                            const Vector& y) {
  if (x.size() != t.dim_m() || y.size() != t.dim_m())
    throw NkError(ErrorKind::DimensionMismatch, "vectors must be in m coordinates");
  NaturalReductivityReport nr = check_naturally_reductive(t);
  if (!nr.passes)
    throw NkError(ErrorKind::NotNaturallyReductive, "residual " + std::to_string(nr.residual));
  Vector b = t.bracket_m(x, y);
  return {0.5 * b, -0.5 * b};
}

CTensor invariant_second_fundamental(const ThreeSymmetricSpace& t, const Matrix& l_basis) {
  const std::size_t dm = t.dim_m();
  if (l_basis.rows() != dm) throw NkError(ErrorKind::DimensionMismatch, "L must be in m coordinates");
  Matrix q = gram_schmidt(l_basis, t.B, t.tol);
  const std::size_t n = q.cols();
  if (2 * n != dm)
    throw NkError(ErrorKind::NotLagrangian, "dim L = " + std::to_string(n) + " is not half of dim m");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double w = t.b(t.J * q.column(a), q.column(b));
      if (std::abs(w) > t.tol)
        throw NkError(ErrorKind::NotLagrangian, "omega(x_" + std::to_string(a) + ", x_" +
                                                    std::to_string(b) + ") = " + std::to_string(w));
    }
  Matrix proj = q * q.transpose() * t.B;
  double closure = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector br = t.bracket_m(q.column(a), q.column(b));
      closure = std::max(closure, max_abs(br - proj * br));
    }
  if (closure > t.tol)
    throw NkError(ErrorKind::NotSubalgebra, "[L,L]_m leaves L by " + std::to_string(closure));
  CTensor c{Tensor3(n)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector br = t.bracket_m(q.column(a), q.column(b));
      for (std::size_t k = 0; k < n; ++k) c.entries(a, b, k) = 0.5 * t.b(br, t.J * q.column(k));
    }
  return c;
}

}  // namespace nkv
