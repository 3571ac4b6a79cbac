#include "nkv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "nkv/errors.hpp"

namespace nkv {

namespace {

using Dense = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Dense to_dense(const Matrix& m) {
  Dense d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = m(i, j);
  return d;
}

template <class E>
Matrix from_dense(const E& d) {
  Matrix m(static_cast<std::size_t>(d.rows()), static_cast<std::size_t>(d.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = d(i, j);
  return m;
}

}  // namespace

SymEigResult sym_eigendecomposition(const Matrix& m, double tol) {
  if (!m.square()) throw NkError(ErrorKind::DimensionMismatch, "eigendecomposition of non-square");
  const std::size_t n = m.rows();
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
  if (asym > tol)
    throw NkError(ErrorKind::NotSymmetric, "max |m_ij - m_ji| = " + std::to_string(asym));
  if (n == 0) return {Vector(), Matrix()};
  Dense a = to_dense(m);
  Dense sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Dense> es(sym);
  if (es.info() != Eigen::Success) throw NkError(ErrorKind::Degenerate, "eigensolver did not converge");
  SymEigResult r{Vector(n), from_dense(es.eigenvectors())};
  for (std::size_t k = 0; k < n; ++k) r.eigenvalues[k] = es.eigenvalues()(static_cast<Eigen::Index>(k));
  return r;
}

std::vector<EigenGroup> group_eigenvalues(const SymEigResult& e, double tol) {
  std::vector<EigenGroup> groups;
  const std::size_t n = e.eigenvalues.size();
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && e.eigenvalues[end] - e.eigenvalues[end - 1] <= tol) ++end;
    double mean = 0.0;
    for (std::size_t k = start; k < end; ++k) mean += e.eigenvalues[k];
    mean /= static_cast<double>(end - start);
    groups.push_back({mean, end - start, e.eigenvectors.columns(start, end - start)});
    start = end;
  }
  return groups;
}

SvdResult svd(const Matrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0 || n == 0) return {Vector(n, 0.0), Matrix::identity(n)};
  Eigen::JacobiSVD<Dense> js(to_dense(m), Eigen::ComputeFullV);
  SvdResult r{Vector(n, 0.0), from_dense(js.matrixV())};
  const auto& sv = js.singularValues();
  for (Eigen::Index k = 0; k < sv.size(); ++k) r.singular_values[static_cast<std::size_t>(k)] = sv(k);
  return r;
}

std::size_t numerical_rank(const Matrix& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  SvdResult s = svd(m);
  double top = s.singular_values.empty() ? 0.0 : s.singular_values.front();
  if (top == 0.0) return 0;
  std::size_t r = 0;
  for (double x : s.singular_values)
    if (x > rel_tol * top) ++r;
  return r;
}

Matrix column_space(const Matrix& m, double rel_tol) {
  Matrix mt = m.transpose();
  if (mt.rows() == 0 || mt.cols() == 0) return Matrix(m.rows(), 0);
  SvdResult s = svd(mt);
  double top = s.singular_values.empty() ? 0.0 : s.singular_values.front();
  std::size_t r = 0;
  if (top > 0.0)
    for (double x : s.singular_values)
      if (x > rel_tol * top) ++r;
  return s.v.columns(0, r);
}

Matrix nullspace(const Matrix& m, double rel_tol) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return Matrix::identity(n);
  SvdResult s = svd(m);
  double top = s.singular_values.empty() ? 0.0 : s.singular_values.front();
  std::size_t r = 0;
  if (top > 0.0)
    for (double x : s.singular_values)
      if (x > rel_tol * top) ++r;
  return s.v.columns(r, n - r);
}

RowSpaceContainment row_space_contains(const Matrix& constraints, const Matrix& functionals,
                                       double rel_tol) {
  RowSpaceContainment out{};
  out.rank_constraints = numerical_rank(constraints, rel_tol);
  out.rank_augmented = numerical_rank(vstack(constraints, functionals), rel_tol);
  Matrix null = nullspace(constraints, rel_tol);
  out.residual = null.cols() ? max_abs(functionals * null) : 0.0;
  out.contained = out.rank_constraints == out.rank_augmented;
  return out;
}

Matrix gram_schmidt(const Matrix& vectors, const Matrix& g, double tol) {
  std::vector<Vector> out;
  for (std::size_t j = 0; j < vectors.cols(); ++j) {
    Vector v = vectors.column(j);
    double original = std::sqrt(std::max(0.0, bilinear(g, v, v)));
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : out) v = v - bilinear(g, q, v) * q;
    double nv = std::sqrt(std::max(0.0, bilinear(g, v, v)));
    if (nv <= tol * std::max(1.0, original)) continue;
    out.push_back((1.0 / nv) * v);
  }
  return Matrix::from_columns(out, vectors.rows());
}

Matrix gram_schmidt(const Matrix& vectors, double tol) {
  return gram_schmidt(vectors, Matrix::identity(vectors.rows()), tol);
}

Matrix solve(const Matrix& a, const Matrix& b) {
  if (!a.square() || a.rows() != b.rows()) throw NkError(ErrorKind::DimensionMismatch, "solve");
  if (a.rows() == 0) return Matrix(0, b.cols());
  Eigen::FullPivLU<Dense> lu(to_dense(a));
  lu.setThreshold(1e-14);
  if (!lu.isInvertible()) throw NkError(ErrorKind::Degenerate, "singular linear system");
  return from_dense(lu.solve(to_dense(b)));
}

Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

bool is_positive_definite(const Matrix& g, double tol) {
  if (!g.square()) return false;
  SymEigResult e = sym_eigendecomposition(g, tol);
  return e.eigenvalues.empty() || e.eigenvalues.front() > tol;
}

Matrix intersect_subspaces(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return Matrix(a.rows(), 0);
  Matrix atb = a.transpose() * b;
  Matrix m = atb * atb.transpose();
  SymEigResult e = sym_eigendecomposition(m, 1e-8);
  std::vector<Vector> cols;
  for (std::size_t k = e.eigenvalues.size(); k-- > 0;)
    if (e.eigenvalues[k] > 0.5) cols.push_back(a * e.eigenvectors.column(k));
  return Matrix::from_columns(cols, a.rows());
}

Matrix orthogonal_complement(const Matrix& a, double tol) {
  const std::size_t d = a.rows();
  Matrix p = Matrix::identity(d) - a * a.transpose();
  SymEigResult e = sym_eigendecomposition(p, std::max(tol, 1e-8));
  std::vector<Vector> cols;
  for (std::size_t k = e.eigenvalues.size(); k-- > 0;)
    if (e.eigenvalues[k] > 0.5) cols.push_back(e.eigenvectors.column(k));
  return Matrix::from_columns(cols, d);
}

}  // namespace nkv
