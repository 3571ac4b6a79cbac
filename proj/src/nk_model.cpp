#include "nkv/nk_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nkv/errors.hpp"
#include "nkv/octonion.hpp"

namespace nkv {

NKModel::NKModel(std::string name, const Matrix& g, const Matrix& j, const Tensor3& a, double tol,
                 std::vector<std::size_t> blocks)
    : name_(std::move(name)), tol_(tol) {
  dim_ = g.rows();
  if (dim_ == 0 || dim_ % 2 != 0)
    throw NkError(ErrorKind::DimensionMismatch, "model dimension must be even and positive");
  if (!g.square() || j.rows() != dim_ || j.cols() != dim_ || a.dim0() != dim_ || !a.cubic())
    throw NkError(ErrorKind::DimensionMismatch, "g, J, A shapes disagree");
  if (!(tol > 0.0)) throw NkError(ErrorKind::BadInput, "tolerance must be positive");
  for (double x : g.data())
    if (!std::isfinite(x)) throw NkError(ErrorKind::BadInput, "non-finite metric entry");
  for (double x : j.data())
    if (!std::isfinite(x)) throw NkError(ErrorKind::BadInput, "non-finite J entry");
  for (double x : a.data())
    if (!std::isfinite(x)) throw NkError(ErrorKind::BadInput, "non-finite A entry");

  double asym = max_abs(g - g.transpose());
  if (asym > tol) throw NkError(ErrorKind::BadMetric, "metric not symmetric");
  if (!is_positive_definite(g, tol)) throw NkError(ErrorKind::BadMetric, "metric not positive definite");

  frame_ = gram_schmidt(Matrix::identity(dim_), g, tol);
  if (frame_.cols() != dim_) throw NkError(ErrorKind::BadMetric, "metric degenerate");
  frame_inv_ = inverse(frame_);
  g_ = Matrix::identity(dim_);
  j_ = frame_inv_ * j * frame_;
  a_ = transform_bilinear(a, frame_, frame_inv_);

  blocks_ = blocks.empty() ? std::vector<std::size_t>{dim_} : std::move(blocks);
  std::size_t total = 0;
  for (std::size_t b : blocks_) total += b;
  if (total != dim_) throw NkError(ErrorKind::DimensionMismatch, "block sizes do not sum to dim");
}

NKModel NKModel::renamed(std::string name) const {
  NKModel m(*this);
  m.name_ = std::move(name);
  return m;
}

NKModel NKModel::with_tol(double tol) const {
  NKModel m(*this);
  m.tol_ = tol;
  return m;
}

CheckSuite verify_model(const NKModel& m) {
  const std::size_t d = m.dim();
  const Matrix& J = m.J();
  const Tensor3& A = m.A();
  const double tol = m.tol();
  CheckSuite s{"identities:" + m.name(), {}};

  s.add(make_check("almost-complex", "J^2 = -Id", max_abs(J * J + Matrix::identity(d)), tol));
  s.add(make_check("hermitian", "g(JX,JY) = g(X,Y)",
                   max_abs(J.transpose() * m.metric() * J - m.metric()), tol));

  double nk1 = 0.0, nk4 = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        nk1 = std::max(nk1, 0.5 * std::abs(A(i, j, k) + A(j, i, k)));
        nk4 = std::max(nk4, std::abs(A(i, j, k) + A(i, k, j)));
        nk4 = std::max(nk4, std::abs(A(i, j, k) + A(j, i, k)));
      }
  s.add(make_check("nk1", "A(X,X) = 0", nk1, tol));
  s.add(make_check("nk4", "g(A(X,Y),Z) skew under X<->Y and Y<->Z", nk4, tol));

  double nk5a = 0.0, nk5b = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    Vector ei = basis_vector(d, i), jei = J * ei;
    for (std::size_t j = 0; j < d; ++j) {
      Vector ej = basis_vector(d, j);
      Vector jaij = J * m.apply_A(ei, ej);
      nk5a = std::max(nk5a, max_abs(m.apply_A(jei, ej) + jaij));
      nk5b = std::max(nk5b, max_abs(m.apply_A(ej, jei) + J * m.apply_A(ej, ei)));
    }
  }
  s.add(make_check("nk5", "A(JX,Y) = -J A(X,Y) = A(X,JY)", std::max(nk5a, nk5b), tol));
  return s;
}

void require_valid(const NKModel& m) {
  CheckSuite s = verify_model(m);
  if (!s.all_passed()) {
    std::string failed;
    for (const auto& c : s.checks)
      if (c.status == Status::Fail) failed += " " + c.name;
    throw NkError(ErrorKind::ModelInvalid, m.name() + " fails:" + failed);
  }
}

NKModel build_flat_kahler(std::size_t n, double tol) {
  if (n == 0) throw NkError(ErrorKind::BadInput, "flat-kahler needs n >= 1");
  const std::size_t d = 2 * n;
  Matrix J(d, d);
  for (std::size_t k = 0; k < n; ++k) {
    J(n + k, k) = 1.0;   // J e_k = e_{n+k}
    J(k, n + k) = -1.0;  // J e_{n+k} = -e_k
  }
  return NKModel("flat-kahler:" + std::to_string(n), Matrix::identity(d), J, Tensor3(d), tol);
}

NKModel build_s6(double scale, double tol) {
  if (!(scale > 0.0)) throw NkError(ErrorKind::BadInput, "scale must be positive");
  // imaginary units e1..e7 sit at indices 0..6 of a 7-vector; p = e1, tangent e2..e7
  const std::size_t d = 6;
  auto unit7 = [](std::size_t k) { return basis_vector(7, k); };
  Vector p = unit7(0);
  Matrix J(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    Vector jx = octonion::cross7(p, unit7(j + 1));
    for (std::size_t i = 0; i < d; ++i) J(i, j) = jx[i + 1];
  }
  const double f = 1.0 / std::sqrt(scale);
  Tensor3 A(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector x = unit7(i + 1), y = unit7(j + 1);
      Vector jy = octonion::cross7(p, y);
      Vector v = octonion::cross7(x, y) + dot(x, jy) * p;
      for (std::size_t k = 0; k < d; ++k) A(i, j, k) = f * v[k + 1];
    }
  std::string name = scale == 1.0 ? "s6" : "s6:" + std::to_string(scale);
  return NKModel(name, Matrix::identity(d), J, A, tol);
}

NKModel build_product(const NKModel& m1, const NKModel& m2) {
  const std::size_t d1 = m1.dim(), d = d1 + m2.dim();
  Tensor3 A(d);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t k = 0; k < d1; ++k) A(i, j, k) = m1.A()(i, j, k);
  for (std::size_t i = 0; i < m2.dim(); ++i)
    for (std::size_t j = 0; j < m2.dim(); ++j)
      for (std::size_t k = 0; k < m2.dim(); ++k) A(d1 + i, d1 + j, d1 + k) = m2.A()(i, j, k);
  std::vector<std::size_t> blocks = m1.blocks();
  blocks.insert(blocks.end(), m2.blocks().begin(), m2.blocks().end());
  return NKModel("product:" + m1.name() + "," + m2.name(), Matrix::identity(d),
                 block_diagonal(m1.J(), m2.J()), A, std::max(m1.tol(), m2.tol()), blocks);
}

TorsionData torsion(const NKModel& m) {
  require_valid(m);
  const std::size_t d = m.dim();
  const double tol = m.tol();
  TorsionData t{Tensor3(d), Tensor3(d), {"torsion:" + m.name(), {}}};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector v = -1.0 * (m.J() * m.apply_A(basis_vector(d, i), basis_vector(d, j)));
      for (std::size_t k = 0; k < d; ++k) t.T(i, j, k) = v[k];
    }
  t.tau = t.T;  // orthonormal frame: tau(i,j,k) = <T(e_i,e_j), e_k>

  double skew = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        skew = std::max(skew, std::abs(t.tau(i, j, k) + t.tau(j, i, k)));
        skew = std::max(skew, std::abs(t.tau(i, j, k) + t.tau(i, k, j)));
      }
  t.checks.add(make_check("tau-skew", "tau(X,Y,Z) = g(T(X,Y),Z) totally skew", skew, tol));

  double tau2 = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector ei = basis_vector(d, i), ej = basis_vector(d, j);
      Vector tij = bilinear_apply(t.T, ei, ej);
      Vector jt = m.J() * tij;
      tau2 = std::max(tau2, max_abs(bilinear_apply(t.T, m.J() * ei, ej) + jt));
      tau2 = std::max(tau2, max_abs(bilinear_apply(t.T, ei, m.J() * ej) + jt));
    }
  t.checks.add(make_check("tau2", "T(JX,Y) = -J T(X,Y) = T(X,JY)", tau2, tol));
  return t;
}

Matrix koto_r(const NKModel& m) {
  const std::size_t d = m.dim();
  const Tensor3& A = m.A();
  Matrix r(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) s += A(a, i, k) * A(b, i, k);
      r(a, b) = s;
    }
  return r;
}

double spectrum_group_tol(const NKModel& m) { return std::max(1e-7, 100.0 * m.tol()); }

ROperatorReport r_operator(const NKModel& m) {
  require_valid(m);
  const double tol = m.tol();
  ROperatorReport rep;
  rep.r = koto_r(m);
  rep.checks.name = "r-operator:" + m.name();
  rep.checks.add(make_check("r-symmetric", "<rX,Y> = <X,rY>", max_abs(rep.r - rep.r.transpose()), tol));
  SymEigResult e = sym_eigendecomposition(rep.r, tol);
  rep.spectrum = group_eigenvalues(e, spectrum_group_tol(m));
  double neg = e.eigenvalues.empty() ? 0.0 : std::max(0.0, -e.eigenvalues.front());
  rep.checks.add(make_check("r-psd", "r positive semidefinite", neg, tol));
  rep.checks.add(make_check("r-commutes-J", "[r,J] = 0", max_abs(rep.r * m.J() - m.J() * rep.r), tol));

  double leak = 0.0;
  bool even = true;
  for (const auto& g : rep.spectrum) {
    Matrix je = m.J() * g.basis;
    Matrix proj = g.basis * (g.basis.transpose() * je);
    leak = std::max(leak, max_abs(je - proj));
    even = even && g.multiplicity % 2 == 0;
    if (std::abs(g.eigenvalue) <= spectrum_group_tol(m)) rep.kernel_dim = g.multiplicity;
  }
  rep.checks.add(make_check("r-eigenspaces-complex", "each eigenspace of r is J-invariant", leak,
                            std::max(tol, 1e-8)));
  rep.checks.add(make_flag("r-eigenspaces-even", "eigenspaces of r are even dimensional", even));
  rep.is_strict = rep.kernel_dim == 0;
  return rep;
}

TypeConstantReport type_constant(const NKModel& m) {
  require_valid(m);
  const std::size_t d = m.dim();
  // polarization set {e_i} u {e_i + e_j}; the identity is biquadratic so this set is exact
  std::vector<Vector> probes;
  for (std::size_t i = 0; i < d; ++i) probes.push_back(basis_vector(d, i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) probes.push_back(basis_vector(d, i) + basis_vector(d, j));

  std::vector<Vector> a_of(probes.size() * probes.size());
  std::vector<double> lhs, rhs;
  lhs.reserve(a_of.size());
  rhs.reserve(a_of.size());
  for (const Vector& x : probes)
    for (const Vector& y : probes) {
      Vector a = m.apply_A(x, y);
      double xy = dot(x, y), xjy = dot(x, m.J() * y);
      lhs.push_back(dot(a, a));
      rhs.push_back(dot(x, x) * dot(y, y) - xy * xy - xjy * xjy);
    }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    num += lhs[k] * rhs[k];
    den += rhs[k] * rhs[k];
  }
  TypeConstantReport rep;
  rep.alpha_type = den > 0.0 ? num / den : 0.0;
  for (std::size_t k = 0; k < lhs.size(); ++k)
    rep.residual = std::max(rep.residual, std::abs(lhs[k] - rep.alpha_type * rhs[k]));
  rep.reliable = rep.residual <= m.tol();
  rep.scalar_curvature = 30.0 * rep.alpha_type;
  SymEigResult e = sym_eigendecomposition(koto_r(m), m.tol());
  rep.is_strict = !e.eigenvalues.empty() && e.eigenvalues.front() > spectrum_group_tol(m);
  return rep;
}

}  // namespace nkv
