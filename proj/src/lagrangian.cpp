#include "nkv/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

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

// projection of v onto the span of the orthonormal columns of q
Vector project(const Matrix& q, const Vector& v) { return q * (q.transpose() * v); }

Tensor3 symmetric_basis_tensor(std::size_t n, const std::array<std::size_t, 3>& t) {
  Tensor3 s(n);
  std::array<std::size_t, 3> p = t;
  std::sort(p.begin(), p.end());
  do {
    s(p[0], p[1], p[2]) = 1.0;
  } while (std::next_permutation(p.begin(), p.end()));
  return s;
}

double contract_last(const Tensor3& s, std::size_t a, std::size_t b, const Tensor3& t,
                     std::size_t c, std::size_t d) {
  double v = 0.0;
  for (std::size_t w = 0; w < s.dim2(); ++w) v += s(a, b, w) * t(c, d, w);
  return v;
}

}  // namespace

LagrangianSubspace make_lagrangian(const NKModel& m, const Matrix& spanning) {
  const std::size_t d = m.dim();
  if (spanning.rows() != d)
    throw NkError(ErrorKind::DimensionMismatch, "spanning vectors must have length " + std::to_string(d));
  if (2 * spanning.cols() != d)
    throw NkError(ErrorKind::DimensionMismatch, "a Lagrangian needs " + std::to_string(d / 2) + " vectors");
  Matrix q = gram_schmidt(spanning, m.tol());
  if (q.cols() != spanning.cols()) throw NkError(ErrorKind::BadInput, "spanning vectors are dependent");
  for (std::size_t a = 0; a < q.cols(); ++a)
    for (std::size_t b = a + 1; b < q.cols(); ++b) {
      double w = dot(m.J() * q.column(a), q.column(b));
      if (std::abs(w) > m.tol())
        throw NkError(ErrorKind::NotLagrangian, "omega(x_" + std::to_string(a) + ", x_" +
                                                    std::to_string(b) + ") = " + fmt(w));
    }
  return LagrangianSubspace(m, q);
}

CheckSuite lemma1_check(const LagrangianSubspace& l) {
  const NKModel& m = l.model();
  const Matrix& x = l.basis();
  const Matrix u = l.normal_basis();
  const std::size_t n = l.dim();
  double lag1 = 0.0, lag2 = 0.0, lag3 = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector xx = m.apply_A(x.column(a), x.column(b));
      lag1 = std::max(lag1, max_abs(project(x, xx)));
      Vector uu = m.apply_A(u.column(a), u.column(b));
      lag2 = std::max(lag2, max_abs(project(x, uu)));
      Vector xu = m.apply_A(x.column(a), u.column(b));
      lag3 = std::max(lag3, max_abs(xu - project(x, xu)));
    }
  CheckSuite s{"lemma1", {}};
  s.add(make_check("lag1", "A(X,Y) normal for X,Y tangent", lag1, m.tol()));
  s.add(make_check("lag2", "A(U,V) normal for U,V normal", lag2, m.tol()));
  s.add(make_check("lag3", "A(X,U) tangent for X tangent, U normal", lag3, m.tol()));
  return s;
}

LagrangianTorsion restrict_torsion(const LagrangianSubspace& l) {
  const NKModel& m = l.model();
  const Matrix& x = l.basis();
  const std::size_t n = l.dim();
  LagrangianTorsion out{Tensor3(n), 0.0};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector t = -1.0 * (m.J() * m.apply_A(x.column(a), x.column(b)));
      Vector c = x.transpose() * t;
      for (std::size_t k = 0; k < n; ++k) out.t(a, b, k) = c[k];
      out.normal_leakage = std::max(out.normal_leakage, max_abs(t - x * c));
    }
  return out;
}

LagrangianTorsion volume_torsion(double a) {
  LagrangianTorsion out{Tensor3(3), 0.0};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) out.t(i, j, k) = a * permutation_sign({i, j, k});
  return out;
}

CTensor c_from_invariant(const ThreeSymmetricSpace& t, const LagrangianSubspace& l) {
  if (l.model().dim() != t.dim_m())
    throw NkError(ErrorKind::DimensionMismatch, "model is not built on this m");
  return invariant_second_fundamental(t, l.model().frame() * l.basis());
}

CheckReport check_c_symmetry(const CTensor& c, double tol) {
  const std::size_t n = c.dim();
  const Tensor3& e = c.entries;
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double v = e(i, j, k);
        for (double w : {e(j, i, k), e(i, k, j), e(k, j, i), e(j, k, i), e(k, i, j)})
          r = std::max(r, std::abs(v - w));
      }
  return make_check("c-symmetric", "C(X,Y,Z) totally symmetric", r, tol);
}

TraceTensors trace_tensors(const CTensor& c, const LagrangianTorsion& t, double tol) {
  if (t.normal_leakage > tol)
    throw NkError(ErrorKind::TorsionNotTangential, "normal part " + fmt(t.normal_leakage));
  const std::size_t n = c.dim();
  const Tensor3& C = c.entries;
  const Tensor3& T = t.t;
  TraceTensors out{Matrix(n, n), Tensor3(n), Vector(n, 0.0)};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += contract_last(C, i, x, T, i, y);
      out.alpha(x, y) = s;
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t p = 0; p < n; ++p) {
            if (T(i, x, p) == 0.0) continue;
            for (std::size_t q = 0; q < n; ++q) s += T(i, x, p) * C(p, y, q) * T(i, z, q);
          }
        out.beta(x, y, z) = s;
      }
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t i = 0; i < n; ++i) out.h[z] += C(i, i, z);
  return out;
}

CyclicResiduals cyclic_identity_residuals(const CTensor& c, const LagrangianTorsion& t) {
  const std::size_t n = c.dim();
  const Tensor3& C = c.entries;
  const Tensor3& T = t.t;
  CyclicResiduals r;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t v = 0; v < n; ++v)
          r.cyc2 = std::max(r.cyc2, std::abs(contract_last(C, x, y, T, z, v) +
                                             contract_last(C, x, z, T, v, y) +
                                             contract_last(C, x, v, T, y, z)));
  TraceTensors tr = trace_tensors(c, t, std::numeric_limits<double>::infinity());
  auto alpha_t = [&](std::size_t a, std::size_t b, std::size_t z) {
    double s = 0.0;  // alpha(T(a,b), z)
    for (std::size_t w = 0; w < n; ++w) s += T(a, b, w) * tr.alpha(w, z);
    return s;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      double ht = 0.0;
      for (std::size_t w = 0; w < n; ++w) ht += tr.h[w] * T(x, y, w);
      r.mean = std::max(r.mean, std::abs(tr.alpha(x, y) - tr.alpha(y, x) - ht));
      for (std::size_t z = 0; z < n; ++z) {
        r.beta_swap = std::max(r.beta_swap, std::abs(tr.beta(x, y, z) - tr.beta(z, y, x)));
        r.beta_shift = std::max(r.beta_shift,
                                std::abs(tr.beta(x, y, z) - tr.beta(y, x, z) - alpha_t(y, x, z)));
        r.beta2 = std::max(r.beta2, std::abs(alpha_t(x, y, z) + alpha_t(y, z, x) + alpha_t(z, x, y)));
      }
    }
  return r;
}

CheckSuite check_cyclic_identities(const CTensor& c, const LagrangianTorsion& t, double tol) {
  CyclicResiduals r = cyclic_identity_residuals(c, t);
  if (r.cyc2 > tol) throw NkError(ErrorKind::Cyc2Violated, "cyc2 residual " + fmt(r.cyc2));
  CheckSuite s{"cyclic-identities", {}};
  s.add(make_check("cyc2", "C(X,Y,T(Z,V)) + C(X,Z,T(V,Y)) + C(X,V,T(Y,Z)) = 0", r.cyc2, tol));
  s.add(make_check("cyc-mean", "alpha(X,Y) - alpha(Y,X) = h(T(X,Y))", r.mean, tol));
  s.add(make_check("cyc-beta-swap", "beta(X,Y,Z) = beta(Z,Y,X)", r.beta_swap, tol));
  s.add(make_check("cyc-beta-shift", "beta(X,Y,Z) = beta(Y,X,Z) + alpha(T(Y,X),Z)", r.beta_shift, tol));
  s.add(make_check("cyc-beta2", "alpha(T(X,Y),Z) + alpha(T(Y,Z),X) + alpha(T(Z,X),Y) = 0", r.beta2, tol));
  return s;
}

std::vector<std::array<std::size_t, 3>> sym3_index(std::size_t n) {
  std::vector<std::array<std::size_t, 3>> idx;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) idx.push_back({i, j, k});
  return idx;
}

CTensor sym3_to_tensor(std::size_t n, const Vector& coeffs) {
  auto idx = sym3_index(n);
  if (coeffs.size() != idx.size()) throw NkError(ErrorKind::DimensionMismatch, "Sym^3 coefficient count");
  CTensor c{Tensor3(n)};
  for (std::size_t t = 0; t < idx.size(); ++t) {
    std::array<std::size_t, 3> p = idx[t];
    do {
      c.entries(p[0], p[1], p[2]) = coeffs[t];
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return c;
}

Matrix sym3_linear_map(std::size_t n, const std::function<Vector(const Tensor3&)>& f) {
  auto idx = sym3_index(n);
  std::vector<Vector> cols;
  cols.reserve(idx.size());
  for (const auto& t : idx) cols.push_back(f(symmetric_basis_tensor(n, t)));
  return Matrix::from_columns(cols, cols.empty() ? 0 : cols.front().size());
}

Matrix cyc2_constraints(const Tensor3& t) {
  const std::size_t n = t.dim0();
  return sym3_linear_map(n, [&](const Tensor3& s) {
    Vector rows;
    rows.reserve(n * n * n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          for (std::size_t v = 0; v < n; ++v)
            rows.push_back(contract_last(s, x, y, t, z, v) + contract_last(s, x, z, t, v, y) +
                           contract_last(s, x, v, t, y, z));
    return rows;
  });
}

Matrix mean_curvature_functionals(std::size_t n) {
  return sym3_linear_map(n, [&](const Tensor3& s) {
    Vector rows(n, 0.0);
    for (std::size_t z = 0; z < n; ++z)
      for (std::size_t i = 0; i < n; ++i) rows[z] += s(i, i, z);
    return rows;
  });
}

Matrix alpha_trace_functionals(const Tensor3& t) {
  const std::size_t n = t.dim0();
  return sym3_linear_map(n, [&](const Tensor3& s) {
    Vector rows(n * n, 0.0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t i = 0; i < n; ++i) rows[x * n + y] += contract_last(s, i, x, t, i, y);
    return rows;
  });
}

AdmissibleSpace admissible_c_space(const LagrangianTorsion& t, double tol) {
  if (t.normal_leakage > tol)
    throw NkError(ErrorKind::TorsionNotTangential, "normal part " + fmt(t.normal_leakage));
  AdmissibleSpace s;
  s.n = t.t.dim0();
  s.constraints = cyc2_constraints(t.t);
  s.rank = numerical_rank(s.constraints, kRankRelTol);
  s.basis = nullspace(s.constraints, kRankRelTol);
  return s;
}

CheckSuite theorem_a_check(const NKModel& m, const LagrangianSubspace& l) {
  if (m.dim() != 6) throw NkError(ErrorKind::NotDimension6, "dim = " + std::to_string(m.dim()));
  ROperatorReport r = r_operator(m);
  if (!r.is_strict) throw NkError(ErrorKind::NotStrict, m.name() + " has ker r of dim " + std::to_string(r.kernel_dim));
  const double tol = m.tol();
  CheckSuite s{"theorem-a", {}};
  s.append(lemma1_check(l));

  LagrangianTorsion lt = restrict_torsion(l);
  s.add(make_check("torsion-tangential", "T(X,Y) tangent to L", lt.normal_leakage, tol));
  const double a = lt.t(0, 1, 2);
  double vol = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        vol = std::max(vol, std::abs(lt.t(i, j, k) - a * permutation_sign({i, j, k})));
  s.add(make_check("tau-volume-form", "tau|L = a e1^e2^e3", vol, tol, "a = " + fmt(a)));
  s.add(make_flag("orientability", "tau|L nonvanishing", std::abs(a) > std::sqrt(tol),
                  "a = " + fmt(a)));
  TypeConstantReport tc = type_constant(m);
  s.add(make_check("type-constant-relation", "a^2 = alpha_type", std::abs(a * a - tc.alpha_type),
                   100.0 * tol, "alpha_type = " + fmt(tc.alpha_type)));

  Matrix alpha_rows = alpha_trace_functionals(lt.t);
  s.add(make_check("alpha-trace-vanishes", "alpha-trace of every symmetric C is 0", max_abs(alpha_rows), tol));

  AdmissibleSpace adm = admissible_c_space(lt, std::max(tol, lt.normal_leakage));
  RowSpaceContainment rc = row_space_contains(adm.constraints, mean_curvature_functionals(3), kRankRelTol);
  CheckReport mini = make_check("minimality", "trace functional in the row space of symmetry + cyc2",
                                rc.residual, tol,
                                "rank " + std::to_string(rc.rank_constraints) + " vs " +
                                    std::to_string(rc.rank_augmented) + ", admissible dim " +
                                    std::to_string(adm.dimension()));
  if (!rc.contained) mini.status = Status::Fail;
  s.add(mini);
  return s;
}

SplitResult split_by_r(const LagrangianSubspace& l) {
  const NKModel& m = l.model();
  require_valid(m);
  Matrix r = koto_r(m);
  const Matrix& x = l.basis();
  SplitResult out;
  out.checks.name = "split-by-r";
  Matrix rx = r * x;
  out.leakage = max_abs(rx - x * (x.transpose() * rx));
  Matrix u = l.normal_basis();
  Matrix ru = r * u;
  out.leakage = std::max(out.leakage, max_abs(ru - u * (u.transpose() * ru)));
  const double reduce_tol = std::max(10.0 * m.tol(), 1e-8);
  if (out.leakage > reduce_tol)
    throw NkError(ErrorKind::RNotReducing, "r(TL) leaves TL by " + fmt(out.leakage));
  out.checks.add(make_check("r-reduces", "r(TL) in TL and r(T^perp L) in T^perp L", out.leakage, reduce_tol));

  auto groups = group_eigenvalues(sym_eigendecomposition(r, m.tol()), spectrum_group_tol(m));
  bool law = true;
  std::vector<Vector> kernel_cols, rest_cols;
  for (const auto& g : groups) {
    Matrix meet = intersect_subspaces(g.basis, x);
    out.groups.push_back({g.eigenvalue, g.multiplicity, meet.cols()});
    law = law && 2 * meet.cols() == g.multiplicity;
    bool kernel = std::abs(g.eigenvalue) <= spectrum_group_tol(m);
    for (std::size_t j = 0; j < g.basis.cols(); ++j)
      (kernel ? kernel_cols : rest_cols).push_back(g.basis.column(j));
  }
  std::string detail;
  for (const auto& g : out.groups)
    detail += "(" + fmt(g.eigenvalue) + ", " + std::to_string(g.multiplicity) + ", " +
              std::to_string(g.dim_in_l) + ")";
  out.checks.add(make_flag("eigenspace-law", "dim(Eig(lambda) cap TL) = mult/2", law, detail));
  const std::size_t d = m.dim();
  out.l_k = intersect_subspaces(x, Matrix::from_columns(kernel_cols, d));
  out.l_snk = intersect_subspaces(x, Matrix::from_columns(rest_cols, d));
  std::size_t ker_dim = kernel_cols.size();
  out.checks.add(make_flag("kahler-part", "dim L_K = dim ker r / 2", 2 * out.l_k.cols() == ker_dim,
                           "dim L_K = " + std::to_string(out.l_k.cols())));
  out.checks.add(make_flag("complementary", "dim L_K + dim L_SNK = dim L",
                           out.l_k.cols() + out.l_snk.cols() == l.dim()));
  return out;
}

SpectrumSplit split_by_spectrum(const LagrangianSubspace& l) {
  const NKModel& m = l.model();
  if (m.blocks().size() < 2) throw NkError(ErrorKind::BadInput, m.name() + " is not a product");
  require_valid(m);
  const std::size_t d = m.dim(), d1 = m.blocks().front();
  const double gtol = spectrum_group_tol(m);
  Matrix r = koto_r(m);
  Matrix r1(d1, d1), r2(d - d1, d - d1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i < d1 && j < d1) r1(i, j) = r(i, j);
      if (i >= d1 && j >= d1) r2(i - d1, j - d1) = r(i, j);
    }
  auto s1 = group_eigenvalues(sym_eigendecomposition(r1, m.tol()), gtol);
  auto s2 = group_eigenvalues(sym_eigendecomposition(r2, m.tol()), gtol);
  for (const auto& a : s1)
    for (const auto& b : s2)
      if (std::abs(a.eigenvalue - b.eigenvalue) <= gtol)
        throw NkError(ErrorKind::SpectraOverlap, "shared eigenvalue " + fmt(a.eigenvalue));

  std::vector<Vector> v1, v2;
  for (const auto& g : group_eigenvalues(sym_eigendecomposition(r, m.tol()), gtol)) {
    bool first = std::any_of(s1.begin(), s1.end(), [&](const EigenGroup& e) {
      return std::abs(e.eigenvalue - g.eigenvalue) <= gtol;
    });
    for (std::size_t j = 0; j < g.basis.cols(); ++j) (first ? v1 : v2).push_back(g.basis.column(j));
  }
  SpectrumSplit out;
  out.checks.name = "split-by-spectrum";
  out.l1 = intersect_subspaces(l.basis(), Matrix::from_columns(v1, d));
  out.l2 = intersect_subspaces(l.basis(), Matrix::from_columns(v2, d));
  out.checks.add(make_flag("direct-sum", "L = (L cap V1) + (L cap V2)",
                           out.l1.cols() + out.l2.cols() == l.dim(),
                           std::to_string(out.l1.cols()) + " + " + std::to_string(out.l2.cols())));
  double leak1 = 0.0, leak2 = 0.0, omega = 0.0;
  for (std::size_t j = 0; j < out.l1.cols(); ++j)
    for (std::size_t i = d1; i < d; ++i) leak1 = std::max(leak1, std::abs(out.l1(i, j)));
  for (std::size_t j = 0; j < out.l2.cols(); ++j)
    for (std::size_t i = 0; i < d1; ++i) leak2 = std::max(leak2, std::abs(out.l2(i, j)));
  for (const Matrix* part : {&out.l1, &out.l2})
    omega = std::max(omega, part->cols() ? max_abs(part->transpose() * m.J() * *part) : 0.0);
  const double tol = std::max(10.0 * m.tol(), 1e-8);
  out.checks.add(make_check("factor-containment", "L cap V_i lies in the i-th factor",
                            std::max(leak1, leak2), tol));
  out.checks.add(make_flag("factor-lagrangian", "L cap V_i is half-dimensional in its factor",
                           2 * out.l1.cols() == v1.size() && 2 * out.l2.cols() == v2.size()));
  out.checks.add(make_check("factor-omega", "omega vanishes on each factor part", omega, tol));
  return out;
}

}  // namespace nkv
