#include "nkv/twistor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "nkv/errors.hpp"
#include "nkv/linalg.hpp"

namespace nkv {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Vector torsion_apply(const NKModel& m, const Vector& x, const Vector& y) {
  return -1.0 * (m.J() * m.apply_A(x, y));
}

double leak_outside(const Matrix& basis, const Vector& v) {
  return max_abs(v - basis * (basis.transpose() * v));
}

}  // namespace

Matrix quaternion_left(std::size_t n, double q0, double q1, double q2, double q3) {
  Matrix block{{q0, -q1, -q2, -q3}, {q1, q0, -q3, q2}, {q2, q3, q0, -q1}, {q3, -q2, q1, q0}};
  return kron_identity(n, block);
}

TwistorModel build_twistor_model(std::size_t n, double kappa, double tol) {
  if (n == 0) throw NkError(ErrorKind::BadInput, "twistor model needs n >= 1");
  if (!(kappa > 0.0)) throw NkError(ErrorKind::BadInput, "kappa must be positive");
  const std::size_t h = 4 * n, d = h + 2, u = h, v = h + 1;
  Matrix I = quaternion_left(n, 0, 1, 0, 0);
  Matrix Jq = quaternion_left(n, 0, 0, 1, 0);
  Matrix K = quaternion_left(n, 0, 0, 0, 1);

  Matrix J(d, d);
  for (std::size_t a = 0; a < h; ++a)
    for (std::size_t b = 0; b < h; ++b) J(a, b) = I(a, b);
  J(v, u) = 1.0;   // J u = v
  J(u, v) = -1.0;  // J v = -u

  // torsion T(i,j,k) = k-th component of T(e_i, e_j)
  Tensor3 T(d);
  for (std::size_t x = 0; x < h; ++x)
    for (std::size_t a = 0; a < h; ++a) {
      T(u, x, a) = kappa * Jq(a, x);
      T(x, u, a) = -kappa * Jq(a, x);
      T(v, x, a) = -kappa * K(a, x);
      T(x, v, a) = kappa * K(a, x);
    }
  for (std::size_t x = 0; x < h; ++x)
    for (std::size_t y = 0; y < h; ++y) {
      T(x, y, u) = kappa * Jq(y, x);  // <Jq e_x, e_y>
      T(x, y, v) = -kappa * K(y, x);
    }
  Tensor3 A(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        double s = 0.0;
        for (std::size_t c = 0; c < d; ++c) s += J(k, c) * T(i, j, c);
        A(i, j, k) = s;
      }

  char name[64];
  std::snprintf(name, sizeof name, "twistor:%zu:%g", n, kappa);
  NKModel model(name, Matrix::identity(d), J, A, tol);
  Matrix hb(d, h), vb(d, 2);
  for (std::size_t a = 0; a < h; ++a) hb(a, a) = 1.0;
  vb(u, 0) = 1.0;
  vb(v, 1) = 1.0;
  return TwistorModel{n, kappa, model, hb, vb, I, Jq, K};
}

CheckSuite check_torsion_axioms(const NKModel& m, const Matrix& h, const Matrix& v) {
  const double tol = m.tol();
  double hh = 0.0, hv = 0.0, vv = 0.0;
  for (std::size_t a = 0; a < h.cols(); ++a) {
    for (std::size_t b = 0; b < h.cols(); ++b)
      hh = std::max(hh, leak_outside(v, torsion_apply(m, h.column(a), h.column(b))));
    for (std::size_t b = 0; b < v.cols(); ++b)
      hv = std::max(hv, leak_outside(h, torsion_apply(m, h.column(a), v.column(b))));
  }
  for (std::size_t a = 0; a < v.cols(); ++a)
    for (std::size_t b = 0; b < v.cols(); ++b)
      vv = std::max(vv, max_abs(torsion_apply(m, v.column(a), v.column(b))));

  double weakest = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < h.cols(); ++a) {
    Matrix map(v.cols(), h.cols());
    for (std::size_t b = 0; b < h.cols(); ++b) {
      Vector t = v.transpose() * torsion_apply(m, h.column(a), h.column(b));
      for (std::size_t r = 0; r < v.cols(); ++r) map(r, b) = t[r];
    }
    SvdResult s = svd(map.transpose());
    weakest = std::min(weakest, s.singular_values.empty() ? 0.0 : s.singular_values.back());
  }
  CheckSuite s{"torsion-axioms", {}};
  s.add(make_check("tor1", "T(H,H) in V", hh, tol));
  s.add(make_check("tor2", "T(H,V) in H", hv, tol));
  s.add(make_check("tor3", "T(V,V) = 0", vv, tol));
  s.add(make_flag("surjective", "X -> T(Y,X) maps H onto V for Y != 0",
                  weakest > std::sqrt(tol), "smallest singular value " + fmt(weakest)));
  return s;
}

CheckSuite check_torsion_axioms(const TwistorModel& t) {
  return check_torsion_axioms(t.model, t.horizontal, t.vertical);
}

PhiMap phi_maps(const NKModel& m, const Matrix& h, const Matrix& v, const Vector& w, double kappa) {
  const double tol = m.tol();
  if (w.size() != m.dim()) throw NkError(ErrorKind::DimensionMismatch, "W has wrong length");
  if (leak_outside(v, w) > tol || std::abs(norm(w) - 1.0) > tol)
    throw NkError(ErrorKind::NotVertical, "W must be a unit vertical vector");
  const std::size_t nh = h.cols();
  PhiMap out{Matrix(nh, nh), {"phi", {}}};
  Matrix phi_jw(nh, nh);
  Vector jw = m.J() * w;
  for (std::size_t b = 0; b < nh; ++b) {
    Vector t = h.transpose() * torsion_apply(m, w, h.column(b));
    Vector tj = h.transpose() * torsion_apply(m, jw, h.column(b));
    for (std::size_t a = 0; a < nh; ++a) {
      out.phi_w(a, b) = t[a];
      phi_jw(a, b) = tj[a];
    }
  }
  Matrix jh = h.transpose() * m.J() * h;
  out.checks.add(make_check("phi-square", "(Phi^W)^2 = -kappa^2 Id",
                            max_abs(out.phi_w * out.phi_w + (kappa * kappa) * Matrix::identity(nh)), tol));
  out.checks.add(make_check("phi-JW", "Phi^{JW} = -J Phi^W", max_abs(phi_jw + jh * out.phi_w), tol));
  out.checks.add(make_check("phi-conformal", "g(Phi^W X, Phi^W Y) = kappa^2 g(X,Y)",
                            max_abs(out.phi_w.transpose() * out.phi_w - (kappa * kappa) * Matrix::identity(nh)),
                            tol));
  return out;
}

PhiMap phi_maps(const TwistorModel& t, const Vector& w) {
  return phi_maps(t.model, t.horizontal, t.vertical, w, t.kappa);
}

BlockStructure lagrangian_block_structure(const TwistorModel& t, const LagrangianSubspace& l) {
  if (t.n < 2) throw NkError(ErrorKind::RequiresNGreaterOne, "eigenvalues 4 kappa^2 and 4 n kappa^2 coincide");
  const NKModel& m = t.model;
  const double tol = std::max(10.0 * m.tol(), 1e-8);
  SplitResult split = split_by_r(l);
  const double lambda_v = 4.0 * static_cast<double>(t.n) * t.kappa * t.kappa;
  auto groups = group_eigenvalues(sym_eigendecomposition(koto_r(m), m.tol()), spectrum_group_tol(m));
  Matrix eig_v, eig_h;
  for (const auto& g : groups) {
    if (std::abs(g.eigenvalue - lambda_v) <= spectrum_group_tol(m)) eig_v = g.basis;
    else eig_h = eig_h.cols() ? hstack(eig_h, g.basis) : g.basis;
  }
  BlockStructure out;
  out.checks = split.checks;
  out.checks.name = "block-structure";
  out.d = intersect_subspaces(l.basis(), eig_v);
  out.d_perp = intersect_subspaces(l.basis(), eig_h);
  out.checks.add(make_flag("vertical-line", "dim(L cap V) = 1", out.d.cols() == 1,
                           "dim = " + std::to_string(out.d.cols())));
  out.checks.add(make_flag("horizontal-part", "dim(L cap H) = 2n", out.d_perp.cols() == 2 * t.n,
                           "dim = " + std::to_string(out.d_perp.cols())));
  if (out.d.cols() != 1 || out.d_perp.cols() != 2 * t.n) return out;

  double dv = leak_outside(t.vertical, out.d.column(0)), dh = 0.0;
  for (std::size_t j = 0; j < out.d_perp.cols(); ++j)
    dh = std::max(dh, leak_outside(t.horizontal, out.d_perp.column(j)));
  out.checks.add(make_check("d-vertical", "L cap Eig(4 n kappa^2) lies in V", dv, tol));
  out.checks.add(make_check("dperp-horizontal", "L cap Eig(4 kappa^2) lies in H", dh, tol));

  // pi^H(TL) = L cap H and pi^V(TL) = L cap V
  Matrix ph = t.horizontal * t.horizontal.transpose(), pv = t.vertical * t.vertical.transpose();
  double proj = 0.0;
  for (std::size_t j = 0; j < l.dim(); ++j) {
    Vector x = l.basis().column(j);
    proj = std::max(proj, leak_outside(out.d_perp, ph * x));
    proj = std::max(proj, leak_outside(out.d, pv * x));
  }
  out.checks.add(make_check("projections", "pi^H(TL) = L cap H, pi^V(TL) = L cap V", proj, tol));
  out.adapted = hstack(out.d_perp, out.d);
  return out;
}

TheoremBReport theorem_b_linear_check(const TwistorModel& t, const LagrangianSubspace& l) {
  BlockStructure bs = lagrangian_block_structure(t, l);
  TheoremBReport rep;
  rep.checks = bs.checks;
  rep.checks.name = "theorem-b";
  if (!bs.checks.all_passed()) return rep;
  const NKModel& m = t.model;
  const double tol = m.tol();
  const std::size_t n = l.dim(), h = n - 1, U = n - 1;

  LagrangianSubspace adapted = make_lagrangian(m, bs.adapted);
  LagrangianTorsion lt = restrict_torsion(adapted);
  rep.checks.add(make_check("torsion-tangential", "T(X,Y) tangent to L", lt.normal_leakage, tol));

  const Matrix& x = adapted.basis();
  Vector uvec = x.column(U);
  Matrix phi(h, h);
  for (std::size_t b = 0; b < h; ++b) {
    Vector img = (1.0 / t.kappa) * (m.J() * m.apply_A(uvec, x.column(b)));
    for (std::size_t a = 0; a < h; ++a) phi(a, b) = dot(x.column(a), img);
  }
  rep.system.phi = phi;
  rep.checks.add(make_check("phi-complex", "Phi^2 = -Id on D_perp",
                            max_abs(phi * phi + Matrix::identity(h)), tol));
  rep.checks.add(make_check("phi-isometry", "g(Phi X, Phi Y) = g(X,Y)",
                            max_abs(phi.transpose() * phi - Matrix::identity(h)), tol));

  rep.system.block = sym3_linear_map(n, [&](const Tensor3& s) {
    Vector rows;
    for (std::size_t a = 0; a < h; ++a)
      for (std::size_t z = 0; z < n; ++z) rows.push_back(s(a, U, z));
    return rows;
  });
  rep.system.pluri = sym3_linear_map(n, [&](const Tensor3& s) {
    Vector rows;
    for (std::size_t a = 0; a < h; ++a)
      for (std::size_t b = 0; b < h; ++b)
        for (std::size_t z = 0; z < n; ++z) {
          double v = s(a, b, z);
          for (std::size_t p = 0; p < h; ++p)
            for (std::size_t q = 0; q < h; ++q) v += phi(p, a) * phi(q, b) * s(p, q, z);
          rows.push_back(v);
        }
    return rows;
  });
  rep.system.cyc2 = cyc2_constraints(lt.t);
  rep.system.trace = mean_curvature_functionals(n);
  rep.system.vertical = sym3_linear_map(n, [&](const Tensor3& s) {
    Vector rows;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) rows.push_back(s(U, a, b));
    return rows;
  });

  Matrix literal = vstack(rep.system.block, rep.system.pluri);
  Matrix full = vstack(literal, rep.system.cyc2);
  auto summarize = [&](const Matrix& c, ContainmentSummary& out) {
    RowSpaceContainment tr = row_space_contains(c, rep.system.trace, kRankRelTol);
    RowSpaceContainment ve = row_space_contains(c, rep.system.vertical, kRankRelTol);
    out.dimension = c.cols() - tr.rank_constraints;
    out.trace_contained = tr.contained;
    out.vertical_contained = ve.contained;
    return std::pair{tr, ve};
  };
  summarize(literal, rep.literal);
  auto [tr, ve] = summarize(full, rep.constrained);

  std::string dims = "constrained dim " + std::to_string(rep.constrained.dimension) +
                     " of " + std::to_string(full.cols());
  CheckReport minimal = make_check("minimality", "trace functional vanishes on the constrained C-space",
                                   tr.residual, tol, dims);
  if (!tr.contained) minimal.status = Status::Fail;
  rep.checks.add(minimal);
  CheckReport vertical = make_check("vertical-normal-vanishes", "C(U,.,.) = 0 on the constrained C-space",
                                    ve.residual, tol, dims);
  if (!ve.contained) vertical.status = Status::Fail;
  rep.checks.add(vertical);

  // cyc2 alone should already force the block and pluriminimal rows
  RowSpaceContainment implied = row_space_contains(rep.system.cyc2, literal, kRankRelTol);
  CheckReport cross = make_check("cyc2-implies-pluriminimal",
                                 "block and pluriminimal rows lie in the cyc2 row space",
                                 implied.residual, tol);
  if (!implied.contained) cross.status = Status::Fail;
  rep.checks.add(cross);
  return rep;
}

double theorem_b_constraint_residual(const TheoremBSystem& s, const CTensor& c) {
  const std::size_t n = c.dim();
  auto idx = sym3_index(n);
  Vector coeffs(idx.size());
  for (std::size_t t = 0; t < idx.size(); ++t) coeffs[t] = c.entries(idx[t][0], idx[t][1], idx[t][2]);
  double r = 0.0;
  for (const Matrix* m : {&s.block, &s.pluri, &s.cyc2}) r = std::max(r, max_abs(*m * coeffs));
  return r;
}

CheckReport vertical_geodesic_note(const TwistorModel& t, const TheoremBReport* report) {
  const char* anchor = "C(D,D,.) = 0: the fibre direction has vanishing geodesic curvature";
  if (t.n < 2 || report == nullptr)
    return make_skipped("vertical-geodesic", anchor, "requires n > 1");
  const CheckReport* v = report->checks.find("vertical-normal-vanishes");
  if (v == nullptr) return make_skipped("vertical-geodesic", anchor, "block structure unavailable");
  CheckReport c = *v;
  c.name = "vertical-geodesic";
  c.anchor = anchor;
  return c;
}

LagrangianSubspace twistor_explicit_lagrangian(const TwistorModel& t) {
  const std::size_t d = t.model.dim();
  std::vector<Vector> cols;
  for (std::size_t q = 0; q < t.n; ++q) {
    cols.push_back(basis_vector(d, 4 * q));
    cols.push_back(basis_vector(d, 4 * q + 2));
  }
  cols.push_back(basis_vector(d, t.u_index()));
  return make_lagrangian(t.model, Matrix::from_columns(cols, d));
}

}  // namespace nkv
