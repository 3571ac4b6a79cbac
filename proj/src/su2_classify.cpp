#include "nkv/su2_classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>

#include "nkv/errors.hpp"
#include "nkv/lie_examples.hpp"
#include "nkv/linalg.hpp"
#include "nkv/random.hpp"

namespace nkv {

namespace {

constexpr double kSearchTarget = 1e-13;
constexpr int kSearchIterations = 100;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double det3(const Matrix& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// A(x_i x x_j) - (A x_i) x (A x_j) for i < j, stacked
Vector bracket_defect(const Matrix& a) {
  Vector out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      Vector ei = basis_vector(3, i), ej = basis_vector(3, j);
      Vector d = a * cross3(ei, ej) - cross3(a * ei, a * ej);
      out.insert(out.end(), d.begin(), d.end());
    }
  return out;
}

Matrix symmetric_direction(std::size_t p) {
  static const std::size_t idx[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
  Matrix e(3, 3);
  const std::size_t i = idx[p][0], j = idx[p][1];
  e(i, j) = 1.0;
  e(j, i) = 1.0;
  return e;
}

Vector defect_derivative(const Matrix& a, const Matrix& da) {
  Vector out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      Vector ei = basis_vector(3, i), ej = basis_vector(3, j);
      Vector d = da * cross3(ei, ej) - cross3(da * ei, a * ej) - cross3(a * ei, da * ej);
      out.insert(out.end(), d.begin(), d.end());
    }
  return out;
}

// Levenberg-Marquardt over symmetric 3x3 matrices towards the bracket constraint.
bool project_to_constraints(Matrix& a) {
  Vector f = bracket_defect(a);
  double lambda = 1e-3;
  for (int it = 0; it < kSearchIterations && max_abs(f) >= kSearchTarget; ++it) {
    Matrix jac(f.size(), 6);
    std::vector<Matrix> dirs;
    for (std::size_t p = 0; p < 6; ++p) {
      dirs.push_back(symmetric_direction(p));
      Vector col = defect_derivative(a, dirs.back());
      for (std::size_t r = 0; r < f.size(); ++r) jac(r, p) = col[r];
    }
    Matrix normal = jac.transpose() * jac;
    Vector g = jac.transpose() * f;
    bool improved = false;
    for (int attempt = 0; attempt < 12 && !improved; ++attempt) {
      Matrix damped = normal;
      Matrix rhs(6, 1);
      for (std::size_t p = 0; p < 6; ++p) {
        damped(p, p) += lambda * (1.0 + normal(p, p));
        rhs(p, 0) = -g[p];
      }
      Matrix step = solve(damped, rhs);
      Matrix trial = a;
      for (std::size_t p = 0; p < 6; ++p) trial = trial + step(p, 0) * dirs[p];
      Vector tf = bracket_defect(trial);
      if (norm(tf) < norm(f)) {
        a = trial;
        f = tf;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved) break;
  }
  return max_abs(f) < kSearchTarget;
}

Matrix diag3(double a, double b, double c) { return Matrix{{a, 0, 0}, {0, b, 0}, {0, 0, c}}; }

Vector lie_vector(std::size_t factor, const Vector& x) {
  Vector v(9, 0.0);
  for (std::size_t i = 0; i < 3; ++i) v[3 * factor + i] = x[i];
  return v;
}

bool is_subalgebra_in_g(const LieAlgebra& g, const Matrix& k, double tol) {
  Matrix q = gram_schmidt(k, 1e-12);
  for (std::size_t a = 0; a < q.cols(); ++a)
    for (std::size_t b = 0; b < q.cols(); ++b) {
      Vector br = g.bracket(q.column(a), q.column(b));
      Vector rest = br - q * (q.transpose() * br);
      if (max_abs(rest) > tol) return false;
    }
  return true;
}

bool is_lagrangian_in_m(const ThreeSymmetricSpace& t, const Matrix& l, double tol) {
  Matrix q = gram_schmidt(l, t.B, tol);
  if (2 * q.cols() != t.dim_m()) return false;
  for (std::size_t a = 0; a < q.cols(); ++a)
    for (std::size_t b = 0; b < q.cols(); ++b)
      if (std::abs(t.b(t.J * q.column(a), q.column(b))) > tol) return false;
  return true;
}

Matrix rotation_from(Rng& rng) {
  Matrix q = gram_schmidt(rng.normal_matrix(3, 3), 1e-12);
  if (q.cols() < 3) return Matrix::identity(3);
  if (det3(q) < 0.0)
    for (std::size_t i = 0; i < 3; ++i) q(i, 0) = -q(i, 0);
  return q;
}

}  // namespace

std::string sign_signature(const Vector& eigenvalues_desc, double zero_tol) {
  std::string s = "(";
  for (std::size_t i = 0; i < eigenvalues_desc.size(); ++i) {
    double v = eigenvalues_desc[i];
    s += std::abs(v) <= zero_tol ? '0' : (v > 0 ? '+' : '-');
    if (i + 1 < eigenvalues_desc.size()) s += ',';
  }
  return s + ")";
}

GraphEntry check_graph(const Matrix& a, double tol, std::string label) {
  if (a.rows() != 3 || a.cols() != 3) throw NkError(ErrorKind::DimensionMismatch, "graph map must be 3x3");
  GraphEntry e;
  e.label = std::move(label);
  e.a = a;
  e.lagrangian_residual = max_abs(a - a.transpose());
  e.lagrangian = e.lagrangian_residual <= tol;
  double sub = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Vector ei = basis_vector(3, i), ej = basis_vector(3, j);
      sub = std::max(sub, norm(a * cross3(ei, ej) - cross3(a * ei, a * ej)));
    }
  e.subalgebra_residual = sub;
  e.subalgebra = sub <= tol;
  Matrix sym = 0.5 * (a + a.transpose());
  SymEigResult eig = sym_eigendecomposition(sym, 1.0);
  e.eigenvalues.assign(eig.eigenvalues.rbegin(), eig.eigenvalues.rend());
  e.signature = sign_signature(e.eigenvalues);
  e.det = det3(a);
  return e;
}

Matrix graph_subspace(const ThreeSymmetricSpace& t, const Matrix& a) {
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < 3; ++i) {
    Vector x = basis_vector(3, i);
    cols.push_back(t.m_part(lie_vector(0, x) + lie_vector(1, a * x)));
  }
  return Matrix::from_columns(cols, t.dim_m());
}

ClassificationResult enumerate_solutions(std::size_t samples, std::uint64_t seed, double tol) {
  if (samples < 1000) throw NkError(ErrorKind::BadInput, "samples must be at least 1000");
  ClassificationResult res;
  res.samples = samples;
  res.seed = seed;
  std::map<std::string, GraphEntry> classes;

  // symmetric and orthogonal: eigenvalues are +-1, so diagonal sign matrices cover every orbit
  for (int mask = 0; mask < 8; ++mask) {
    Matrix a = diag3(mask & 1 ? -1.0 : 1.0, mask & 2 ? -1.0 : 1.0, mask & 4 ? -1.0 : 1.0);
    GraphEntry e = check_graph(a, tol, "diag");
    if (e.both() && !classes.count(e.signature)) classes.emplace(e.signature, e);
  }

  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Matrix g = rng.normal_matrix(3, 3);
    Matrix a = 0.5 * (g + g.transpose());
    if (!project_to_constraints(a)) continue;
    ++res.converged;
    GraphEntry e = check_graph(a, tol, "search");
    if (e.both() && !classes.count(e.signature)) classes.emplace(e.signature, e);
  }
  for (auto& [sig, e] : classes) res.solutions.push_back(e);

  const std::pair<const char*, Matrix> listed[] = {{"Id", diag3(1, 1, 1)},
                                                  {"diag(1,1,-1)", diag3(1, 1, -1)},
                                                  {"diag(1,-1,-1)", diag3(1, -1, -1)},
                                                  {"-Id", diag3(-1, -1, -1)}};
  for (const auto& [label, a] : listed) {
    ListedClassRow row;
    row.label = label;
    row.entry = check_graph(a, tol, label);
    auto it = classes.find(row.entry.signature);
    row.found_by_enumeration = it != classes.end();
    if (row.entry.both() && row.found_by_enumeration) {
      row.verdict = "agrees";
    } else {
      row.verdict = "listed as a solution class, computed lagrangian=" +
                    std::string(row.entry.lagrangian ? "true" : "false") +
                    " subalgebra=" + (row.entry.subalgebra ? "true" : "false") +
                    " (det " + fmt(row.entry.det) + ", subalgebra residual " +
                    fmt(row.entry.subalgebra_residual) + ")";
      res.discrepancies.push_back(std::string(label) + ": " + row.verdict);
    }
    res.listed_classes.push_back(row);
  }
  for (const GraphEntry& e : res.solutions) {
    bool listed = false;
    for (const auto& row : res.listed_classes) listed = listed || row.entry.signature == e.signature;
    if (!listed && e.signature != "(0,0,0)")
      res.discrepancies.push_back("found " + e.signature + " not among the listed classes");
  }

  ThreeSymmetricSpace t = s3s3_space(1.0, tol);
  const LieAlgebra& g = t.algebra;
  for (std::size_t factor = 0; factor < 2; ++factor) {
    FactorEntry f;
    f.label = factor == 0 ? "su(2)+0" : "0+su(2)";
    std::vector<Vector> kcols, mcols;
    for (std::size_t i = 0; i < 3; ++i) {
      Vector v = lie_vector(factor, basis_vector(3, i));
      kcols.push_back(v);
      mcols.push_back(t.m_part(v));
    }
    f.l_basis = Matrix::from_columns(mcols, t.dim_m());
    f.lagrangian = is_lagrangian_in_m(t, f.l_basis, tol);
    f.subalgebra = is_subalgebra_in_g(g, Matrix::from_columns(kcols, 9), tol);
    res.factors.push_back(f);
  }
  return res;
}

CheckSuite verify_totally_geodesic(const ClassificationResult& r, const ThreeSymmetricSpace& t,
                                   double tol) {
  CheckSuite s{"totally-geodesic", {}};
  NKModel model = to_nk_model(t, "s3s3");
  auto check_one = [&](const std::string& name, const Matrix& l_m) {
    double c_res = 0.0;
    std::string detail;
    bool ok = true;
    try {
      CTensor c = invariant_second_fundamental(t, l_m);
      c_res = max_abs(c.entries);
      std::vector<Vector> cols;
      for (std::size_t j = 0; j < l_m.cols(); ++j)
        cols.push_back(model.from_input_coordinates(l_m.column(j)));
      LagrangianSubspace l = make_lagrangian(model, Matrix::from_columns(cols, model.dim()));
      ok = lemma1_check(l).all_passed();
      if (!ok) detail = "lemma1 failed";
    } catch (const NkError& e) {
      ok = false;
      c_res = std::numeric_limits<double>::infinity();
      detail = e.what();
    }
    CheckReport c = make_check(name, "invariant Lagrangian from a subalgebra has C = 0", c_res, tol, detail);
    if (!ok) c.status = Status::Fail;
    s.add(c);
  };
  for (const GraphEntry& e : r.solutions)
    if (e.both()) check_one("graph" + e.signature, graph_subspace(t, e.a));
  for (const FactorEntry& f : r.factors) check_one("factor:" + f.label, f.l_basis);
  return s;
}

EfFrameReport ef_frame(const ThreeSymmetricSpace& t) {
  if (t.lie_dim() != 9 || t.dim_m() != 6)
    throw NkError(ErrorKind::DimensionMismatch, "e/f frame needs the S3xS3 space");
  EfFrameReport out;
  std::vector<Vector> e, f;
  for (std::size_t i = 0; i < 3; ++i) {
    e.push_back(t.m_part(lie_vector(0, basis_vector(3, i))));
    f.push_back(t.m_part(lie_vector(1, basis_vector(3, i))));
  }
  out.e = Matrix::from_columns(e, 6);
  out.f = Matrix::from_columns(f, 6);
  auto omega = [&](const Vector& x, const Vector& y) { return t.b(t.J * x, y); };
  out.c = omega(e[0], f[0]);
  double ee = 0.0, ff = 0.0, ef = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      ee = std::max(ee, std::abs(omega(e[i], e[j])));
      ff = std::max(ff, std::abs(omega(f[i], f[j])));
      ef = std::max(ef, std::abs(omega(e[i], f[j]) - (i == j ? out.c : 0.0)));
    }
  out.checks.name = "ef-frame";
  out.checks.add(make_check("omega-ee", "omega(e_i, e_j) = 0", ee, t.tol));
  out.checks.add(make_check("omega-ff", "omega(f_i, f_j) = 0", ff, t.tol));
  out.checks.add(make_check("omega-ef", "omega = c sum e^i ^ f^i", ef, t.tol, "c = " + fmt(out.c)));
  return out;
}

Matrix random_rotation(std::uint64_t seed) {
  Rng rng(seed);
  return rotation_from(rng);
}

CheckReport graph_equivariance(const Matrix& a, std::size_t count, std::uint64_t seed, double tol) {
  GraphEntry base = check_graph(a, tol);
  Rng rng(seed);
  std::size_t mismatches = 0;
  for (std::size_t k = 0; k < count; ++k) {
    Matrix r = rotation_from(rng);
    GraphEntry e = check_graph(r * a * r.transpose(), tol);
    if (e.lagrangian != base.lagrangian || e.subalgebra != base.subalgebra) ++mismatches;
  }
  return make_flag("graph-equivariance", "flags of R A R^t equal flags of A for rotations R",
                   mismatches == 0, std::to_string(mismatches) + " of " + std::to_string(count) + " differ");
}

}  // namespace nkv
