#include <cmath>
#include <string>
#include <vector>

#include "nkv/errors.hpp"
#include "nkv/lagrangian.hpp"
#include "nkv/linalg.hpp"
#include "nkv/random.hpp"

namespace nkv {

namespace {

constexpr double kTarget = 1e-13;
constexpr int kMaxIterations = 200;
constexpr int kMaxRestarts = 25;

Matrix greedy_frame(const NKModel& m, Rng& rng) {
  const std::size_t d = m.dim(), n = d / 2;
  std::vector<Vector> q;
  while (q.size() < n) {
    Vector v = rng.normal_vector(d);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& x : q) {
        v = v - dot(x, v) * x;
        Vector jx = m.J() * x;
        v = v - dot(jx, v) * jx;
      }
    double nv = norm(v);
    if (nv < 1e-6) continue;
    q.push_back((1.0 / nv) * v);
  }
  return Matrix::from_columns(q, d);
}

// Orthonormal basis of u(n) = {X skew, XJ = JX} as d x d matrices.
std::vector<Matrix> unitary_generators(const Matrix& J) {
  const std::size_t d = J.rows();
  std::vector<Matrix> gens;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      Matrix e(d, d);
      e(a, b) = 1.0;
      e(b, a) = -1.0;
      Matrix x = 0.5 * (e - J * e * J);
      for (int pass = 0; pass < 2; ++pass)
        for (const Matrix& g : gens) {
          double c = 0.0;
          for (std::size_t k = 0; k < x.data().size(); ++k) c += g.data()[k] * x.data()[k];
          x = x - c * g;
        }
      double nx = std::sqrt(std::max(0.0, [&] {
        double s = 0.0;
        for (double v : x.data()) s += v * v;
        return s;
      }()));
      if (nx > 1e-8) gens.push_back((1.0 / nx) * x);
    }
  return gens;
}

struct CubicEval {
  Vector f;                    // a(q_i,q_j,q_k), i<j<k
  std::vector<Vector> w;       // w[j*n+k](s) = a(e_s, q_j, q_k)
};

CubicEval evaluate(const NKModel& m, const Matrix& q) {
  const std::size_t d = m.dim(), n = q.cols();
  const Tensor3& A = m.A();
  CubicEval out;
  out.w.assign(n * n, Vector(d, 0.0));
  std::vector<Vector> cols(n);
  for (std::size_t a = 0; a < n; ++a) cols[a] = q.column(a);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      Vector& w = out.w[j * n + k];
      for (std::size_t s = 0; s < d; ++s) {
        double v = 0.0;
        for (std::size_t b = 0; b < d; ++b) {
          if (cols[j][b] == 0.0) continue;
          double inner = 0.0;
          for (std::size_t c = 0; c < d; ++c) inner += A(s, b, c) * cols[k][c];
          v += cols[j][b] * inner;
        }
        w[s] = v;
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) out.f.push_back(dot(cols[i], out.w[j * n + k]));
  return out;
}

Matrix cayley(const Matrix& x) {
  const Matrix id = Matrix::identity(x.rows());
  return solve(id - 0.5 * x, id + 0.5 * x);
}

// Levenberg-Marquardt on U(n) acting on the frame. Returns the final residual.
double refine(const NKModel& m, Matrix& q, const std::vector<Matrix>& gens, int& iterations) {
  const std::size_t n = q.cols();
  CubicEval ev = evaluate(m, q);
  double res = max_abs(ev.f);
  double lambda = 1e-3;
  for (int it = 0; it < kMaxIterations && res >= kTarget; ++it) {
    ++iterations;
    const std::size_t rows = ev.f.size(), cols = gens.size();
    Matrix jac(rows, cols);
    for (std::size_t g = 0; g < cols; ++g) {
      Matrix gq = gens[g] * q;
      std::size_t r = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          for (std::size_t k = j + 1; k < n; ++k, ++r)
            jac(r, g) = dot(gq.column(i), ev.w[j * n + k]) + dot(gq.column(j), ev.w[k * n + i]) +
                        dot(gq.column(k), ev.w[i * n + j]);
    }
    Matrix jt = jac.transpose();
    Matrix normal = jt * jac;
    Matrix rhs(cols, 1);
    Vector g = jt * ev.f;
    for (std::size_t c = 0; c < cols; ++c) rhs(c, 0) = -g[c];
    bool improved = false;
    for (int attempt = 0; attempt < 12 && !improved; ++attempt) {
      Matrix damped = normal;
      for (std::size_t c = 0; c < cols; ++c) damped(c, c) += lambda * (1.0 + normal(c, c));
      Matrix step = solve(damped, rhs);
      Matrix x(q.rows(), q.rows());
      for (std::size_t c = 0; c < cols; ++c) x = x + step(c, 0) * gens[c];
      Matrix trial = cayley(x) * q;
      CubicEval tev = evaluate(m, trial);
      if (norm(tev.f) < norm(ev.f)) {
        q = trial;
        ev = std::move(tev);
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
      } else {
        lambda *= 10.0;
      }
    }
    res = max_abs(ev.f);
    if (!improved) break;
  }
  return res;
}

}  // namespace

LagrangianSubspace greedy_lagrangian(const NKModel& m, std::uint64_t seed) {
  Rng rng(seed);
  return make_lagrangian(m, greedy_frame(m, rng));
}

LagrangianSubspace random_lagrangian(const NKModel& m, std::uint64_t seed, SamplerStats* stats) {
  Rng rng(seed);
  std::vector<Matrix> gens = unitary_generators(m.J());
  SamplerStats local;
  for (int restart = 0; restart <= kMaxRestarts; ++restart) {
    Matrix q = greedy_frame(m, rng);
    double res = refine(m, q, gens, local.iterations);
    if (res < kTarget) {
      local.restarts = restart;
      local.final_residual = res;
      if (stats) *stats = local;
      // the Cayley steps keep q orthonormal and omega-isotropic up to rounding
      return make_lagrangian(m, gram_schmidt(q, 1e-12));
    }
  }
  throw NkError(ErrorKind::Degenerate, "sampler did not converge for seed " + std::to_string(seed));
}

}  // namespace nkv
