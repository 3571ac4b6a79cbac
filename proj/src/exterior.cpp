#include "nkv/exterior.hpp"

#include <algorithm>

#include "nkv/errors.hpp"

namespace nkv {

namespace {

void extend(std::size_t dim, std::size_t p, std::size_t next, MultiIndex& cur,
            std::vector<MultiIndex>& out) {
  if (cur.size() == p) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = next; i < dim; ++i) {
    cur.push_back(i);
    extend(dim, p, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> increasing_multi_indices(std::size_t dim, std::size_t p) {
  std::vector<MultiIndex> out;
  MultiIndex cur;
  if (p <= dim) extend(dim, p, 0, cur, out);
  return out;
}

std::size_t multi_index_position(std::size_t dim, const MultiIndex& idx) {
  auto all = increasing_multi_indices(dim, idx.size());
  auto it = std::find(all.begin(), all.end(), idx);
  return it == all.end() ? static_cast<std::size_t>(-1)
                         : static_cast<std::size_t>(it - all.begin());
}

int permutation_sign(const MultiIndex& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  return sign;
}

ExteriorForm::ExteriorForm(std::size_t dim, std::size_t degree)
    : dim_(dim), degree_(degree), coeffs_(increasing_multi_indices(dim, degree).size(), 0.0) {}

ExteriorForm::ExteriorForm(std::size_t dim, std::size_t degree, Vector coeffs)
    : ExteriorForm(dim, degree) {
  if (coeffs.size() != coeffs_.size())
    throw NkError(ErrorKind::DimensionMismatch, "exterior form coefficient count");
  coeffs_ = std::move(coeffs);
}

ExteriorForm ExteriorForm::from_antisymmetric(const Matrix& w) {
  ExteriorForm f(w.rows(), 2);
  auto idx = increasing_multi_indices(w.rows(), 2);
  for (std::size_t k = 0; k < idx.size(); ++k) f.coeffs_[k] = w(idx[k][0], idx[k][1]);
  return f;
}

double ExteriorForm::on_basis(const MultiIndex& idx) const {
  if (idx.size() != degree_) throw NkError(ErrorKind::DimensionMismatch, "form degree");
  int s = permutation_sign(idx);
  if (s == 0) return 0.0;
  MultiIndex sorted(idx);
  std::sort(sorted.begin(), sorted.end());
  return s * coeffs_[multi_index_position(dim_, sorted)];
}

Matrix hodge_star_matrix(std::size_t dim, std::size_t p, double orientation) {
  auto src = increasing_multi_indices(dim, p);
  auto dst = increasing_multi_indices(dim, dim - p);
  Matrix star(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    MultiIndex comp;
    for (std::size_t i = 0; i < dim; ++i)
      if (std::find(src[c].begin(), src[c].end(), i) == src[c].end()) comp.push_back(i);
    MultiIndex joined(src[c]);
    joined.insert(joined.end(), comp.begin(), comp.end());
    std::size_t row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), comp) - dst.begin());
    star(row, c) = orientation * permutation_sign(joined);
  }
  return star;
}

Matrix maurer_cartan_d(const Tensor3& c, std::size_t p) {
  const std::size_t n = c.dim0();
  auto src = increasing_multi_indices(n, p);
  auto dst = increasing_multi_indices(n, p + 1);
  Matrix d(dst.size(), src.size());
  for (std::size_t r = 0; r < dst.size(); ++r) {
    const MultiIndex& x = dst[r];
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        MultiIndex rest;
        for (std::size_t m = 0; m < x.size(); ++m)
          if (m != i && m != j) rest.push_back(x[m]);
        for (std::size_t k = 0; k < n; ++k) {
          double ck = c(x[i], x[j], k);
          if (ck == 0.0) continue;
          MultiIndex args{k};
          args.insert(args.end(), rest.begin(), rest.end());
          int s = permutation_sign(args);
          if (s == 0) continue;
          MultiIndex sorted(args);
          std::sort(sorted.begin(), sorted.end());
          std::size_t col = static_cast<std::size_t>(
              std::find(src.begin(), src.end(), sorted) - src.begin());
          d(r, col) += sgn * ck * s;
        }
      }
  }
  return d;
}

}  // namespace nkv
