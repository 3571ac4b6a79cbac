#pragma once

#include <cstddef>
#include <vector>

#include "nkv/tensor.hpp"

namespace nkv {

using MultiIndex = std::vector<std::size_t>;

// All strictly increasing multi-indices of length p in {0..dim-1}, lexicographic.
std::vector<MultiIndex> increasing_multi_indices(std::size_t dim, std::size_t p);

// Position of an increasing multi-index in the lexicographic list, or npos.
std::size_t multi_index_position(std::size_t dim, const MultiIndex& idx);

// Sign of the permutation sorting idx, 0 if idx has a repeated entry.
int permutation_sign(const MultiIndex& idx);

class ExteriorForm {
 public:
  ExteriorForm(std::size_t dim, std::size_t degree);
  ExteriorForm(std::size_t dim, std::size_t degree, Vector coeffs);
  // 2-form with coefficients w(i,j), i<j, of an antisymmetric matrix.
  static ExteriorForm from_antisymmetric(const Matrix& w);

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  const Vector& coeffs() const { return coeffs_; }
  // Value on basis vectors e_{idx[0]}, ..., e_{idx[p-1]} in any order.
  double on_basis(const MultiIndex& idx) const;

 private:
  std::size_t dim_, degree_;
  Vector coeffs_;
};

// Hodge star Lambda^p -> Lambda^{dim-p} in an orthonormal frame with the given
// orientation sign: *(e^I) = orientation * sign(I, I^c) e^{I^c}.
Matrix hodge_star_matrix(std::size_t dim, std::size_t p, double orientation);

// Exterior derivative on left-invariant p-forms from structure constants
// c(i,j,k) = coefficient of e_k in [e_i, e_j]:
// d theta(X_0..X_p) = sum_{i<j} (-1)^{i+j} theta([X_i,X_j], X_0..^i..^j..X_p).
Matrix maurer_cartan_d(const Tensor3& c, std::size_t p);

}  // namespace nkv
