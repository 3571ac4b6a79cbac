#pragma once

#include <cstddef>
#include <vector>

#include "nkv/tensor.hpp"

namespace nkv {

struct SymEigResult {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // orthonormal columns
};

struct EigenGroup {
  double eigenvalue;
  std::size_t multiplicity;
  Matrix basis;  // columns span the eigenspace
};

// Symmetrized input, ascending eigenvalues. Throws NotSymmetric if max |m_ij - m_ji| > tol.
SymEigResult sym_eigendecomposition(const Matrix& m, double tol);

// Consecutive eigenvalues closer than tol to the running group are merged.
std::vector<EigenGroup> group_eigenvalues(const SymEigResult& e, double tol);

struct SvdResult {
  Vector singular_values;  // descending
  Matrix v;                // right singular vectors as columns
};

// Full V, so the trailing columns span the nullspace.
SvdResult svd(const Matrix& m);

// Rank with threshold rel_tol * sigma_max.
std::size_t numerical_rank(const Matrix& m, double rel_tol);
// Orthonormal basis (columns) of the column space of m.
Matrix column_space(const Matrix& m, double rel_tol);
// Orthonormal basis (columns) of {x : m x = 0}.
Matrix nullspace(const Matrix& m, double rel_tol);

struct RowSpaceContainment {
  std::size_t rank_constraints;
  std::size_t rank_augmented;
  double residual;  // max |F N| over the nullspace N of the constraints
  bool contained;   // exact integer rank agreement
};

// Are the rows of functionals in the row space of constraints.
RowSpaceContainment row_space_contains(const Matrix& constraints, const Matrix& functionals,
                                       double rel_tol);

// Orthonormalize the columns of vectors with respect to g; dependent columns
// (remaining norm below tol) are dropped.
Matrix gram_schmidt(const Matrix& vectors, const Matrix& g, double tol);
Matrix gram_schmidt(const Matrix& vectors, double tol);

// Full-pivot LU; throws Degenerate when singular.
Matrix solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);
bool is_positive_definite(const Matrix& g, double tol);

// Orthonormal basis of span(a) cap span(b), both given by orthonormal columns.
// Uses eigenvalues of the compressed projector product above 0.5.
Matrix intersect_subspaces(const Matrix& a, const Matrix& b);

// Orthogonal complement of the orthonormal columns of a inside R^dim.
Matrix orthogonal_complement(const Matrix& a, double tol);

}  // namespace nkv
