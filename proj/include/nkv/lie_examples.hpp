#pragma once

#include "nkv/homogeneous.hpp"

namespace nkv {

// su(2) + su(2) + su(2) with [e_i, e_j] = 2 eps_ijk e_k in each factor;
// coordinates (factor f, index i) -> 3 f + i.
LieAlgebra su2_cubed();
// cyclic automorphism (X, Y, Z) -> (Z, X, Y)
Matrix su2_cubed_cycle();
ThreeSymmetricSpace s3s3_space(double scale = 1.0, double tol = kDefaultTol);

// so(5) with basis E_ij = e_i e_j^T - e_j e_i^T (i < j, lexicographic).
LieAlgebra so5();
// conjugation by a rotation of angle 2 pi / 3 in the planes (0,1) and (2,3)
Matrix so5_cp3_automorphism();
ThreeSymmetricSpace cp3_space(double scale = 1.0, double tol = kDefaultTol);
// -Killing form on so(5) with the directions E_i4 multiplied by horizontal_factor
Matrix so5_squashed_form(double horizontal_factor);

// abelian algebra R^2 with rotation by 2 pi / 3 and B = Id
ThreeSymmetricSpace abelian_plane_space(double tol = kDefaultTol);

}  // namespace nkv
