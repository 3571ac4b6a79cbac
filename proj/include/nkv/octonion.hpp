#pragma once

#include <array>

#include "nkv/tensor.hpp"

namespace nkv::octonion {

// Oriented Fano lines (a, b, c) meaning e_a e_b = e_c. Units are numbered 1..7,
// e_0 is the real unit.
inline constexpr std::array<std::array<int, 3>, 7> kFanoLines{{
    {1, 2, 3}, {1, 4, 5}, {2, 4, 6}, {3, 4, 7}, {1, 7, 6}, {2, 5, 7}, {3, 6, 5}}};

struct UnitProduct {
  int sign;
  int index;
};

// e_i * e_j for i, j in 0..7.
UnitProduct unit_product(int i, int j);

// Full product of octonions given as 8-vectors (real part first).
Vector multiply(const Vector& x, const Vector& y);

// Seven-dimensional cross product u x v = Im(u v) on imaginary parts (7-vectors).
Vector cross7(const Vector& u, const Vector& v);

}  // namespace nkv::octonion
