#include "nkv/octonion.hpp"

#include "nkv/errors.hpp"

namespace nkv::octonion {

namespace {

struct Table {
  std::array<std::array<UnitProduct, 8>, 8> entry{};
  Table() {
    for (int i = 0; i < 8; ++i) {
      entry[0][i] = {1, i};
      entry[i][0] = {1, i};
    }
    for (int i = 1; i < 8; ++i) entry[i][i] = {-1, 0};
    for (const auto& line : kFanoLines) {
      for (int r = 0; r < 3; ++r) {
        int a = line[r], b = line[(r + 1) % 3], c = line[(r + 2) % 3];
        entry[a][b] = {1, c};
        entry[b][a] = {-1, c};
      }
    }
  }
};

const Table& table() {
  static const Table t;
  return t;
}

}  // namespace

UnitProduct unit_product(int i, int j) { return table().entry.at(i).at(j); }

Vector multiply(const Vector& x, const Vector& y) {
  if (x.size() != 8 || y.size() != 8) throw NkError(ErrorKind::DimensionMismatch, "octonion");
  Vector out(8, 0.0);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      UnitProduct p = unit_product(i, j);
      out[p.index] += p.sign * x[i] * y[j];
    }
  return out;
}

Vector cross7(const Vector& u, const Vector& v) {
  if (u.size() != 7 || v.size() != 7) throw NkError(ErrorKind::DimensionMismatch, "cross7");
  Vector a(8, 0.0), b(8, 0.0);
  for (int i = 0; i < 7; ++i) {
    a[i + 1] = u[i];
    b[i + 1] = v[i];
  }
  Vector p = multiply(a, b);
  return Vector(p.begin() + 1, p.end());
}

}  // namespace nkv::octonion
