#pragma once

#include <cstdint>
#include <random>

#include "nkv/tensor.hpp"

namespace nkv {

// mt19937_64 with explicit transforms; std distributions are implementation
// defined, and seeds must reproduce across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // [0, 1)
  double normal();
  Vector normal_vector(std::size_t n);
  Matrix normal_matrix(std::size_t rows, std::size_t cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nkv
