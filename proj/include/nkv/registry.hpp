#pragma once

#include <optional>
#include <string>

#include "nkv/homogeneous.hpp"
#include "nkv/nk_model.hpp"

namespace nkv {

// Built-in names: flat-kahler:n, c<n>, s6[:scale], s3s3[:scale], cp3[:scale],
// twistor:n:kappa, product:a,b (split at the first comma), lie:FILE, or a path
// ending in .json. The model is renamed to the given string.
NKModel resolve_model(const std::string& spec, double tol = kDefaultTol);

// The three-symmetric space behind s3s3[:scale], cp3[:scale] and lie:FILE;
// empty for other names.
std::optional<ThreeSymmetricSpace> resolve_space(const std::string& spec, double tol = kDefaultTol);

}  // namespace nkv
