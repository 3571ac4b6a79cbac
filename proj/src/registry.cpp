#include "nkv/registry.hpp"

#include <cstdlib>

#include "nkv/errors.hpp"
#include "nkv/lie_examples.hpp"
#include "nkv/model_io.hpp"
#include "nkv/twistor.hpp"

namespace nkv {

namespace {

[[noreturn]] void unknown(const std::string& spec, const std::string& why) {
  throw NkError(ErrorKind::BadInput, "cannot resolve model \"" + spec + "\": " + why);
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }
bool ends_with(const std::string& s, const std::string& p) {
  return s.size() >= p.size() && s.compare(s.size() - p.size(), p.size(), p) == 0;
}

double parse_real(const std::string& spec, const std::string& text) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0') unknown(spec, "\"" + text + "\" is not a number");
  return v;
}

std::size_t parse_count(const std::string& spec, const std::string& text) {
  char* end = nullptr;
  long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0' || v <= 0) unknown(spec, "\"" + text + "\" is not a positive integer");
  return static_cast<std::size_t>(v);
}

// "name" or "name:scale"
std::optional<double> scaled(const std::string& spec, const std::string& name) {
  if (spec == name) return 1.0;
  if (starts_with(spec, name + ":")) {
    double s = parse_real(spec, spec.substr(name.size() + 1));
    if (!(s > 0.0)) unknown(spec, "scale must be positive");
    return s;
  }
  return std::nullopt;
}

NKModel build(const std::string& spec, double tol) {
  if (starts_with(spec, "product:")) {
    std::string rest = spec.substr(8);
    auto comma = rest.find(',');
    if (comma == std::string::npos) unknown(spec, "product needs two factors a,b");
    return build_product(resolve_model(rest.substr(0, comma), tol), resolve_model(rest.substr(comma + 1), tol));
  }
  if (starts_with(spec, "flat-kahler:")) return build_flat_kahler(parse_count(spec, spec.substr(12)), tol);
  if (spec.size() > 1 && spec[0] == 'c' && spec.find_first_not_of("0123456789", 1) == std::string::npos)
    return build_flat_kahler(parse_count(spec, spec.substr(1)), tol);
  if (auto s = scaled(spec, "s6")) return build_s6(*s, tol);
  if (auto s = scaled(spec, "s3s3")) return build_s3s3(*s, tol);
  if (auto s = scaled(spec, "cp3")) return build_cp3(*s, tol);
  if (starts_with(spec, "twistor:")) {
    std::string rest = spec.substr(8);
    auto colon = rest.find(':');
    std::size_t n = parse_count(spec, rest.substr(0, colon));
    double kappa = colon == std::string::npos ? 1.0 : parse_real(spec, rest.substr(colon + 1));
    return build_twistor_model(n, kappa, tol).model;
  }
  if (starts_with(spec, "lie:")) {
    auto space = resolve_space(spec, tol);
    return to_nk_model(*space, spec);
  }
  if (ends_with(spec, ".json")) return model_from_json(read_json_file(spec)).with_tol(tol);
  unknown(spec, "unknown name");
}

}  // namespace

NKModel resolve_model(const std::string& spec, double tol) { return build(spec, tol).renamed(spec); }

std::optional<ThreeSymmetricSpace> resolve_space(const std::string& spec, double tol) {
  if (auto s = scaled(spec, "s3s3")) return s3s3_space(*s, tol);
  if (auto s = scaled(spec, "cp3")) return cp3_space(*s, tol);
  if (starts_with(spec, "lie:")) {
    LieAlgebraInput in = lie_algebra_from_json(read_json_file(spec.substr(4)));
    return decompose(in.algebra, in.s_star, in.b_m, 1.0, tol);
  }
  return std::nullopt;
}

}  // namespace nkv
