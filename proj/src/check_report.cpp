#include "nkv/check_report.hpp"

#include <algorithm>
#include <cmath>

#include "nkv/errors.hpp"

namespace nkv {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "unknown";
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadMetric: return "BadMetric";
    case ErrorKind::ModelInvalid: return "ModelInvalid";
    case ErrorKind::NotOrderThree: return "NotOrderThree";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotNaturallyReductive: return "NotNaturallyReductive";
    case ErrorKind::NotSubalgebra: return "NotSubalgebra";
    case ErrorKind::NotLagrangian: return "NotLagrangian";
    case ErrorKind::TorsionNotTangential: return "TorsionNotTangential";
    case ErrorKind::Cyc2Violated: return "Cyc2Violated";
    case ErrorKind::NotStrict: return "NotStrict";
    case ErrorKind::NotDimension6: return "NotDimension6";
    case ErrorKind::RNotReducing: return "RNotReducing";
    case ErrorKind::SpectraOverlap: return "SpectraOverlap";
    case ErrorKind::NotVertical: return "NotVertical";
    case ErrorKind::RequiresNGreaterOne: return "RequiresNGreaterOne";
    case ErrorKind::DegenerateTorsion: return "DegenerateTorsion";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Unknown";
}

CheckReport make_check(std::string name, std::string anchor, double residual, double tol,
                       std::string detail) {
  CheckReport c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.residual = residual;
  c.tolerance = tol;
  c.status = (std::isfinite(residual) && residual <= tol) ? Status::Pass : Status::Fail;
  c.detail = std::move(detail);
  return c;
}

CheckReport make_skipped(std::string name, std::string anchor, std::string reason) {
  CheckReport c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.status = Status::Skipped;
  c.detail = std::move(reason);
  return c;
}

CheckReport make_flag(std::string name, std::string anchor, bool ok, std::string detail) {
  return make_check(std::move(name), std::move(anchor), ok ? 0.0 : 1.0, 0.5, std::move(detail));
}

void CheckSuite::append(const CheckSuite& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool CheckSuite::all_passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckReport& c) { return c.status == Status::Fail; });
}

const CheckReport* CheckSuite::find(const std::string& check_name) const {
  for (const auto& c : checks)
    if (c.name == check_name) return &c;
  return nullptr;
}

double CheckSuite::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks)
    if (c.status != Status::Skipped) m = std::max(m, c.residual);
  return m;
}

}  // namespace nkv
