#pragma once

#include <string>
#include <vector>

namespace nkv {

enum class Status { Pass, Fail, Skipped };

const char* to_string(Status s);

struct CheckReport {
  std::string name;
  std::string anchor;  // the identity or statement this check certifies
  Status status = Status::Skipped;
  double residual = 0.0;
  double tolerance = 0.0;
  double elapsed_ms = 0.0;
  std::string detail;

  bool passed() const { return status == Status::Pass; }
};

// pass iff residual <= tol
CheckReport make_check(std::string name, std::string anchor, double residual, double tol,
                       std::string detail = {});
CheckReport make_skipped(std::string name, std::string anchor, std::string reason);
// boolean facts: residual 0 on success, 1 on failure
CheckReport make_flag(std::string name, std::string anchor, bool ok, std::string detail = {});

struct CheckSuite {
  std::string name;
  std::vector<CheckReport> checks;

  void add(CheckReport c) { checks.push_back(std::move(c)); }
  void append(const CheckSuite& other);
  bool all_passed() const;  // skipped checks do not fail a suite
  const CheckReport* find(const std::string& check_name) const;
  double max_residual() const;
};

}  // namespace nkv
