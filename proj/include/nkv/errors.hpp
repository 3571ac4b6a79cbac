#pragma once

#include <stdexcept>
#include <string>

namespace nkv {

enum class ErrorKind {
  NotSymmetric,
  DimensionMismatch,
  BadMetric,
  ModelInvalid,
  NotOrderThree,
  NotAutomorphism,
  Degenerate,
  NotNaturallyReductive,
  NotSubalgebra,
  NotLagrangian,
  TorsionNotTangential,
  Cyc2Violated,
  NotStrict,
  NotDimension6,
  RNotReducing,
  SpectraOverlap,
  NotVertical,
  RequiresNGreaterOne,
  DegenerateTorsion,
  BadInput,
};

const char* to_string(ErrorKind kind);

class NkError : public std::runtime_error {
 public:
  NkError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nkv
