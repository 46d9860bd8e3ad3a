#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qwl {

enum class ErrorKind {
  TooSmall,
  DimMismatch,
  NonHermitian,
  NotSkewHermitian,
  NonNormalInput,
  NotUnitary,
  NotRegular,
  NotBijective,
  NotAnEdge,
  EdgeCollision,
  InvalidGraph,
  NotLaplacian,
  Unstable,
  DomainExceeded,
  NotScalarAtZero,
  NotACycle,
  BadSpec,
  InvalidArgument,
  IterationCapExceeded,
  ToleranceViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for failures of a numerical procedure rather than bad input.
constexpr bool is_numerical_failure(ErrorKind kind) noexcept {
  return kind == ErrorKind::IterationCapExceeded || kind == ErrorKind::ToleranceViolation;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qwl
