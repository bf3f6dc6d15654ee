#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvavol {

enum class ErrorCode {
  DomainError,
  NonConvergence,
  NoSignChange,
  InvalidAngle,
  NotRealizable,
  DegenerateIdeal,
  NotCompactHyperbolic,
  NotSpherical,
  IntegrandSignError,
  NoDegenerationRoot,
  DegenerateFace,
  NoSolution,
  NotATriangle,
  NotAQuadrilateral,
  NotBicentric,
  ParallelSides,
  InvalidInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// batch front end can report it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace curvavol
