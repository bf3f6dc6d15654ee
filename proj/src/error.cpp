#include "curvavol/error.hpp"

namespace curvavol {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::InvalidAngle: return "InvalidAngle";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::DegenerateIdeal: return "DegenerateIdeal";
    case ErrorCode::NotCompactHyperbolic: return "NotCompactHyperbolic";
    case ErrorCode::NotSpherical: return "NotSpherical";
    case ErrorCode::IntegrandSignError: return "IntegrandSignError";
    case ErrorCode::NoDegenerationRoot: return "NoDegenerationRoot";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NotATriangle: return "NotATriangle";
    case ErrorCode::NotAQuadrilateral: return "NotAQuadrilateral";
    case ErrorCode::NotBicentric: return "NotBicentric";
    case ErrorCode::ParallelSides: return "ParallelSides";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "UnknownError";
}

}  // namespace curvavol
