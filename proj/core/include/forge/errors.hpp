#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature produced NaN/Inf or failed a sanity check.
struct NumericalError : Error { using Error::Error; };
// A tracked function vanished on or near the integration contour.
struct BranchCutOnContour : Error { using Error::Error; };
// Adaptive refinement hit its cap without converging.
struct ResolutionError : Error { using Error::Error; };
// Generic no-convergence (Newton, fits, iterative solvers).
struct NoConvergence : Error { using Error::Error; };

// Expression-language errors. `offset` is a byte offset into the source.
struct SyntaxError : Error {
  std::size_t offset;
  SyntaxError(const std::string& msg, std::size_t off)
      : Error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};
struct UnknownIdentifier : SyntaxError { using SyntaxError::SyntaxError; };
// Evaluation outside a function's domain (division by zero, log 0, ...).
struct DomainError : Error { using Error::Error; };

// Seed data / geometric validation failures.
struct GeometryError : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct OnCutError : Error { using Error::Error; };
struct BranchError : Error { using Error::Error; };
struct DegeneratePoles : Error { using Error::Error; };
struct DegenerateExample : Error { using Error::Error; };

// Metric assembly failures.
struct DegenerateFrame : Error { using Error::Error; };
struct NotReal : Error { using Error::Error; };
struct NearSingularMetric : Error { using Error::Error; };
struct AxisError : Error { using Error::Error; };

// Kahler analysis.
struct NotKahler : Error { using Error::Error; };
struct NoFit : Error { using Error::Error; };

// Configuration / CLI contract.
struct ConfigError : Error { using Error::Error; };

}  // namespace forge
