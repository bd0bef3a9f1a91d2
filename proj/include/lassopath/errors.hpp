#pragma once

#include <stdexcept>
#include <string>

namespace lassopath {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// graph construction / validation
struct SelfLoop : Error { using Error::Error; };
struct DuplicateEdge : Error { using Error::Error; };
struct NonPositiveWeight : Error { using Error::Error; };
struct DisconnectedGraph : Error { using Error::Error; };
struct SameEndpoints : Error { using Error::Error; };
struct NotAPath : Error { using Error::Error; };
struct NotATree : Error { using Error::Error; };

// solver state
struct InconsistentTrees : Error { using Error::Error; };
struct EdgeNotActive : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct SimultaneousTieUnresolved : Error { using Error::Error; };
struct EndpointMismatch : Error { using Error::Error; };
struct PropertyViolation : Error { using Error::Error; };
struct InnerSolveNotConverged : Error { using Error::Error; };
struct MaxIterationsExceeded : Error { using Error::Error; };

// ingestion / generation
struct ParseError : Error { using Error::Error; };
struct DanglingEdge : Error { using Error::Error; };
struct ImageTooSmall : Error { using Error::Error; };
struct BadPixelFormat : Error { using Error::Error; };
struct TargetUnreachable : Error { using Error::Error; };

}  // namespace lassopath
