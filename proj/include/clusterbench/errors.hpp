#pragma once

#include <stdexcept>
#include <string>

namespace clusterbench {

/// Root of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exactalg
struct VarSetError : Error { using Error::Error; };
struct NotDivisible : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct SubstitutionError : Error { using Error::Error; };
struct EvalDomainError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// quiver
struct TypeError : Error { using Error::Error; };
struct LevelError : Error { using Error::Error; };
struct MutationError : Error { using Error::Error; };
struct QuiverError : Error { using Error::Error; };

// seeds
struct LaurentViolation : Error { using Error::Error; };
struct IncompleteError : Error { using Error::Error; };

// clusterauto
struct ClosureBudgetError : Error { using Error::Error; };

// autpoly
struct TriangularityError : Error { using Error::Error; };
struct UnitError : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };

}  // namespace clusterbench
