#pragma once

#include <stdexcept>
#include <string>

namespace ordtope {

// Every contract violation in the library throws ordtope::Error with a
// machine-checkable code. The CLI maps codes onto exit statuses.
enum class Errc {
  EmptyBasis,
  InvalidProgression,
  DomainError,            // log of a non-positive value
  PrecisionUndecidable,   // required_digits: enumeration over budget, no gap bound
  BasisTooSmall,
  NotInFactorialDomain,   // g-decode residual > 1
  ConstantsInfeasible,
  SpecError,              // malformed encoding spec / payload shape
  BudgetExceeded,
  CorruptOracle,
  ShapeError,             // dimension mismatch
  UndefinedRadius,        // characteristic radius of N < 2
  NoSolution,             // decision version of an empty solution set
  FormulationMismatch,    // sgn*-sum point location with m_i != n
  DilationInfeasible,
  DimensionError,         // odd sphere dimension
  WidthError,             // bead value exceeds matrix width
  SingularMatrix,         // RBF duplicate norms
  ParameterError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace ordtope
