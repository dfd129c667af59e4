#pragma once

#include <stdexcept>
#include <string>

namespace lt {

// Error taxonomy shared by all modules. Each maps to one failure class the
// verification harness can report on.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ValuationError : Error {
  using Error::Error;
};
struct ConvergenceError : Error {
  using Error::Error;
};
struct HypothesisError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct SingularError : Error {
  using Error::Error;
};
struct IdentityError : Error {
  using Error::Error;
};
struct RankError : Error {
  using Error::Error;
};
struct DegenerateError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct PrecisionError : Error {
  using Error::Error;
};

}  // namespace lt
