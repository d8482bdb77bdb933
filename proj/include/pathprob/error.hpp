#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pathprob {

enum class ErrorKind {
  SuperluminalSegment,
  DegenerateGrid,
  BadInterval,
  EmptyVector,
  TooFewPaths,
  KappaMismatch,
  SizeMismatch,
  InsufficientSamples,
  AmbiguousData,
  ZeroEpsilon,
  DimensionMismatch,
  HyperplaneViolation,
  TooLarge,
  BudgetExceeded,
  NoFringes,
  PoorFit,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

// Every library failure carries a kind so callers (tests, the CLI exit-code
// mapping) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pathprob
