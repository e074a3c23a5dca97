#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flowcouple {

enum class ErrorKind {
  InvalidInput,
  CyclicInput,
  NotAPartialOrder,
  Disconnected,
  VertexMismatch,
  NotAPath,
  UnrepresentableField,
  CyclicSupport,
  MissingPath,
  WeightMismatch,
  NegativeTarget,
  InsufficientMass,
  TooLarge,
  NotDominated,
  NotATree,
  NotASingleCycle,
  WrongShape,
  NotStrictlyPositive,
  NotALattice,
  Unreachable,
  Infeasible,
  NotMinimalForm,
  UnsummableBoundary,
  InconsistentInstance,
  Internal,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this type. `witness()` carries the
// vertices of a concrete counterexample when the operation has one (a violating
// pair, an offending edge, an up-set).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::size_t> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::vector<std::size_t>& witness() const noexcept {
    return witness_;
  }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> witness_;
};

}  // namespace flowcouple
