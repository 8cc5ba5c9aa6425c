#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace digraphon {

enum class ErrorKind {
  kInvalidArgument,
  kSchema,
  kType,       // e.g. a bidirected digraph where a plain digraphon is required
  kStructure,  // block structures that do not line up
  kIsolation,  // multiplicity window overlaps another limit point
  kBudget,     // exhaustive enumeration would exceed its step budget
  kOverflow,
  kNumerical,
  kGeneration,
};

const char* to_string(ErrorKind kind) noexcept;

/// Library-wide exception. Every failure the library reports carries a kind
/// so callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<double> residual = std::nullopt)
      : std::runtime_error(message), kind_(kind), residual_(residual) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Set for numerical failures: the residual at the point of giving up.
  std::optional<double> residual() const noexcept { return residual_; }

 private:
  ErrorKind kind_;
  std::optional<double> residual_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::kInvalidArgument, message);
}

}  // namespace digraphon
