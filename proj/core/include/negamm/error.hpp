#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace negamm {

enum class ErrorKind {
  Parameter,        // curve or request parameter outside its admissible set
  Domain,           // argument outside an operation's domain
  DomainExceeded,   // swap would leave the trading branch
  InvalidFee,
  Singularity,      // density or price diverges at the requested point
  Convergence,
  InsufficientData,
  Degenerate,
  Parse,
  Monotonicity,
  EmptyFile,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library surfaces as this exception. `module()` names
/// the component that raised it so the CLI can report the origin.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message),
        kind_(kind),
        module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

}  // namespace negamm
