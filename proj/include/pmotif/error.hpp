#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmotif {

enum class ErrorKind {
  SingularBasis,
  Overflow,
  InvalidParams,
  AmbientMismatch,
  NotAdmissible,
  NoCommonQuotient,
  InvalidDiagram,
  InvalidMove,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` is stable and is what the
/// CLI maps onto exit codes; `what()` is a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pmotif
