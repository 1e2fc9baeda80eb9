#pragma once

#include <stdexcept>
#include <string>

namespace dagcover {

enum class ErrorKind {
  invalid_input,
  size_limit,
  undefined_parameter,
  infeasible_size,
};

/// Domain error raised by every library entry point. The CLI maps `kind`
/// onto its exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace dagcover
