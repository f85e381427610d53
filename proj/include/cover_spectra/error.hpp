#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cover_spectra {

enum class ErrorKind {
  kParse,         // malformed graph file
  kPrecondition,  // input violates an operation's precondition
  kCapExceeded,   // a size cap (tree ball, canonical form) would be exceeded
  kNumerical,     // a numerical contract could not be met
  kUsage,         // bad command line
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. The kind is stable and machine readable; the
/// message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::kPrecondition, message);
}

}  // namespace cover_spectra
