#ifndef TWOPOINT_ERRORS_HPP
#define TWOPOINT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twopoint {

/// Failure classes, mapped to process exit codes by the CLI:
/// config/domain/hypothesis/io -> 2, divergence -> 3.
enum class ErrorKind {
  config,      // invalid configuration or parameters
  domain,      // evaluation outside a valid domain (horizon, barrier range, ...)
  hypothesis,  // a theorem hypothesis is violated, check refused
  divergence,  // numerical blow-up (NaN/Inf) during time stepping
  io,          // file read/write failure
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  static Error config(const std::string& msg) { return Error(ErrorKind::config, msg); }
  static Error domain(const std::string& msg) { return Error(ErrorKind::domain, msg); }
  static Error hypothesis(const std::string& msg) { return Error(ErrorKind::hypothesis, msg); }
  static Error divergence(const std::string& msg) { return Error(ErrorKind::divergence, msg); }
  static Error io(const std::string& msg) { return Error(ErrorKind::io, msg); }

 private:
  ErrorKind kind_;
};

}  // namespace twopoint

#endif  // TWOPOINT_ERRORS_HPP
