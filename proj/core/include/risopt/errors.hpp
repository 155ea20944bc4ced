#pragma once

#include <stdexcept>
#include <string>

namespace risopt {

/// Bad or inconsistent configuration / dimensions.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A solver precondition failed or a construction could not be completed.
/// The `code` is a stable machine-readable tag recorded by the harness.
class SolverError : public std::runtime_error {
 public:
  SolverError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace risopt
