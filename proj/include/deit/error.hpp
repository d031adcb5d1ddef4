#pragma once

#include <stdexcept>
#include <string>

namespace deit {

/// Raised when a physical input is outside its domain (negative radius, alpha > 1, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the steady-state solvers when the assembled system has no unique solution.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration document errors. `line` is 1-based; 0 means "whole document".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string key, const std::string& message)
      : std::runtime_error(format(line, key, message)), line_(line), key_(std::move(key)) {}

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  static std::string format(int line, const std::string& key, const std::string& message) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += "'" + key + "': ";
    return out + message;
  }

  int line_;
  std::string key_;
};

}  // namespace deit
