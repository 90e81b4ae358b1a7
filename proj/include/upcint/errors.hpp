#pragma once

#include <stdexcept>
#include <string>

namespace upcint {

/// Invalid or inconsistent configuration (catalog, run file, CLI flags).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
  ConfigError(const std::string& source, int line, const std::string& key,
              const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": key '" + key +
                           "': " + what),
        line_(line),
        key_(key) {}

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_ = 0;
  std::string key_;
};

/// Quadrature whose estimated relative error exceeds the requested bound.
class NonConvergence : public std::runtime_error {
 public:
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// Rejection sampler whose acceptance collapsed below the usable floor.
class SamplingFailure : public std::runtime_error {
 public:
  explicit SamplingFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace upcint
