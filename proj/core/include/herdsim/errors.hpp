#pragma once

#include <stdexcept>
#include <string>

namespace herdsim {

/// Malformed or inconsistent run configuration (bad key, bad value, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Time step exceeds the stability limit permitted by the solver config.
class CflError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Density support came too close to the domain boundary mid-run.
class MarginError : public std::runtime_error {
 public:
  MarginError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Initial data does not fit inside the grid with the required margin.
class DomainTooSmallError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// NaN or infinity produced by a solver step.
class NonFiniteError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace herdsim
