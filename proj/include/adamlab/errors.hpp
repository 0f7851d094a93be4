#pragma once

#include <stdexcept>
#include <string>

namespace adamlab {

/// Hyperparameters or inputs violate the scope of the requested check/bound.
class ScopeError : public std::domain_error {
 public:
  explicit ScopeError(const std::string& what) : std::domain_error(what) {}
};

/// The running sum s is undefined for this input (g_1 = 0).
class UndefinedSeriesError : public std::domain_error {
 public:
  explicit UndefinedSeriesError(const std::string& what)
      : std::domain_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adamlab
