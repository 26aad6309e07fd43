#pragma once

#include <stdexcept>
#include <string>

namespace sinrnc {

// Invalid user-supplied configuration (bad parameter, role mismatch, ...).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace sinrnc
