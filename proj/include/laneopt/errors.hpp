#pragma once

#include <stdexcept>
#include <string>

namespace laneopt {

/// A model precondition was violated (empty population, L < 2, l_A out of range, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Malformed user input: config files, target files, flag values.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure while writing artifacts.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace laneopt
