#pragma once

#include <stdexcept>
#include <string>

namespace ednce {

// Malformed or inconsistent user input (datasets, grammars, CLI arguments).
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string &msg) : std::runtime_error(msg) {}
};

// A configured resource budget was exhausted (iteration caps, enumeration
// limits, solver size caps, sampling retries).
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string &msg) : std::runtime_error(msg) {}
};

// An internal invariant failed. Always a bug, never a data problem.
class InternalError : public std::runtime_error {
public:
  explicit InternalError(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace ednce
