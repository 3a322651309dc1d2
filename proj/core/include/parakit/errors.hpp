#pragma once

#include <stdexcept>
#include <string>

namespace parakit {

// Malformed or ill-typed input: index out of range, set mismatch, violated
// declared invariant. Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed the configured word budget. Exit code 3.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A law that must hold by construction was observed to fail.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace parakit
