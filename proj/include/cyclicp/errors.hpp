// Exception types shared by every module.
#pragma once

#include <stdexcept>
#include <string>

namespace cyclicp {

/// A parameter vector or raw presentation that does not define a group in
/// the family.
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A brute-force computation would exceed its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Elements or subgroups that do not belong to the context they are used with.
class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed form disagreed with brute force; always a bug somewhere.
class VerificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cyclicp
