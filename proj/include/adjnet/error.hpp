#pragma once

#include <stdexcept>
#include <string>

namespace adjnet {

// Parameter or argument outside its documented domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input too small or degenerate for the requested statistic.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Event stream references nodes or edges that do not exist.
class CorruptStream : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a sampling precondition (e.g. preferential draw on an edgeless graph).
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace adjnet
