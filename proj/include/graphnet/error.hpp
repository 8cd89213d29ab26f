#pragma once

#include <stdexcept>
#include <string>

namespace graphnet {

/// Malformed graph file or netlist text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on an input outside its domain, e.g. the direct
/// encoder on a graph with two inputs.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace graphnet
