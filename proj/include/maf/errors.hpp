#pragma once

#include <stdexcept>
#include <string>

namespace maf {

// Malformed Newick text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a precondition (leaf-set mismatch, bad node
// id, split that would leave an empty part, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive routine was asked to run above its configured size cap.
class SizeGateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A proven invariant of the algorithm failed. Never expected in practice.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace maf
