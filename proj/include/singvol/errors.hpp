#pragma once

#include <stdexcept>
#include <string>

namespace singvol {

/// Malformed input: bad JSON shape, wrong lengths, non-primitive rays.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a mathematical precondition
/// (vector outside the cone, graph not negative definite, ideal not m-primary).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request outside the supported dimension range.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace singvol
