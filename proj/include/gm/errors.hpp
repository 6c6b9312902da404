#pragma once

#include <stdexcept>
#include <string>

namespace gm {

/// Input is outside the domain of an operation, e.g. a translation length
/// asked of a parabolic element. Callers are expected to branch on class.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The two generators share a fixed point.
class ElementaryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix failed the determinant-one check.
class DeterminantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The main loop hit its configured step cap without a verdict.
class MaxStepsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gm
