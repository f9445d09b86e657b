#pragma once

#include <stdexcept>
#include <string>

namespace mrfgrid {

/// Invalid arguments or configuration supplied by the caller.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inputs that are individually valid but do not belong together
/// (grid built for another model, data of the wrong size, ...).
class MismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested computation cannot be carried out (state space too large
/// to enumerate, knot budget unreachable, degenerate estimates).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter point lies outside the parameter space.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace mrfgrid
