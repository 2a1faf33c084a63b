#pragma once

#include <stdexcept>
#include <string>

namespace nfp {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of a model (zero distance, bad angle, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// Scenario file or parameter record is malformed or out of range.
class config_error : public error {
 public:
  using error::error;
};

/// The problem has no valid configuration: fleet cannot be sized, hubs cannot be placed,
/// a target layout cannot be found.
class infeasible_error : public error {
 public:
  using error::error;
};

class placement_error : public infeasible_error {
 public:
  using infeasible_error::infeasible_error;
};

/// An exhaustive method refused or aborted because of a size guard or node budget.
class guard_error : public error {
 public:
  using error::error;
};

}  // namespace nfp
