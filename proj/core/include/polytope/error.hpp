#pragma once

#include <stdexcept>
#include <string>

namespace polytope {

/// Invalid parameters or shapes handed to a library entry point.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value does not fit the fixed-width packet layout.
class SerializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Observed data is only explainable if more than T packets were altered
/// (e.g. no strict majority on a Gram entry).
class BudgetViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A storage-protocol assumption failed at run time: too few trusted helpers,
/// or a coefficient draw that left the honest rows rank-deficient.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The data collector could not pin down a unique file.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polytope
