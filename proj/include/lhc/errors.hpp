#pragma once

#include <stdexcept>
#include <string>

namespace lhc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different algebras/groups (or extensions with different parameters).
class TagMismatch : public Error {
 public:
  using Error::Error;
};

/// A value violates a precondition of the operation (wrong domain, bad shape, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Step-size control of an ODE integrator gave up.
class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach its tolerance.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// The boundary lift lands too close to the branch cut to decide the winding.
/// Perturb the input slightly and retry.
class BranchAmbiguity : public Error {
 public:
  using Error::Error;
};

/// An extension element whose base does not fix i was passed to chi_a.
class NotInStabilizer : public Error {
 public:
  using Error::Error;
};

/// A point passed to a leaf computation does not lie on that leaf.
class LeafMembership : public Error {
 public:
  using Error::Error;
};

/// Sampled values of a quantity that must be locally constant disagree.
class NonConstancy : public Error {
 public:
  using Error::Error;
};

/// A built-in construction failed its own consistency check. This is a bug.
class ConstructionFailure : public Error {
 public:
  using Error::Error;
};

/// Writing a report to disk failed.
class ReportWriteError : public Error {
 public:
  using Error::Error;
};

}  // namespace lhc
