#pragma once

#include <stdexcept>
#include <string>

namespace metaplectic {

// Base for all contract violations raised by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Block matrix fails the symplectic identities; carries the worst residual.
struct NotSymplectic : error {
  double residual;
  NotSymplectic(const std::string& msg, double r) : error(msg), residual(r) {}
};

struct InvalidArg : error {
  using error::error;
};

// A block restricted to a subspace is expected to be an isomorphism and is not.
struct IsomorphismFailure : error {
  using error::error;
};

struct DegenerateVolume : error {
  using error::error;
};

struct NonAxisAligned : error {
  using error::error;
};

struct ZeroSignal : error {
  using error::error;
};

struct ZeroWindow : error {
  using error::error;
};

struct InsufficientData : error {
  using error::error;
};

struct SpecMismatch : error {
  using error::error;
};

struct SingularMatrix : error {
  using error::error;
};

struct FactorizationFailure : error {
  using error::error;
};

// Requested oscillatory quadrature exceeds what the grid can resolve.
struct QuadratureOverflow : error {
  using error::error;
};

struct SingularBlockA : error {
  using error::error;
};

// dim R(A) = 0: the range-quadrature route does not apply.
struct RangeEmpty : error {
  using error::error;
};

// Chirp local frequency would alias on the sampling lattice.
struct ResolutionViolation : error {
  using error::error;
};

struct NonZeroA : error {
  using error::error;
};

struct SingularB : error {
  using error::error;
};

struct StepTooLarge : error {
  using error::error;
};

}  // namespace metaplectic
