#pragma once

#include <stdexcept>
#include <string>

namespace acshock {

/// State outside the admissible region of its system.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Near-degenerate eigenstructure (extremal eigenvalue gap below threshold,
/// or a vanishing gradient where a direction is required).
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A bracketing / projection target does not exist on the searched range.
struct NotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shock-curve continuation could not advance (partial curve retained by caller).
struct ContinuationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A (u-, u+, sigma) triple violates Rankine-Hugoniot beyond tolerance.
struct InconsistentShockError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested parameter outside a curve/grid range.
struct RangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite-volume state left the admissible region.
struct BlowUpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Configuration rejected (unknown key, bad value, inconsistent weights).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace acshock
