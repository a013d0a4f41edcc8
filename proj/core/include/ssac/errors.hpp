#pragma once

#include <stdexcept>
#include <string>

namespace ssac {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two scene nodes occupy the same position, so no link geometry exists.
struct CoincidentNodes : Error {
  using Error::Error;
};

/// Elevation angle too close to 90 degrees for range recovery.
struct DegenerateElevation : Error {
  using Error::Error;
};

/// The angle pair is inconsistent with the known height difference.
struct NegativeRadicand : Error {
  using Error::Error;
};

/// A user channel is numerically zero; beam direction undefined.
struct ZeroChannel : Error {
  using Error::Error;
};

/// Transmit covariance is not Hermitian within tolerance.
struct NonHermitianCovariance : Error {
  using Error::Error;
};

/// Fisher information is too ill-conditioned to invert; the target is
/// effectively unilluminated.
struct SingularFim : Error {
  using Error::Error;
};

/// Steering vectors supplied to the null-space filter are numerically
/// dependent.
struct RankDeficiency : Error {
  using Error::Error;
};

/// Grid search found no usable objective mass to refine.
struct GridExhausted : Error {
  using Error::Error;
};

/// Matched-filter steering vector is numerically zero.
struct ZeroSteering : Error {
  using Error::Error;
};

/// Sample covariance has too few significant eigenvalues for the requested
/// source count.
struct CovarianceRankDeficient : Error {
  using Error::Error;
};

/// The accuracy threshold cannot be met even with all power on the target.
struct InfeasibleThreshold : Error {
  using Error::Error;
};

/// Scenario or experiment configuration is malformed.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace ssac
