#pragma once

#include <stdexcept>
#include <string>

namespace seqbell {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// matlin
struct DimensionMismatch : Error {
  using Error::Error;
};
struct NotHermitian : Error {
  using Error::Error;
};
struct NotPsd : Error {
  using Error::Error;
};

// parameter and lookup failures
struct InvalidParam : Error {
  using Error::Error;
};
struct PositionOutOfRange : Error {
  using Error::Error;
};
struct NotFound : Error {
  using Error::Error;
};

// witness / simulator / optimizer
struct InvalidDistribution : Error {
  using Error::Error;
};
struct NoViolation : Error {
  using Error::Error;
};
struct NoFeasiblePoint : Error {
  using Error::Error;
};

}  // namespace seqbell
