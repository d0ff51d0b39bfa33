#pragma once

#include <stdexcept>

namespace netgain {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Incompatible matrix or vector shapes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration or input data: malformed traces, out-of-range
/// indices, bad grids, unparseable files.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// NaN or Inf surfaced inside a numerical routine. Deliberately distinct
/// from an Infeasible or Unknown verdict.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A scan certified no stable grid point, so there is nothing to fit.
class NoStableRegionError : public Error {
public:
    using Error::Error;
};

}  // namespace netgain
