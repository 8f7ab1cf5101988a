// errors.hpp: Exception hierarchy for dickesim.

#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid or inconsistent configuration (bad kind, missing block, list length mismatch).
class ConfigError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// Adaptive integration could not continue; carries the last accepted scaled time.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double last_tau)
        : Error(what), last_tau_(last_tau) {}
    double last_tau() const noexcept { return last_tau_; }

private:
    double last_tau_;
};

class SpectralError : public Error {
public:
    using Error::Error;
};

class TrackingError : public Error {
public:
    using Error::Error;
};

class BlockDegeneracyError : public Error {
public:
    using Error::Error;
};

class InconsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace dicke
