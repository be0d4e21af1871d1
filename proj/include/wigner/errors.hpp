#pragma once

#include <stdexcept>
#include <string>

namespace wigner {

/// Base class for runtime failures raised by the simulator.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inverse transform left an imaginary residue above tolerance.
class NonRealField : public Error {
public:
    using Error::Error;
};

/// Initial packet does not fit inside the phase-space domain.
class GridClipsPacket : public Error {
public:
    using Error::Error;
};

class NonDifferentiableKernel : public Error {
public:
    using Error::Error;
};

/// Field developed NaN/Inf values; carries the step at which it was detected.
class NonFiniteField : public Error {
public:
    NonFiniteField(long step, const std::string& what)
        : Error(what), step_(step) {}
    long step() const noexcept { return step_; }

private:
    long step_;
};

/// Invalid configuration value; `key()` names the offending setting.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// File could not be read or written; the message names the path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace wigner
