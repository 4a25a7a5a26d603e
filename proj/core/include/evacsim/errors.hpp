#pragma once

#include <stdexcept>
#include <string>

namespace evacsim {

/// Base class for everything the simulator can report.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Scenario / experiment config problems (unknown key, bad value, violated
/// invariant).  CLI maps these to exit code 1.
struct ConfigError : Error {
    using Error::Error;
};

/// Map text or grid construction problems (illegal character, no gates, ...).
/// CLI maps these to exit code 1.
struct MapError : Error {
    using Error::Error;
};

/// Runtime simulation contract violations (overcrowded spawn, double alarm).
struct SimError : Error {
    using Error::Error;
};

/// Filesystem failures.  CLI maps these to exit code 2.
struct IoError : Error {
    using Error::Error;
};

} // namespace evacsim
