#pragma once

#include <stdexcept>
#include <string>

namespace h3wave {

// Raised when a run configuration (file, CLI flag, or programmatic
// RunConfig) violates a precondition. Carries the offending field name.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an evolution produces non-finite samples or a numerical
// guard trips mid-run.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace h3wave
