#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rowsim {

// Raised for invalid parameters. Carries every violation found, one per entry,
// each prefixed with the offending key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues);
    explicit ConfigError(std::string issue) : ConfigError(std::vector<std::string>{std::move(issue)}) {}

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    std::vector<std::string> issues_;
};

// File-system failures (unreadable config, unwritable output directory).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The calibration probes could not separate the learning regimes.
class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rowsim
