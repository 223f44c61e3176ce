#pragma once

#include <stdexcept>
#include <string>

namespace rateopt {

/// The weighted closed form lands outside the nonnegative SNR orthant.
class WeightTooSkewed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No power allocation reaches the requested SNR pair.
class Unachievable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario parsing or validation failure; message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rateopt
