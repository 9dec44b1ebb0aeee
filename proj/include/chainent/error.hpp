#pragma once

#include <stdexcept>
#include <string>

namespace chainent {

// Every library error derives from one of the two std bases so callers can
// catch broadly; the concrete type names the failed contract.

class InvalidConfig : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class LengthMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotPositiveDefinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalDegeneracy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SpectrumInGap : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SpectrumOutOfBand : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientSamples : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegenerateFit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class WindowTooEarly : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace chainent
