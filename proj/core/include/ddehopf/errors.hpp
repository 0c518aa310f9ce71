#pragma once

#include <stdexcept>

namespace ddehopf {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- usage / precondition failures -----------------------------------------

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class InvalidStep : public Error {
public:
    using Error::Error;
};

// tau is not an integer multiple of dt.
class NonCommensurateDelay : public Error {
public:
    using Error::Error;
};

class MissingParameter : public Error {
public:
    using Error::Error;
};

class UnknownVariant : public Error {
public:
    using Error::Error;
};

class DegenerateGain : public Error {
public:
    using Error::Error;
};

class ResolutionTooCoarse : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class WindowTooShort : public Error {
public:
    using Error::Error;
};

// --- solver failures --------------------------------------------------------

class NoConvergence : public Error {
public:
    using Error::Error;
};

// Root-finding target outside the attainable range of the map.
class Unreachable : public Error {
public:
    using Error::Error;
};

class NoOnsetInRange : public Error {
public:
    using Error::Error;
};

// --- runtime failures ---------------------------------------------------------

// |u| exceeded the overflow guard during integration.
class Diverged : public Error {
public:
    using Error::Error;
};

}  // namespace ddehopf
