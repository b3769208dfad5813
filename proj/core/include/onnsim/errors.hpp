#pragma once

#include <stdexcept>
#include <string>

namespace onnsim {

// Base class for every error raised by the library. Subclasses mirror the
// failure categories callers need to distinguish (the CLI maps them onto
// exit codes).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Matrix/vector dimensions disagree.
class ShapeError : public Error {
public:
    using Error::Error;
};

// A drive voltage pushed the follower laser out of injection lock.
class UnlockedError : public Error {
public:
    using Error::Error;
};

// Waveform length is not a whole number of symbol slots.
class LengthError : public Error {
public:
    using Error::Error;
};

// Malformed file content (bad magic, truncated payload, bad header).
class FormatError : public Error {
public:
    using Error::Error;
};

// Two inputs that must agree (e.g. image and label counts) do not.
class MismatchError : public Error {
public:
    using Error::Error;
};

// Operation called with an object in the wrong state.
class StateError : public Error {
public:
    using Error::Error;
};

// A file or directory that must exist is missing or unreadable.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace onnsim
