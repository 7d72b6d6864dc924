#pragma once

#include <stdexcept>
#include <string>

namespace ptv {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Missing, unreadable, or unwritable file.
class IoError : public Error {
public:
    using Error::Error;
};

/// File exists but its contents are not a supported image.
class FormatError : public Error {
public:
    using Error::Error;
};

/// An input lies outside the domain an operation is defined on.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two images that must share dimensions do not.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Non-finite input or output in a numerical kernel.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace ptv
