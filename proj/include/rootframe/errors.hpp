#pragma once

#include <stdexcept>
#include <string>

namespace rootframe {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class InvalidWeight : public Error {
public:
    using Error::Error;
};

/// A separating functional is orthogonal (within tolerance) to some root.
class DegenerateFunctional : public Error {
public:
    using Error::Error;
};

class NotAFrame : public Error {
public:
    using Error::Error;
};

class NotAnEigenframe : public Error {
public:
    NotAnEigenframe(const std::string& what, double worst_residual)
        : Error(what), worst_residual_(worst_residual) {}

    double worst_residual() const noexcept { return worst_residual_; }

private:
    double worst_residual_;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// Malformed document text.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed document with semantically invalid content.
class ValidationError : public Error {
public:
    using Error::Error;
};

class VersionError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace rootframe
