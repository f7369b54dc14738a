#pragma once

#include <stdexcept>
#include <string>

namespace delpezzo {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

class InvalidPointError : public Error {
public:
    using Error::Error;
};

// Input exceeds the documented cap of an operation.
class SizeError : public Error {
public:
    using Error::Error;
};

class NotInDomainError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ToleranceError : public Error {
public:
    ToleranceError(const std::string& what, double achieved)
        : Error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

class DataIntegrityError : public Error {
public:
    using Error::Error;
};

// Raised when an internal invariant is broken (a bug, not bad input).
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace delpezzo
