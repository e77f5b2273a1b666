#pragma once

#include <stdexcept>
#include <string>

namespace sbm {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

// A point or measure lies outside the spatial domain of the model.
class DomainError : public Error {
public:
    using Error::Error;
};

// The requested operation is not defined for this test-function kind.
class CatalogError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    NumericError(const std::string& what, double achieved_tolerance)
        : Error(what + " (achieved tolerance " + std::to_string(achieved_tolerance) + ")"),
          achieved_(achieved_tolerance) {}

    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

class ResourceError : public Error {
public:
    ResourceError(const std::string& what, std::size_t cap) : Error(what), cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

}  // namespace sbm
