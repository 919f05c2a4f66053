#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace darcy {

using Index = std::ptrdiff_t;
using Point = Eigen::Vector2d;
using Vector2 = Eigen::Vector2d;
using Tensor2 = Eigen::Matrix2d;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "error"; }
};

class InvalidArgument : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid_argument"; }
};

class GeometryError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "geometry"; }
};

/// File access failures; the message names the path.
class IoError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "io"; }
};

/// Raised when a linear solve breaks down or misses its residual target.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual)
        : Error(what + " (relative residual " + std::to_string(residual) + ")"), residual_(residual)
    {
    }
    const char* kind() const noexcept override { return "solver"; }
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

#define DARCY_REQUIRE(cond, ExceptionType, message) \
    do {                                             \
        if (!(cond)) throw ExceptionType(message);   \
    } while (false)

} // namespace darcy
