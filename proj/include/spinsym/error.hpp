#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinsym {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Operands with different base points or orders, or not enough jet order
/// left for a requested derivative.
class JetMismatch : public Error
{
public:
    using Error::Error;
};

/// Evaluation at a point where a function is singular or undefined
/// (1/0, ln of a nonpositive real, degenerate metric, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

class ParseError : public Error
{
public:
    ParseError(std::string const& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position))
        , position_(position)
    {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Input that violates a hypothesis of the symmetry-operator theorems
/// (non-closed integrability form, trivial Killing tensor, non-Killing field).
class Rejection : public Error
{
public:
    Rejection(std::string const& reason, double measure)
        : Error(reason + " (max " + std::to_string(measure) + ")")
        , reason_(reason)
        , measure_(measure)
    {}

    std::string const& reason() const noexcept { return reason_; }
    double measure() const noexcept { return measure_; }

private:
    std::string reason_;
    double measure_;
};

} // namespace spinsym
