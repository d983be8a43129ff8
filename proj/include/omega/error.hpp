#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace omega {

/// Malformed textual input (expression, N-spec, hyperreal or field literal).
class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset)
    {
    }

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation outside the domain of a subexpression (log of a nonpositive, 1/0, ...).
class DomainError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// The function is not smooth at the requested point (breakpoint, abs at zero, cusp of x^(1/2)).
class NotSmoothError : public DomainError
{
public:
    using DomainError::DomainError;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Romberg integration did not meet its tolerance.
class QuadratureError : public std::runtime_error
{
public:
    QuadratureError(const std::string& what, double last_estimate, double spread)
        : std::runtime_error(what), last_estimate_(last_estimate), spread_(spread)
    {
    }

    double last_estimate() const noexcept { return last_estimate_; }
    double spread() const noexcept { return spread_; }

private:
    double last_estimate_;
    double spread_;
};

} // namespace omega
