#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>

namespace omega {

using Rational = mpq_class;
using Integer = mpz_class;

/// A real number that is either an exact rational or a double.
///
/// Arithmetic between two exact values stays exact; any double operand
/// turns the result into a double.
class Scalar
{
public:
    Scalar() : value_(Rational(0)) {}
    Scalar(Rational q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }
    Scalar(int v) : value_(Rational(v)) {}
    Scalar(long v) : value_(Rational(v)) {}

    /// Throws DomainError for NaN or infinity.
    static Scalar from_double(double d);

    bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
    /// Precondition: is_exact().
    const Rational& rational() const { return std::get<Rational>(value_); }
    double to_double() const;

    int sign() const;
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const;

    /// Exact values print as `p` or `p/q`; doubles use the shortest round-trip form.
    std::string to_string() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    /// Throws DomainError on division by zero.
    friend Scalar operator/(const Scalar& x, const Scalar& y);

    /// Exact comparison when both are exact, double comparison otherwise.
    friend bool operator==(const Scalar& x, const Scalar& y);
    friend bool operator<(const Scalar& x, const Scalar& y);
    friend bool operator>(const Scalar& x, const Scalar& y) { return y < x; }
    friend bool operator<=(const Scalar& x, const Scalar& y) { return !(y < x); }
    friend bool operator>=(const Scalar& x, const Scalar& y) { return !(x < y); }

private:
    std::variant<Rational, double> value_;
};

Scalar abs(const Scalar& x);
Scalar pow(const Scalar& x, long n);

/// |x - y| <= tol, or exact equality when both are exact and tol == 0.
bool near(const Scalar& x, const Scalar& y, double tol);

std::string format_double(double d);
Rational parse_rational(const std::string& text);

} // namespace omega
