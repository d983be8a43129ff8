#include "omega/scalar.hpp"

#include "omega/error.hpp"

#include <charconv>
#include <cmath>

namespace omega {

Scalar Scalar::from_double(double d)
{
    if (!std::isfinite(d))
        throw DomainError("non-finite floating value");
    Scalar s;
    s.value_ = d;
    return s;
}

double Scalar::to_double() const
{
    if (is_exact())
        return rational().get_d();
    return std::get<double>(value_);
}

int Scalar::sign() const
{
    if (is_exact())
        return sgn(rational());
    double d = std::get<double>(value_);
    return (d > 0) - (d < 0);
}

bool Scalar::is_integer() const
{
    if (is_exact())
        return rational().get_den() == 1;
    double d = std::get<double>(value_);
    return std::floor(d) == d;
}

std::string Scalar::to_string() const
{
    if (is_exact())
        return rational().get_str();
    return format_double(std::get<double>(value_));
}

Scalar Scalar::operator-() const
{
    if (is_exact())
        return Scalar(Rational(-rational()));
    return from_double(-std::get<double>(value_));
}

Scalar operator+(const Scalar& x, const Scalar& y)
{
    if (x.is_exact() && y.is_exact())
        return Scalar(Rational(x.rational() + y.rational()));
    return Scalar::from_double(x.to_double() + y.to_double());
}

Scalar operator-(const Scalar& x, const Scalar& y)
{
    if (x.is_exact() && y.is_exact())
        return Scalar(Rational(x.rational() - y.rational()));
    return Scalar::from_double(x.to_double() - y.to_double());
}

Scalar operator*(const Scalar& x, const Scalar& y)
{
    if (x.is_exact() && y.is_exact())
        return Scalar(Rational(x.rational() * y.rational()));
    return Scalar::from_double(x.to_double() * y.to_double());
}

Scalar operator/(const Scalar& x, const Scalar& y)
{
    if (y.is_zero())
        throw DomainError("division by zero");
    if (x.is_exact() && y.is_exact())
        return Scalar(Rational(x.rational() / y.rational()));
    return Scalar::from_double(x.to_double() / y.to_double());
}

bool operator==(const Scalar& x, const Scalar& y)
{
    if (x.is_exact() && y.is_exact())
        return x.rational() == y.rational();
    return x.to_double() == y.to_double();
}

bool operator<(const Scalar& x, const Scalar& y)
{
    if (x.is_exact() && y.is_exact())
        return x.rational() < y.rational();
    return x.to_double() < y.to_double();
}

Scalar abs(const Scalar& x)
{
    return x.sign() < 0 ? -x : x;
}

Scalar pow(const Scalar& x, long n)
{
    if (n < 0)
        return Scalar(1) / pow(x, -n);
    if (x.is_exact()) {
        Rational r;
        mpz_pow_ui(r.get_num_mpz_t(), x.rational().get_num_mpz_t(), static_cast<unsigned long>(n));
        mpz_pow_ui(r.get_den_mpz_t(), x.rational().get_den_mpz_t(), static_cast<unsigned long>(n));
        return Scalar(r);
    }
    return Scalar::from_double(std::pow(x.to_double(), static_cast<double>(n)));
}

bool near(const Scalar& x, const Scalar& y, double tol)
{
    if (x.is_exact() && y.is_exact() && tol == 0)
        return x == y;
    return std::abs(x.to_double() - y.to_double()) <= tol;
}

std::string format_double(double d)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, res.ptr);
}

Rational parse_rational(const std::string& text)
{
    Rational q;
    if (q.set_str(text, 10) != 0)
        throw ParseError("invalid rational '" + text + "'", 0);
    if (q.get_den() == 0)
        throw ParseError("zero denominator in '" + text + "'", 0);
    q.canonicalize();
    return q;
}

} // namespace omega
