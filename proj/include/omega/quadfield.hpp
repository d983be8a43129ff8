#pragma once

#include "omega/scalar.hpp"

#include <string>
#include <string_view>

namespace omega {

/// Element p + q*sqrt(d) of Q(sqrt d); d is squarefree >= 2, or 0 when q = 0.
class QuadField
{
public:
    QuadField() = default;
    QuadField(Rational p) : p_(std::move(p)) {}
    /// Extracts square factors from `radicand`, so (0, 1, 8) becomes 2*sqrt2.
    QuadField(Rational p, Rational q, const Integer& radicand);

    const Rational& rational_part() const noexcept { return p_; }
    const Rational& radical_part() const noexcept { return q_; }
    const Integer& radicand() const noexcept { return d_; }
    bool is_rational() const { return sgn(q_) == 0; }

    int sign() const;
    double to_double() const;
    /// `1 + 2*sqrt2`, `-sqrt3`, `3/2`.
    std::string to_text() const;

    friend QuadField operator+(const QuadField& x, const QuadField& y);
    friend QuadField operator-(const QuadField& x, const QuadField& y);
    /// Throws PreconditionError for elements of different fields.
    friend QuadField operator*(const QuadField& x, const QuadField& y);
    QuadField operator-() const;

    friend bool operator==(const QuadField& x, const QuadField& y)
    {
        return x.p_ == y.p_ && x.q_ == y.q_ && (x.is_rational() || x.d_ == y.d_);
    }
    friend bool operator<(const QuadField& x, const QuadField& y) { return (x - y).sign() < 0; }

private:
    Rational p_{0};
    Rational q_{0};
    Integer d_{0};
};

/// Accepts `p`, `p/q`, `sqrtD`, `sqrt(D)`, `c*sqrtD` and sums of those.
QuadField parse_quadfield(std::string_view text);

} // namespace omega
