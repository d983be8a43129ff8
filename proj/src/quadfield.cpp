#include "omega/quadfield.hpp"

#include "omega/error.hpp"

#include <cctype>
#include <cmath>

namespace omega {

QuadField::QuadField(Rational p, Rational q, const Integer& radicand) : p_(std::move(p)), q_(std::move(q))
{
    if (sgn(radicand) < 0)
        throw PreconditionError("negative radicand");
    if (sgn(q_) == 0 || sgn(radicand) == 0) {
        q_ = 0;
        return;
    }
    Integer d = radicand;
    Integer outside(1);
    for (Integer f = 2; f * f <= d; ++f) {
        while (mpz_divisible_p(d.get_mpz_t(), Integer(f * f).get_mpz_t())) {
            d /= f * f;
            outside *= f;
        }
    }
    q_ *= Rational(outside);
    if (d == 1) {
        p_ += q_;
        q_ = 0;
        return;
    }
    d_ = d;
}

int QuadField::sign() const
{
    const int sp = sgn(p_);
    const int sq = sgn(q_);
    if (sq == 0)
        return sp;
    if (sp == 0 || sp == sq)
        return sq;
    // p and q*sqrt(d) have opposite signs and |p| != |q| sqrt(d) since sqrt(d) is irrational.
    Rational lhs = p_ * p_;
    Rational rhs = q_ * q_ * Rational(d_);
    return lhs > rhs ? sp : sq;
}

double QuadField::to_double() const
{
    return p_.get_d() + q_.get_d() * std::sqrt(d_.get_d());
}

std::string QuadField::to_text() const
{
    if (is_rational())
        return p_.get_str();
    Rational mag = abs(q_);
    std::string radical = (mag == 1 ? "" : mag.get_str() + "*") + "sqrt" + d_.get_str();
    if (sgn(p_) == 0)
        return sgn(q_) < 0 ? "-" + radical : radical;
    return p_.get_str() + (sgn(q_) < 0 ? " - " : " + ") + radical;
}

namespace {

Integer common_radicand(const QuadField& x, const QuadField& y)
{
    if (x.is_rational())
        return y.radicand();
    if (y.is_rational() || x.radicand() == y.radicand())
        return x.radicand();
    throw PreconditionError("unsupported field element: mixes sqrt" + x.radicand().get_str() + " and sqrt" +
                            y.radicand().get_str());
}

} // namespace

QuadField operator+(const QuadField& x, const QuadField& y)
{
    Integer d = common_radicand(x, y);
    return QuadField(x.p_ + y.p_, x.q_ + y.q_, d);
}

QuadField operator-(const QuadField& x, const QuadField& y)
{
    return x + (-y);
}

QuadField operator*(const QuadField& x, const QuadField& y)
{
    Integer d = common_radicand(x, y);
    return QuadField(x.p_ * y.p_ + x.q_ * y.q_ * Rational(d), x.p_ * y.q_ + x.q_ * y.p_, d);
}

QuadField QuadField::operator-() const
{
    QuadField out = *this;
    out.p_ = -p_;
    out.q_ = -q_;
    return out;
}

namespace {

class QuadParser
{
public:
    explicit QuadParser(std::string_view text) : text_(text) {}

    QuadField parse()
    {
        skip_ws();
        if (at_end())
            fail("empty field literal");
        QuadField total;
        bool first = true;
        while (true) {
            skip_ws();
            if (at_end())
                break;
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            QuadField term = parse_term();
            total = sign < 0 ? total - term : total + term;
            first = false;
        }
        return total;
    }

private:
    QuadField parse_term()
    {
        Rational coeff(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_rational_literal();
            have_coeff = true;
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
            } else {
                return QuadField(coeff);
            }
        }
        if (text_.substr(pos_, 4) != "sqrt")
            fail(have_coeff ? "expected 'sqrt' after '*'" : "expected a rational or sqrtD");
        pos_ += 4;
        bool paren = peek() == '(';
        if (paren)
            ++pos_;
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (start == pos_)
            fail("expected an integer radicand");
        Integer d(std::string(text_.substr(start, pos_ - start)));
        if (paren) {
            if (peek() != ')')
                fail("expected ')'");
            ++pos_;
        }
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            std::size_t dstart = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
            if (dstart == pos_)
                fail("expected a denominator");
            Integer den(std::string(text_.substr(dstart, pos_ - dstart)));
            if (sgn(den) == 0)
                fail("zero denominator");
            coeff /= Rational(den);
        }
        return QuadField(Rational(0), coeff, d);
    }

    Rational parse_rational_literal()
    {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        std::string s(text_.substr(start, pos_ - start));
        if (peek() == '/' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            std::size_t dstart = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
            s += "/" + std::string(text_.substr(dstart, pos_ - dstart));
        }
        try {
            return parse_rational(s);
        } catch (const ParseError&) {
            throw ParseError("invalid rational '" + s + "'", start);
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    bool at_end() const { return pos_ >= text_.size(); }
    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

QuadField parse_quadfield(std::string_view text)
{
    return QuadParser(text).parse();
}

} // namespace omega
