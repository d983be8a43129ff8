#include "omega/hyperreal.hpp"

#include "omega/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace omega {

namespace {

Scalar as_float(const Scalar& c)
{
    return c.is_exact() ? Scalar::from_double(c.to_double()) : c;
}

std::string exponent_text(const Rational& e)
{
    if (e.get_den() == 1 && sgn(e) >= 0)
        return e.get_str();
    return "(" + e.get_str() + ")";
}

} // namespace

Hyperreal::Hyperreal(TermMap terms, Rational valid_order, bool exact)
    : terms_(std::move(terms)), valid_order_(std::move(valid_order)), exact_(exact)
{
    canonicalize();
}

void Hyperreal::canonicalize()
{
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (!it->second.is_exact())
            exact_ = false;
        if (it->second.is_zero() || it->first >= valid_order_)
            it = terms_.erase(it);
        else
            ++it;
    }
    if (terms_.size() > kMaxTerms) {
        auto cut = std::next(terms_.begin(), static_cast<std::ptrdiff_t>(kMaxTerms));
        valid_order_ = cut->first;
        terms_.erase(cut, terms_.end());
    }
    if (!exact_)
        for (auto& [e, c] : terms_)
            c = as_float(c);
}

Hyperreal Hyperreal::make(const std::vector<std::pair<Rational, Scalar>>& terms, Rational valid_order)
{
    TermMap map;
    bool exact = true;
    for (const auto& [e, c] : terms) {
        if (!c.is_exact()) {
            // Scalar construction already rejects NaN and infinity.
            exact = false;
        }
        if (!map.emplace(e, c).second)
            throw PreconditionError("duplicate exponent " + e.get_str() + " in hyperreal terms");
    }
    return Hyperreal(std::move(map), std::move(valid_order), exact);
}

Hyperreal Hyperreal::constant(const Scalar& c, Rational valid_order)
{
    return make({{Rational(0), c}}, std::move(valid_order));
}

Hyperreal Hyperreal::monomial(const Scalar& c, const Rational& exponent, Rational valid_order)
{
    return make({{exponent, c}}, std::move(valid_order));
}

Hyperreal Hyperreal::infinitesimal(Rational valid_order)
{
    return monomial(Scalar(1), Rational(1), std::move(valid_order));
}

Hyperreal Hyperreal::unlimited(Rational valid_order)
{
    return monomial(Scalar(1), Rational(-1), std::move(valid_order));
}

std::optional<Rational> Hyperreal::leading_exponent() const
{
    if (terms_.empty())
        return std::nullopt;
    return terms_.begin()->first;
}

Rational Hyperreal::order() const
{
    return terms_.empty() ? valid_order_ : terms_.begin()->first;
}

Scalar Hyperreal::coefficient(const Rational& exponent) const
{
    auto it = terms_.find(exponent);
    if (it != terms_.end())
        return it->second;
    return exact_ ? Scalar(0) : Scalar::from_double(0.0);
}

Hyperreal Hyperreal::truncated(const Rational& v) const
{
    return Hyperreal(terms_, std::min(valid_order_, v), exact_);
}

Scalar Hyperreal::substitute(const Scalar& w) const
{
    Scalar total = exact_ && w.is_exact() ? Scalar(0) : Scalar::from_double(0.0);
    for (const auto& [e, c] : terms_) {
        if (e.get_den() == 1 && e.get_num().fits_slong_p()) {
            total += c * pow(w, e.get_num().get_si());
        } else {
            total += Scalar::from_double(c.to_double() * std::pow(w.to_double(), e.get_d()));
        }
    }
    return total;
}

Hyperreal Hyperreal::operator-() const
{
    TermMap out;
    for (const auto& [e, c] : terms_)
        out.emplace(e, -c);
    return Hyperreal(std::move(out), valid_order_, exact_);
}

Hyperreal operator+(const Hyperreal& x, const Hyperreal& y)
{
    Hyperreal::TermMap out = x.terms_;
    for (const auto& [e, c] : y.terms_) {
        auto [it, inserted] = out.emplace(e, c);
        if (!inserted)
            it->second += c;
    }
    return Hyperreal(std::move(out), std::min(x.valid_order_, y.valid_order_), x.exact_ && y.exact_);
}

Hyperreal operator-(const Hyperreal& x, const Hyperreal& y)
{
    return x + (-y);
}

Hyperreal operator*(const Hyperreal& x, const Hyperreal& y)
{
    Rational valid = std::min(Rational(x.valid_order_ + y.order()), Rational(y.valid_order_ + x.order()));
    Hyperreal::TermMap out;
    for (const auto& [ex, cx] : x.terms_) {
        for (const auto& [ey, cy] : y.terms_) {
            Rational e = ex + ey;
            if (e >= valid)
                break; // y's exponents only grow from here
            auto [it, inserted] = out.emplace(e, cx * cy);
            if (!inserted)
                it->second += cx * cy;
        }
    }
    return Hyperreal(std::move(out), std::move(valid), x.exact_ && y.exact_);
}

Hyperreal operator*(const Scalar& c, const Hyperreal& x)
{
    Hyperreal::TermMap out;
    for (const auto& [e, cx] : x.terms_)
        out.emplace(e, c * cx);
    return Hyperreal(std::move(out), x.valid_order_, x.exact_ && c.is_exact());
}

Hyperreal operator/(const Hyperreal& x, const Hyperreal& y)
{
    return x * invert(y);
}

bool operator==(const Hyperreal& x, const Hyperreal& y)
{
    if (x.valid_order_ != y.valid_order_ || x.exact_ != y.exact_ || x.terms_.size() != y.terms_.size())
        return false;
    return std::equal(x.terms_.begin(), x.terms_.end(), y.terms_.begin(),
                      [](const auto& p, const auto& q) { return p.first == q.first && p.second == q.second; });
}

Hyperreal add(const Hyperreal& x, const Hyperreal& y) { return x + y; }
Hyperreal sub(const Hyperreal& x, const Hyperreal& y) { return x - y; }
Hyperreal neg(const Hyperreal& x) { return -x; }
Hyperreal mul(const Hyperreal& x, const Hyperreal& y) { return x * y; }

Hyperreal pow(const Hyperreal& x, unsigned n)
{
    Hyperreal result = Hyperreal::constant(Scalar(1), std::max(x.valid_order(), Rational(kDefaultValidity)));
    if (!x.is_exact())
        result = Hyperreal::constant(Scalar::from_double(1.0), result.valid_order());
    Hyperreal base = x;
    bool first = true;
    while (n > 0) {
        if (n & 1u) {
            result = first ? base : result * base;
            first = false;
        }
        n >>= 1u;
        if (n > 0)
            base = base * base;
    }
    return result;
}

Hyperreal invert(const Hyperreal& x)
{
    if (x.empty())
        throw DomainError("cannot invert a value indistinguishable from zero (mod w^" +
                          x.valid_order().get_str() + ")");
    const Rational lead = *x.leading_exponent();
    const Scalar lead_coeff = x.terms().begin()->second;

    // x = c w^e (1 + u) with u of positive order, trusted to order V - e.
    const Rational u_valid = x.valid_order() - lead;
    std::vector<std::pair<Rational, Scalar>> u_terms;
    for (auto it = std::next(x.terms().begin()); it != x.terms().end(); ++it)
        u_terms.emplace_back(it->first - lead, it->second / lead_coeff);
    Hyperreal minus_u = -Hyperreal::make(u_terms, u_valid);

    Scalar one = x.is_exact() ? Scalar(1) : Scalar::from_double(1.0);
    Hyperreal series = Hyperreal::constant(one, u_valid);
    Hyperreal power = series;
    if (!minus_u.empty()) {
        while (true) {
            power = power * minus_u;
            if (power.empty() || power.order() >= u_valid)
                break;
            series += power;
        }
    }
    series = series.truncated(u_valid);

    std::vector<std::pair<Rational, Scalar>> shifted;
    const Scalar inv_c = one / lead_coeff;
    for (const auto& [e, c] : series.terms())
        shifted.emplace_back(e - lead, c * inv_c);
    return Hyperreal::make(shifted, u_valid - lead);
}

HClass classify(const Hyperreal& x)
{
    if (x.empty())
        return sgn(x.valid_order()) > 0 ? HClass::zero : HClass::indeterminate;
    int s = sgn(*x.leading_exponent());
    if (s > 0)
        return HClass::infinitesimal;
    if (s == 0)
        return HClass::appreciable;
    return HClass::unlimited;
}

HClass classify(const Hyperreal& x, double tol)
{
    for (const auto& [e, c] : x.terms()) {
        if (!c.is_exact() && std::abs(c.to_double()) <= tol)
            continue;
        int s = sgn(e);
        return s > 0 ? HClass::infinitesimal : (s == 0 ? HClass::appreciable : HClass::unlimited);
    }
    return sgn(x.valid_order()) > 0 ? HClass::zero : HClass::indeterminate;
}

std::string to_string(HClass c)
{
    switch (c) {
    case HClass::zero: return "zero";
    case HClass::infinitesimal: return "infinitesimal";
    case HClass::appreciable: return "appreciable";
    case HClass::unlimited: return "unlimited";
    case HClass::indeterminate: return "indeterminate";
    }
    return "?";
}

Scalar standard_part(const Hyperreal& x)
{
    switch (classify(x)) {
    case HClass::unlimited:
        throw PreconditionError("no standard part: " + to_text(x) + " is unlimited");
    case HClass::indeterminate:
        throw PreconditionError("insufficient validity: " + to_text(x));
    default:
        return x.coefficient(Rational(0));
    }
}

Ordering compare(const Hyperreal& x, const Hyperreal& y, double tol)
{
    const Hyperreal d = x - y;
    for (const auto& [e, c] : d.terms()) {
        if (!c.is_exact() && std::abs(c.to_double()) <= tol)
            continue;
        return c.sign() > 0 ? Ordering::greater : Ordering::less;
    }
    return sgn(d.valid_order()) > 0 ? Ordering::equal_within_validity : Ordering::indeterminate;
}

std::string to_string(Ordering o)
{
    switch (o) {
    case Ordering::less: return "less";
    case Ordering::equal_within_validity: return "equal-within-validity";
    case Ordering::greater: return "greater";
    case Ordering::indeterminate: return "indeterminate";
    }
    return "?";
}

bool agree(const Hyperreal& x, const Hyperreal& y, double tol)
{
    const Rational v = std::min(x.valid_order(), y.valid_order());
    const Hyperreal d = (x - y).truncated(v);
    for (const auto& [e, c] : d.terms()) {
        if (c.is_exact() || std::abs(c.to_double()) > tol)
            return false;
    }
    return true;
}

Rational order_sum_bound(const Rational& term_order, int count_degree, int scale_degree)
{
    if (sgn(term_order) <= 0 || count_degree < 1)
        throw PreconditionError("order_sum_bound requires q > 0 and d >= 1");
    return term_order - count_degree + scale_degree;
}

std::string to_text(const Hyperreal& x)
{
    std::string out;
    bool first = true;
    for (const auto& [e, c] : x.terms()) {
        std::string mono;
        if (sgn(e) > 0)
            mono = e == 1 ? "w" : "w^" + exponent_text(e);
        else if (sgn(e) < 0)
            mono = e == -1 ? "W" : "W^" + exponent_text(Rational(-e));
        const bool negative = c.sign() < 0;
        const Scalar mag = abs(c);
        std::string body;
        if (mono.empty())
            body = mag.to_string();
        else if (mag.is_exact() && mag.rational() == 1)
            body = mono;
        else
            body = mag.to_string() + "*" + mono;
        if (first)
            out += negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
        first = false;
    }
    if (first)
        out = x.is_exact() ? "0" : "0.0";
    out += " (mod w^" + exponent_text(x.valid_order()) + ")";
    return out;
}

namespace {

class HyperrealParser
{
public:
    explicit HyperrealParser(std::string_view text) : text_(text) {}

    Hyperreal parse()
    {
        Hyperreal::TermMap terms;
        bool exact = true;
        Rational valid(kDefaultValidity);
        skip_ws();
        if (at_end())
            fail("empty hyperreal literal");
        bool first = true;
        while (true) {
            skip_ws();
            if (at_end())
                break;
            if (peek() == '(') {
                parse_mod(valid);
                skip_ws();
                if (!at_end())
                    fail("unexpected text after validity suffix");
                break;
            }
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            auto [e, c] = parse_term();
            if (!c.is_exact())
                exact = false;
            if (sign < 0)
                c = -c;
            auto [it, inserted] = terms.emplace(e, c);
            if (!inserted)
                it->second += c;
            first = false;
        }
        std::vector<std::pair<Rational, Scalar>> list(terms.begin(), terms.end());
        Hyperreal h = Hyperreal::make(list, valid);
        if (!exact && h.is_exact())
            h = Scalar::from_double(1.0) * h;
        return h;
    }

private:
    std::pair<Rational, Scalar> parse_term()
    {
        Scalar coeff(1);
        bool have_number = false;
        if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
            coeff = parse_number();
            have_number = true;
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                if (peek() != 'w' && peek() != 'W')
                    fail("expected 'w' or 'W' after '*'");
            }
        }
        if (peek() == 'w' || peek() == 'W') {
            const bool big = peek() == 'W';
            ++pos_;
            Rational e(1);
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                e = parse_exponent();
            }
            return {big ? Rational(-e) : e, coeff};
        }
        if (!have_number)
            fail("expected a coefficient or monomial");
        return {Rational(0), coeff};
    }

    Rational parse_exponent()
    {
        if (peek() == '(') {
            ++pos_;
            skip_ws();
            bool negative = false;
            if (peek() == '-') {
                negative = true;
                ++pos_;
                skip_ws();
            }
            Rational r = parse_rational_token();
            skip_ws();
            expect(')');
            return negative ? Rational(-r) : r;
        }
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
        }
        Rational r = parse_rational_token();
        return negative ? Rational(-r) : r;
    }

    Rational parse_rational_token()
    {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        std::string num(text_.substr(start, pos_ - start));
        if (peek() == '/') {
            ++pos_;
            std::size_t dstart = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
            if (dstart == pos_)
                fail("expected a denominator");
            num += "/" + std::string(text_.substr(dstart, pos_ - dstart));
        }
        try {
            return parse_rational(num);
        } catch (const ParseError&) {
            fail("invalid rational");
        }
        return Rational(0);
    }

    Scalar parse_number()
    {
        std::size_t start = pos_;
        bool floating = false;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (peek() == '.') {
            floating = true;
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
        }
        if (peek() == 'e' || peek() == 'E') {
            floating = true;
            ++pos_;
            if (peek() == '+' || peek() == '-')
                ++pos_;
            std::size_t digits = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
            if (digits == pos_)
                fail("malformed exponent");
        }
        if (floating) {
            std::string s(text_.substr(start, pos_ - start));
            return Scalar::from_double(std::strtod(s.c_str(), nullptr));
        }
        pos_ = start;
        return Scalar(parse_rational_token());
    }

    void parse_mod(Rational& valid)
    {
        expect('(');
        skip_ws();
        if (text_.substr(pos_, 3) != "mod")
            fail("expected 'mod'");
        pos_ += 3;
        skip_ws();
        expect('w');
        skip_ws();
        expect('^');
        skip_ws();
        valid = parse_exponent();
        skip_ws();
        expect(')');
    }

    void expect(char c)
    {
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
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

Hyperreal parse_hyperreal(std::string_view text)
{
    return HyperrealParser(text).parse();
}

} // namespace omega
