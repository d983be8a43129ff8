#include "omega/error.hpp"
#include "omega/expr.hpp"

#include <cmath>

namespace omega {

namespace {

[[noreturn]] void domain_fail(const std::string& what, const Expr& node)
{
    throw DomainError(what + " in '" + to_text(node) + "'");
}

Scalar checked(double v, const Expr& node)
{
    if (!std::isfinite(v))
        domain_fail("non-finite value", node);
    return Scalar::from_double(v);
}

// Exact q-th root of a nonnegative integer, if it exists.
std::optional<Integer> exact_root(const Integer& n, unsigned long q)
{
    Integer r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), q) != 0)
        return r;
    return std::nullopt;
}

Scalar scalar_sin(const Scalar& x, const Expr& node)
{
    if (x.is_exact() && x.is_zero())
        return Scalar(0);
    return checked(std::sin(x.to_double()), node);
}

Scalar scalar_cos(const Scalar& x, const Expr& node)
{
    if (x.is_exact() && x.is_zero())
        return Scalar(1);
    return checked(std::cos(x.to_double()), node);
}

Scalar scalar_exp(const Scalar& x, const Expr& node)
{
    if (x.is_exact() && x.is_zero())
        return Scalar(1);
    return checked(std::exp(x.to_double()), node);
}

Scalar scalar_log(const Scalar& x, const Expr& node)
{
    if (x.sign() <= 0)
        domain_fail("log of nonpositive value " + x.to_string(), node);
    if (x.is_exact() && x.rational() == 1)
        return Scalar(0);
    return checked(std::log(x.to_double()), node);
}

/// x^r for rational r, real-valued (odd roots of negatives allowed).
Scalar scalar_pow(const Scalar& x, const Rational& r, const Expr& node)
{
    const bool integral = r.get_den() == 1;
    if (x.is_zero()) {
        if (sgn(r) < 0)
            domain_fail("zero raised to a negative power", node);
        return sgn(r) == 0 ? Scalar(1) : x;
    }
    if (integral && r.get_num().fits_slong_p())
        return pow(x, r.get_num().get_si());
    const bool odd_root = mpz_odd_p(r.get_den_mpz_t()) != 0;
    if (x.sign() < 0 && !odd_root)
        domain_fail("even root of negative value " + x.to_string(), node);
    const int result_sign = (x.sign() < 0 && mpz_odd_p(r.get_num_mpz_t())) ? -1 : 1;
    const Scalar mag = abs(x);
    if (mag.is_exact() && r.get_den().fits_ulong_p() && r.get_num().fits_slong_p()) {
        const unsigned long q = r.get_den().get_ui();
        auto num = exact_root(mag.rational().get_num(), q);
        auto den = exact_root(mag.rational().get_den(), q);
        if (num && den) {
            Scalar root(Rational(*num, *den));
            Scalar v = pow(root, r.get_num().get_si());
            return result_sign < 0 ? -v : v;
        }
    }
    double v = std::pow(mag.to_double(), r.get_d());
    return checked(result_sign * v, node);
}

Scalar named_value(NamedConstant c)
{
    return Scalar::from_double(c == NamedConstant::pi ? M_PI : M_E);
}

bool less_than(const Scalar& x, const Scalar& c)
{
    return x < c;
}

Scalar eval(const Expr& e, const Scalar& x)
{
    const auto& a = e->args;
    switch (e->kind) {
    case NodeKind::constant: return Scalar(e->number);
    case NodeKind::named_constant: return named_value(e->named);
    case NodeKind::variable: return x;
    case NodeKind::neg: return -eval(a[0], x);
    case NodeKind::add: return eval(a[0], x) + eval(a[1], x);
    case NodeKind::sub: return eval(a[0], x) - eval(a[1], x);
    case NodeKind::mul: return eval(a[0], x) * eval(a[1], x);
    case NodeKind::div: {
        Scalar num = eval(a[0], x);
        Scalar den = eval(a[1], x);
        if (den.is_zero())
            domain_fail("division by zero", e);
        return num / den;
    }
    case NodeKind::pow: return scalar_pow(eval(a[0], x), e->number, e);
    case NodeKind::sin: return scalar_sin(eval(a[0], x), e);
    case NodeKind::cos: return scalar_cos(eval(a[0], x), e);
    case NodeKind::exp: return scalar_exp(eval(a[0], x), e);
    case NodeKind::log: return scalar_log(eval(a[0], x), e);
    case NodeKind::sqrt: return scalar_pow(eval(a[0], x), Rational(1, 2), e);
    case NodeKind::abs: return abs(eval(a[0], x));
    case NodeKind::conditional:
        return less_than(x, eval(a[0], x)) ? eval(a[1], x) : eval(a[2], x);
    case NodeKind::point_fix:
        return x == eval(a[1], x) ? eval(a[2], x) : eval(a[0], x);
    }
    return Scalar(0);
}

double checked_double(double v, const Expr& node)
{
    if (!std::isfinite(v))
        domain_fail("non-finite value", node);
    return v;
}

double eval_d(const Expr& e, double x)
{
    const auto& a = e->args;
    switch (e->kind) {
    case NodeKind::constant: return e->number.get_d();
    case NodeKind::named_constant: return e->named == NamedConstant::pi ? M_PI : M_E;
    case NodeKind::variable: return x;
    case NodeKind::neg: return -eval_d(a[0], x);
    case NodeKind::add: return eval_d(a[0], x) + eval_d(a[1], x);
    case NodeKind::sub: return eval_d(a[0], x) - eval_d(a[1], x);
    case NodeKind::mul: return eval_d(a[0], x) * eval_d(a[1], x);
    case NodeKind::div: {
        double den = eval_d(a[1], x);
        if (den == 0.0)
            domain_fail("division by zero", e);
        return checked_double(eval_d(a[0], x) / den, e);
    }
    case NodeKind::pow: {
        double base = eval_d(a[0], x);
        const Rational& r = e->number;
        if (base == 0.0 && sgn(r) < 0)
            domain_fail("zero raised to a negative power", e);
        if (r.get_den() == 1)
            return checked_double(std::pow(base, r.get_d()), e);
        if (base < 0) {
            if (mpz_odd_p(r.get_den_mpz_t()) == 0)
                domain_fail("even root of negative value", e);
            double mag = std::pow(-base, r.get_d());
            return mpz_odd_p(r.get_num_mpz_t()) ? -mag : mag;
        }
        return checked_double(std::pow(base, r.get_d()), e);
    }
    case NodeKind::sin: return std::sin(eval_d(a[0], x));
    case NodeKind::cos: return std::cos(eval_d(a[0], x));
    case NodeKind::exp: return checked_double(std::exp(eval_d(a[0], x)), e);
    case NodeKind::log: {
        double v = eval_d(a[0], x);
        if (v <= 0.0)
            domain_fail("log of nonpositive value", e);
        return std::log(v);
    }
    case NodeKind::sqrt: {
        double v = eval_d(a[0], x);
        if (v < 0.0)
            domain_fail("sqrt of negative value", e);
        return std::sqrt(v);
    }
    case NodeKind::abs: return std::abs(eval_d(a[0], x));
    case NodeKind::conditional: return x < eval_d(a[0], x) ? eval_d(a[1], x) : eval_d(a[2], x);
    case NodeKind::point_fix: return x == eval_d(a[1], x) ? eval_d(a[2], x) : eval_d(a[0], x);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Truncated power series in t around the expansion point.

using Series = std::vector<Scalar>;

Series zero_series(int order)
{
    return Series(static_cast<std::size_t>(order) + 1, Scalar(0));
}

Series series_mul(const Series& x, const Series& y)
{
    Series out = zero_series(static_cast<int>(x.size()) - 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_exact() && x[i].is_zero())
            continue;
        for (std::size_t j = 0; i + j < x.size(); ++j)
            out[i + j] += x[i] * y[j];
    }
    return out;
}

Series series_int_pow(Series base, unsigned long n, int order)
{
    Series result = zero_series(order);
    result[0] = Scalar(1);
    while (n > 0) {
        if (n & 1u)
            result = series_mul(result, base);
        n >>= 1u;
        if (n > 0)
            base = series_mul(base, base);
    }
    return result;
}

[[noreturn]] void not_smooth(const std::string& what, const Expr& node, const Scalar& s)
{
    throw NotSmoothError(what + " in '" + to_text(node) + "' at x = " + s.to_string());
}

Series taylor(const Expr& e, const Scalar& s, int order)
{
    const auto& a = e->args;
    const std::size_t n = static_cast<std::size_t>(order) + 1;
    switch (e->kind) {
    case NodeKind::constant: {
        Series out = zero_series(order);
        out[0] = Scalar(e->number);
        return out;
    }
    case NodeKind::named_constant: {
        Series out = zero_series(order);
        out[0] = named_value(e->named);
        return out;
    }
    case NodeKind::variable: {
        Series out = zero_series(order);
        out[0] = s;
        if (order >= 1)
            out[1] = Scalar(1);
        return out;
    }
    case NodeKind::neg: {
        Series out = taylor(a[0], s, order);
        for (auto& c : out)
            c = -c;
        return out;
    }
    case NodeKind::add:
    case NodeKind::sub: {
        Series x = taylor(a[0], s, order);
        Series y = taylor(a[1], s, order);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = e->kind == NodeKind::add ? x[i] + y[i] : x[i] - y[i];
        return x;
    }
    case NodeKind::mul: return series_mul(taylor(a[0], s, order), taylor(a[1], s, order));
    case NodeKind::div: {
        Series num = taylor(a[0], s, order);
        Series den = taylor(a[1], s, order);
        if (den[0].is_zero())
            domain_fail("division by zero at x = " + s.to_string(), e);
        Series q = zero_series(order);
        for (std::size_t k = 0; k < n; ++k) {
            Scalar acc = num[k];
            for (std::size_t j = 1; j <= k; ++j)
                acc -= den[j] * q[k - j];
            q[k] = acc / den[0];
        }
        return q;
    }
    case NodeKind::exp: {
        Series f = taylor(a[0], s, order);
        Series g = zero_series(order);
        g[0] = scalar_exp(f[0], e);
        for (std::size_t k = 1; k < n; ++k) {
            Scalar acc(0);
            for (std::size_t j = 1; j <= k; ++j)
                acc += Scalar(static_cast<long>(j)) * f[j] * g[k - j];
            g[k] = acc / Scalar(static_cast<long>(k));
        }
        return g;
    }
    case NodeKind::log: {
        Series f = taylor(a[0], s, order);
        Series g = zero_series(order);
        g[0] = scalar_log(f[0], e);
        for (std::size_t k = 1; k < n; ++k) {
            Scalar acc(0);
            for (std::size_t j = 1; j < k; ++j)
                acc += Scalar(static_cast<long>(j)) * g[j] * f[k - j];
            g[k] = (f[k] - acc / Scalar(static_cast<long>(k))) / f[0];
        }
        return g;
    }
    case NodeKind::sin:
    case NodeKind::cos: {
        Series f = taylor(a[0], s, order);
        Series sn = zero_series(order);
        Series cs = zero_series(order);
        sn[0] = scalar_sin(f[0], e);
        cs[0] = scalar_cos(f[0], e);
        for (std::size_t k = 1; k < n; ++k) {
            Scalar as(0), ac(0);
            for (std::size_t j = 1; j <= k; ++j) {
                Scalar w = Scalar(static_cast<long>(j)) * f[j];
                as += w * cs[k - j];
                ac += w * sn[k - j];
            }
            sn[k] = as / Scalar(static_cast<long>(k));
            cs[k] = -ac / Scalar(static_cast<long>(k));
        }
        return e->kind == NodeKind::sin ? sn : cs;
    }
    case NodeKind::sqrt:
    case NodeKind::pow: {
        const Rational r = e->kind == NodeKind::sqrt ? Rational(1, 2) : e->number;
        Series f = taylor(a[0], s, order);
        if (r.get_den() == 1 && sgn(r) >= 0 && r.get_num().fits_ulong_p())
            return series_int_pow(f, r.get_num().get_ui(), order);
        if (f[0].is_zero()) {
            if (sgn(r) < 0)
                domain_fail("zero raised to a negative power at x = " + s.to_string(), e);
            if (order == 0)
                return Series{scalar_pow(f[0], r, e)};
            not_smooth("fractional power of zero", e, s);
        }
        Series g = zero_series(order);
        g[0] = scalar_pow(f[0], r, e);
        const Scalar alpha(r);
        for (std::size_t k = 1; k < n; ++k) {
            Scalar acc(0);
            for (std::size_t j = 1; j <= k; ++j)
                acc += (alpha * Scalar(static_cast<long>(j)) - Scalar(static_cast<long>(k - j))) * f[j] * g[k - j];
            g[k] = acc / (Scalar(static_cast<long>(k)) * f[0]);
        }
        return g;
    }
    case NodeKind::abs: {
        Series f = taylor(a[0], s, order);
        if (f[0].is_zero()) {
            if (order == 0)
                return f;
            not_smooth("abs of zero", e, s);
        }
        if (f[0].sign() < 0)
            for (auto& c : f)
                c = -c;
        return f;
    }
    case NodeKind::conditional: {
        Scalar c = eval(a[0], s);
        if (order > 0 && s == c)
            not_smooth("breakpoint", e, s);
        return less_than(s, c) ? taylor(a[1], s, order) : taylor(a[2], s, order);
    }
    case NodeKind::point_fix: {
        Scalar p = eval(a[1], s);
        if (s == p) {
            if (order > 0)
                not_smooth("redefined point", e, s);
            return Series{eval(a[2], s)};
        }
        return taylor(a[0], s, order);
    }
    }
    return zero_series(order);
}

} // namespace

Scalar eval_real(const Expr& e, const Scalar& x)
{
    return eval(e, x);
}

double eval_double(const Expr& e, double x)
{
    return checked_double(eval_d(e, x), e);
}

Scalar eval_constant(const Expr& e)
{
    if (depends_on_variable(e))
        throw PreconditionError("expression '" + to_text(e) + "' is not constant");
    return eval(e, Scalar(0));
}

std::vector<Scalar> taylor_coefficients(const Expr& e, const Scalar& s, int order)
{
    if (order < 0)
        throw PreconditionError("negative Taylor order");
    return taylor(e, s, order);
}

Hyperreal eval_hyper(const Expr& e, const Hyperreal& x, int depth)
{
    const HClass cls = classify(x);
    if (cls == HClass::unlimited)
        throw PreconditionError("cannot lift f to the unlimited argument " + to_text(x));
    if (cls == HClass::indeterminate)
        throw PreconditionError("argument " + to_text(x) + " has insufficient validity");
    const Scalar s = standard_part(x);
    const Hyperreal delta = x - Hyperreal::constant(s, x.valid_order());
    std::vector<Scalar> coeffs;
    try {
        coeffs = taylor(e, s, depth);
    } catch (const NotSmoothError& err) {
        throw NotSmoothError(std::string("breakpoint at standard part: ") + err.what());
    }
    const Rational valid = std::min(x.valid_order(), Rational((depth + 1) * delta.order()));
    Hyperreal result = Hyperreal::constant(coeffs[static_cast<std::size_t>(depth)], x.valid_order());
    for (int j = depth - 1; j >= 0; --j)
        result = result * delta + Hyperreal::constant(coeffs[static_cast<std::size_t>(j)], x.valid_order());
    if (!x.is_exact())
        result = Scalar::from_double(1.0) * result;
    return result.truncated(valid);
}

} // namespace omega
