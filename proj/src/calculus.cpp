#include "omega/calculus.hpp"

#include "omega/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace omega {

namespace {

void require_infinitesimal(const Hyperreal& alpha)
{
    if (classify(alpha) != HClass::infinitesimal)
        throw PreconditionError("alpha must be infinitesimal, got " + to_text(alpha));
}

int leading_sign(const Hyperreal& x)
{
    return x.terms().begin()->second.sign();
}

std::string short_text(const Hyperreal& x)
{
    std::string t = to_text(x);
    auto pos = t.find(" (mod");
    return pos == std::string::npos ? t : t.substr(0, pos);
}

bool scalars_match(const Scalar& x, const Scalar& y, double tol)
{
    if (x.is_exact() && y.is_exact())
        return x == y;
    return std::abs((x - y).to_double()) <= tol;
}

} // namespace

Hyperreal integral_taylor(const Expr& f, const Scalar& x, const Hyperreal& alpha, int depth)
{
    require_infinitesimal(alpha);
    if (depth < 0)
        throw PreconditionError("depth must be nonnegative");
    std::vector<Scalar> c = taylor_coefficients(f, x, depth);
    Rational bound = std::min(alpha.valid_order(), Rational(Rational(depth + 2) * alpha.order()));
    Hyperreal total = Hyperreal::constant(Scalar(0), bound);
    Hyperreal power = alpha;
    for (int j = 0; j <= depth; ++j) {
        total = total + (c[static_cast<std::size_t>(j)] / Scalar(j + 1)) * power;
        if (power.order() >= bound)
            break;
        power = power * alpha;
    }
    return total.truncated(bound);
}

Ftc1Report ftc1_check(const Expr& f, const Scalar& a, const Scalar& b, const Scalar& x,
                      const std::vector<Hyperreal>& alphas, double tol, int depth)
{
    if (!(a < b))
        throw PreconditionError("ftc1 needs a < b");
    if (x < a || x > b)
        throw PreconditionError("x = " + x.to_string() + " lies outside [a, b]");
    if (alphas.empty())
        throw PreconditionError("ftc1 needs at least one alpha");
    SmoothnessReport smooth = smoothness_report(f, a, b);
    for (const Scalar& s : smooth.breakpoints)
        if (s == x)
            throw NotSmoothError("x = " + x.to_string() + " is a breakpoint of f");
    for (const Hyperreal& alpha : alphas) {
        require_infinitesimal(alpha);
        if (x == a && leading_sign(alpha) < 0)
            throw PreconditionError("alpha = " + to_text(alpha) + " leaves [a, b] at x = a");
        if (x == b && leading_sign(alpha) > 0)
            throw PreconditionError("alpha = " + to_text(alpha) + " leaves [a, b] at x = b");
    }

    Ftc1Report report;
    report.claim = "st((F(x+alpha) - F(x))/alpha) = f(x)";
    report.fx = eval_real(f, x);
    report.witness("x", x.to_string());
    report.witness("f(x)", report.fx.to_string());
    bool ok = true;
    for (const Hyperreal& alpha : alphas) {
        Hyperreal q = integral_taylor(f, x, alpha, depth) / alpha;
        Scalar st = standard_part(q);
        report.quotients.push_back(q);
        report.standard_parts.push_back(st);
        report.witness("Q(" + short_text(alpha) + ")", to_text(q));
        ok = ok && scalars_match(st, report.fx, tol);
    }
    for (const Scalar& st : report.standard_parts)
        ok = ok && scalars_match(st, report.standard_parts.front(), tol);
    report.status = ok ? CheckStatus::pass : CheckStatus::fail;
    return report;
}

L2Report l2_check(const Expr& h, const Hyperreal& x, const Hyperreal& alpha, int depth)
{
    require_infinitesimal(alpha);
    HClass xc = classify(x);
    if (xc == HClass::unlimited || xc == HClass::indeterminate)
        throw PreconditionError("x must be limited, got " + to_text(x));
    HClass shifted = classify(x + alpha);
    if (shifted == HClass::unlimited || shifted == HClass::indeterminate)
        throw PreconditionError("x + alpha must be limited");

    Expr derivative = simplify(differentiate(h));
    Hyperreal at_x = eval_hyper(h, x, depth);
    Hyperreal quotient = (eval_hyper(h, x + alpha, depth) - at_x) / alpha;
    L2Report report;
    report.claim = "H'(x) = (H(x+alpha) - H(x))/alpha + gamma with gamma zero or infinitesimal";
    report.gamma = eval_hyper(derivative, x, depth) - quotient;
    report.gamma_class = classify(report.gamma, kCoefficientTolerance);
    report.witness("x", to_text(x));
    report.witness("alpha", to_text(alpha));
    report.witness("H'", to_text(derivative));
    report.witness("gamma", to_text(report.gamma));
    report.witness("class", to_string(report.gamma_class));
    bool ok = report.gamma_class == HClass::zero || report.gamma_class == HClass::infinitesimal;
    report.status = ok ? CheckStatus::pass : CheckStatus::fail;
    return report;
}

Ftc2Report ftc2_check(const Expr& f, const Expr& h, const Scalar& a, const Scalar& b, const IntegrateOptions& options)
{
    if (!(a < b))
        throw PreconditionError("ftc2 needs a < b");
    Ftc2Report report;
    report.claim = "int_a^b f = H(b) - H(a)";

    Expr derivative = simplify(differentiate(h));
    auto pf = to_polynomial(f);
    auto ph = to_polynomial(derivative);
    auto trim = [](std::vector<Rational> v) {
        while (!v.empty() && sgn(v.back()) == 0)
            v.pop_back();
        return v;
    };
    if (pf && ph && trim(*pf) == trim(*ph)) {
        report.validation = "polynomial identity";
    } else if (structurally_equal(derivative, simplify(f))) {
        report.validation = "structural identity";
    } else {
        std::mt19937_64 rng(0x5eed);
        const double lo = a.to_double();
        const double hi = b.to_double();
        std::uniform_real_distribution<double> pick(lo, hi);
        for (int i = 0; i < kAntiderivativeSamples; ++i) {
            double t = pick(rng);
            double lhs = eval_double(derivative, t);
            double rhs = eval_double(f, t);
            if (!(std::abs(lhs - rhs) <= kAntiderivativeTolerance))
                throw PreconditionError("antiderivative validation failed: H'(" + format_double(t) + ") = " +
                                        format_double(lhs) + " but f = " + format_double(rhs));
        }
        report.validation = "random points";
    }

    report.verdict = integrate(f, a, b, options);
    report.expected = eval_real(h, b) - eval_real(h, a);
    report.witness("antiderivative check", report.validation);
    report.witness("H(b) - H(a)", report.expected.to_string());
    if (!report.verdict.integrable()) {
        report.witness("verdict", to_string(report.verdict.kind));
        report.status = CheckStatus::fail;
        return report;
    }
    const Scalar& value = *report.verdict.value;
    report.witness("integral", value.to_string());
    Scalar residual = value - report.expected;
    report.witness("residual", residual.to_string());
    bool exact = report.verdict.confidence == Confidence::exact && value.is_exact() && report.expected.is_exact();
    bool ok = exact ? residual.is_zero() : std::abs(residual.to_double()) <= options.tolerance;
    report.status = ok ? CheckStatus::pass : CheckStatus::fail;
    return report;
}

TelescopeReport telescoping_oracle(const Expr& h, const Scalar& a, const Scalar& b, long n, double tol)
{
    if (n < 1)
        throw PreconditionError("telescope needs N >= 1");
    if (!(a < b))
        throw PreconditionError("telescope needs a < b");
    TelescopeReport report;
    report.claim = "sum_k (H(x_k) - H(x_{k-1})) = H(b) - H(a)";
    report.n = n;
    Expr derivative = simplify(differentiate(h));

    long k = 0;
    try {
        Scalar ha = eval_real(h, a);
        Scalar hb = eval_real(h, b);
        report.expected = hb - ha;
        report.exact = a.is_exact() && b.is_exact() && ha.is_exact() && hb.is_exact();
        if (report.exact) {
            const Rational width = b.rational() - a.rational();
            Rational total(0);
            Rational prev = ha.rational();
            for (k = 1; k <= n && report.exact; ++k) {
                Scalar v = k == n ? hb : eval_real(h, Scalar(Rational(a.rational() + width * Rational(k, n))));
                if (!v.is_exact()) {
                    report.exact = false;
                    break;
                }
                total += v.rational() - prev;
                prev = v.rational();
            }
            if (report.exact)
                report.telescoped = Scalar(total);
        }
        if (!report.exact) {
            const double lo = a.to_double();
            const double width = b.to_double() - lo;
            double total = 0.0;
            double prev = eval_double(h, lo);
            for (k = 1; k <= n; ++k) {
                double v = eval_double(h, lo + width * (static_cast<double>(k) / static_cast<double>(n)));
                total += v - prev;
                prev = v;
            }
            report.telescoped = Scalar::from_double(total);
            report.expected = Scalar::from_double(report.expected.to_double());
        }
    } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " (partition point k = " + std::to_string(k) + ")");
    }

    Scalar dsum;
    try {
        dsum = finite_sum_oracle(derivative, a, b, n, report.exact ? OracleMode::exact : OracleMode::floating);
    } catch (const PreconditionError&) {
        dsum = finite_sum_oracle(derivative, a, b, n, OracleMode::floating);
    }
    report.derivative_residual = dsum - report.expected;

    report.witness("N", std::to_string(n));
    report.witness("telescoped", report.telescoped.to_string());
    report.witness("H(b) - H(a)", report.expected.to_string());
    report.witness("H' right sum residual", report.derivative_residual.to_string());
    bool ok = report.exact ? report.telescoped == report.expected
                           : std::abs((report.telescoped - report.expected).to_double()) <= tol;
    report.status = ok ? CheckStatus::pass : CheckStatus::fail;
    return report;
}

} // namespace omega
