#include "omega/omegasum.hpp"

#include "omega/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace omega {

// ---------------------------------------------------------------------------
// NSpec

NSpec::NSpec(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients))
{
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0)
        coeffs_.pop_back();
    if (coeffs_.size() < 2)
        throw PreconditionError("not unlimited: N-spec must have degree >= 1");
    if (sgn(coeffs_.back()) <= 0)
        throw PreconditionError("not positive: N-spec leading coefficient must be positive");
}

std::string NSpec::to_text() const
{
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Integer& c = coeffs_[static_cast<std::size_t>(i)];
        if (sgn(c) == 0)
            continue;
        Integer mag = abs(c);
        std::string mono = i == 0 ? "" : i == 1 ? "W" : "W^" + std::to_string(i);
        std::string body = mono.empty() ? mag.get_str() : mag == 1 ? mono : mag.get_str() + "*" + mono;
        if (out.empty())
            out = sgn(c) < 0 ? "-" + body : body;
        else
            out += (sgn(c) < 0 ? " - " : " + ") + body;
    }
    return out;
}

Hyperreal NSpec::to_hyperreal(const Rational& valid_order) const
{
    std::vector<std::pair<Rational, Scalar>> terms;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (sgn(coeffs_[i]) != 0)
            terms.emplace_back(Rational(-static_cast<long>(i)), Scalar(Rational(coeffs_[i])));
    return Hyperreal::make(terms, valid_order);
}

Hyperreal NSpec::reciprocal(const Rational& valid_order) const
{
    return invert(to_hyperreal(valid_order)).truncated(valid_order);
}

Integer NSpec::at(const Integer& w_value) const
{
    Integer v(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        v = v * w_value + *it;
    return v;
}

bool NSpec::divisible_by(const Integer& q) const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [&](const Integer& c) { return mpz_divisible_p(c.get_mpz_t(), q.get_mpz_t()) != 0; });
}

NSpec NSpec::scaled(const Rational& r) const
{
    std::vector<Integer> out;
    for (const Integer& c : coeffs_) {
        Rational v = Rational(c) * r;
        v.canonicalize();
        if (v.get_den() != 1)
            throw PreconditionError("scaling " + to_text() + " by " + r.get_str() + " is not integral");
        out.push_back(v.get_num());
    }
    return NSpec(std::move(out));
}

NSpec operator*(const NSpec& x, const NSpec& y)
{
    std::vector<Integer> out(x.coeffs_.size() + y.coeffs_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < y.coeffs_.size(); ++j)
            out[i + j] += x.coeffs_[i] * y.coeffs_[j];
    return NSpec(std::move(out));
}

NSpec nspec_parse(std::string_view text)
{
    Expr e = parse(text, ParseOptions{"W"});
    auto poly = to_polynomial(e);
    if (!poly)
        throw ParseError("N-spec must be a polynomial in W", 0);
    std::vector<Integer> coeffs;
    for (const Rational& c : *poly) {
        if (c.get_den() != 1)
            throw ParseError("N-spec coefficients must be integers", 0);
        coeffs.push_back(c.get_num());
    }
    if (coeffs.size() < 2)
        throw ParseError("not unlimited: '" + std::string(text) + "'", 0);
    if (sgn(coeffs.back()) <= 0)
        throw ParseError("not positive: '" + std::string(text) + "'", 0);
    return NSpec(std::move(coeffs));
}

std::vector<NSpec> nspec_family_parse(std::string_view text)
{
    std::vector<NSpec> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                   : comma - start);
        out.push_back(nspec_parse(item));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::vector<NSpec> default_family()
{
    return nspec_family_parse("W,W+1,2*W,3*W,W^2");
}

Hyperreal delta_x(const NSpec& n, const Scalar& a, const Scalar& b, int validity)
{
    if (!(a < b))
        throw PreconditionError("delta_x needs a < b");
    return (b - a) * n.reciprocal(validity);
}

Hyperreal PartitionSpec::point(const Hyperreal& k) const
{
    return Hyperreal::constant(a, delta_x.valid_order()) + k * delta_x;
}

PartitionSpec make_partition(const Scalar& a, const Scalar& b, const NSpec& n, int validity)
{
    return PartitionSpec{a, b, n, delta_x(n, a, b, validity)};
}

std::string to_string(SumMethod m)
{
    switch (m) {
    case SumMethod::faulhaber_exact: return "faulhaber-exact";
    case SumMethod::euler_maclaurin: return "euler-maclaurin";
    case SumMethod::split_piecewise: return "split-piecewise";
    case SumMethod::oracle_extrapolation: return "oracle-extrapolation";
    }
    return "?";
}

std::string OmegaSumResult::integral_coeff_source() const
{
    if (integral_exact)
        return "exact";
    return "quadrature(" + format_double(quadrature_tolerance) + ")";
}

// ---------------------------------------------------------------------------
// Bernoulli and Faulhaber

namespace {

constexpr int kMaxBernoulli = 40;

Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace

const Rational& bernoulli(int n)
{
    static const std::array<Rational, kMaxBernoulli + 1> table = [] {
        std::array<Rational, kMaxBernoulli + 1> b;
        b[0] = 1;
        for (int m = 1; m <= kMaxBernoulli; ++m) {
            Rational acc(0);
            for (int k = 0; k < m; ++k)
                acc += Rational(binomial(static_cast<unsigned long>(m + 1), static_cast<unsigned long>(k))) * b[k];
            b[m] = -acc / (m + 1);
            b[m].canonicalize();
        }
        return b;
    }();
    if (n < 0 || n > kMaxBernoulli)
        throw PreconditionError("bernoulli index " + std::to_string(n) + " outside [0, 40]");
    return table[static_cast<std::size_t>(n)];
}

std::vector<Rational> faulhaber(int p)
{
    if (p < 0 || p >= kMaxBernoulli)
        throw PreconditionError("faulhaber power out of range");
    std::vector<Rational> c(static_cast<std::size_t>(p) + 2, Rational(0));
    for (int j = 0; j <= p; ++j) {
        Rational bj = j == 1 ? Rational(1, 2) : bernoulli(j);
        Rational term = Rational(binomial(static_cast<unsigned long>(p + 1), static_cast<unsigned long>(j))) * bj /
                        (p + 1);
        c[static_cast<std::size_t>(p + 1 - j)] += term;
    }
    for (auto& v : c)
        v.canonicalize();
    return c;
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

Scalar antiderivative_at(const std::vector<Rational>& poly, const Scalar& x)
{
    Scalar v(0);
    for (std::size_t i = poly.size(); i-- > 0;)
        v = (v + Scalar(Rational(poly[i] / static_cast<long>(i + 1)))) * x;
    return v;
}

QuadratureResult romberg(const Expr& g, const Scalar& lo, const Scalar& hi, double tol)
{
    const double a = lo.to_double();
    const double b = hi.to_double();
    std::vector<double> prev{0.5 * (b - a) * (eval_double(g, a) + eval_double(g, b))};
    double diff = 0.0;
    for (int k = 1; k <= kRombergMaxLevels; ++k) {
        const long intervals = 1L << k;
        const double h = (b - a) / static_cast<double>(intervals);
        double sum = 0.0;
        for (long i = 1; i < intervals; i += 2)
            sum += eval_double(g, a + static_cast<double>(i) * h);
        std::vector<double> row(static_cast<std::size_t>(k) + 1);
        row[0] = 0.5 * prev[0] + h * sum;
        double factor = 1.0;
        for (int j = 1; j <= k; ++j) {
            factor *= 4.0;
            row[j] = row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0);
        }
        diff = std::abs(row[k] - prev[k - 1]);
        if (k >= 5 && diff <= tol * std::max(1.0, std::abs(row[k])))
            return QuadratureResult{Scalar::from_double(row[k]), false, diff, k};
        prev = std::move(row);
    }
    throw QuadratureError("Romberg integration of '" + to_text(g) + "' did not converge after " +
                              std::to_string(kRombergMaxLevels) + " levels (last estimate " +
                              format_double(prev.back()) + ", spread " + format_double(diff) + ")",
                          prev.back(), diff);
}

QuadratureResult integrate_segment(const Expr& g, const Scalar& lo, const Scalar& hi, double tol)
{
    if (auto poly = to_polynomial(g)) {
        Scalar v = antiderivative_at(*poly, hi) - antiderivative_at(*poly, lo);
        return QuadratureResult{v, v.is_exact(), 0.0, 0};
    }
    return romberg(g, lo, hi, tol);
}

std::vector<Scalar> segment_bounds(const Scalar& a, const Scalar& b, const std::vector<Scalar>& interior)
{
    std::vector<Scalar> bounds{a};
    bounds.insert(bounds.end(), interior.begin(), interior.end());
    bounds.push_back(b);
    return bounds;
}

} // namespace

QuadratureResult quadrature_integral(const Expr& f, const Scalar& a, const Scalar& b, double tol,
                                     const std::vector<Scalar>& breakpoints)
{
    if (!(a < b))
        throw PreconditionError("quadrature needs a < b");
    SmoothnessReport report = smoothness_report(f, a, b, breakpoints);
    auto bounds = segment_bounds(a, b, report.breakpoints);
    QuadratureResult total{Scalar(0), true, 0.0, 0};
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        Expr g = resolve_on(f, bounds[i], bounds[i + 1]);
        QuadratureResult part = integrate_segment(g, bounds[i], bounds[i + 1], tol);
        total.value += part.value;
        total.exact = total.exact && part.exact;
        total.error_estimate += part.error_estimate;
        total.levels = std::max(total.levels, part.levels);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Omega sums

namespace {

OmegaSumResult faulhaber_sum(const std::vector<Rational>& poly, const Rational& a, const Rational& b,
                             const NSpec& n, int validity)
{
    const std::size_t d = poly.size();
    // c_j: coefficients of f(a + t).
    std::vector<Rational> shifted(d, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
        Rational a_pow(1); // a^(i-j), built from j = i downwards
        for (std::size_t j = i + 1; j-- > 0;) {
            shifted[j] += poly[i] * Rational(binomial(i, j)) * a_pow;
            a_pow *= a;
        }
    }
    const Rational width = b - a;
    // sum = sum_m g_m N^{-m}
    std::vector<Rational> g(d == 0 ? 1 : d, Rational(0));
    Rational width_pow = width;
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Rational> s = faulhaber(static_cast<int>(j));
        for (std::size_t m = 0; m <= j; ++m)
            g[m] += shifted[j] * width_pow * s[j + 1 - m];
        width_pow *= width;
    }
    const Hyperreal u = n.reciprocal(validity);
    Hyperreal value = Hyperreal::constant(Scalar(g.back()), validity);
    for (std::size_t m = g.size() - 1; m-- > 0;)
        value = value * u + Hyperreal::constant(Scalar(g[m]), validity);
    OmegaSumResult result;
    result.value = value.truncated(validity);
    result.method = SumMethod::faulhaber_exact;
    result.integral_exact = true;
    return result;
}

OmegaSumResult euler_maclaurin(const Expr& g, const Scalar& a, const Scalar& b, const NSpec& n,
                               const SumOptions& options)
{
    const int deg = n.degree();
    const int V = options.validity;
    int p = 1;
    while ((2 * p + 2) * deg < V && p < 8)
        ++p;
    const int validity = std::min(V, (2 * p + 2) * deg);

    QuadratureResult integral = integrate_segment(g, a, b, options.quadrature_tolerance);
    const auto ta = taylor_coefficients(g, a, 2 * p - 1);
    const auto tb = taylor_coefficients(g, b, 2 * p - 1);
    const Hyperreal h = delta_x(n, a, b, V);

    Hyperreal value = Hyperreal::constant(integral.value, V);
    value += (Scalar(Rational(1, 2)) * (tb[0] - ta[0])) * h;
    const Hyperreal h2 = h * h;
    Hyperreal hpow = h2;
    Rational factorial(1); // (2j)!
    for (int j = 1; j <= p; ++j) {
        factorial *= (2 * j - 1) * (2 * j);
        const std::size_t m = static_cast<std::size_t>(2 * j - 1);
        Rational m_fact(1);
        for (std::size_t i = 2; i <= m; ++i)
            m_fact *= static_cast<long>(i);
        // f^(m)(x) = m! * taylor coefficient m
        const Scalar jump = Scalar(m_fact) * (tb[m] - ta[m]);
        value += (Scalar(Rational(bernoulli(2 * j) / factorial)) * jump) * hpow;
        if (j < p)
            hpow = hpow * h2;
    }

    OmegaSumResult result;
    result.value = value.truncated(validity);
    result.method = SumMethod::euler_maclaurin;
    result.integral_exact = integral.exact;
    result.quadrature_tolerance = integral.exact ? 0.0 : options.quadrature_tolerance;
    result.notes.push_back("Euler-Maclaurin depth p = " + std::to_string(p) + ", remainder order " +
                           std::to_string((2 * p + 2) * deg));
    return result;
}

OmegaSumResult smooth_sum(const Expr& g, const Scalar& a, const Scalar& b, const NSpec& n,
                          const SumOptions& options)
{
    if (a.is_exact() && b.is_exact())
        if (auto poly = to_polynomial(g))
            return faulhaber_sum(*poly, a.rational(), b.rational(), n, options.validity);
    return euler_maclaurin(g, a, b, n, options);
}

/// h * (f(x) - g(x)) where g is the smooth branch used up to x.
void add_jump(OmegaSumResult& result, const Expr& f, const Expr& g, const Scalar& x, const Hyperreal& h)
{
    Scalar fx = eval_real(f, x);
    Scalar gx = eval_real(g, x);
    if (fx == gx)
        return;
    result.value += (fx - gx) * h;
    result.notes.push_back("right-endpoint value at " + x.to_string() + " differs from the branch limit");
}

/// Denominator q of (p - a)/(b - a), if the ratio is provably rational.
std::optional<Integer> alignment_denominator(const Scalar& p, const Scalar& a, const Scalar& b)
{
    if (!p.is_exact() || !a.is_exact() || !b.is_exact())
        return std::nullopt;
    Rational r = (p.rational() - a.rational()) / (b.rational() - a.rational());
    r.canonicalize();
    return r.get_den();
}

} // namespace

OmegaSumResult omega_sum(const Expr& f, const Scalar& a, const Scalar& b, const NSpec& n,
                         const SumOptions& options)
{
    if (!(a < b))
        throw PreconditionError("omega sum needs a < b");
    SmoothnessReport report = smoothness_report(f, a, b, options.breakpoints);
    if (!report.undeclared_abs.empty())
        throw PreconditionError(report.undeclared_abs.front());
    if (!report.domain_violations.empty()) {
        const auto& v = report.domain_violations.front();
        throw DomainError("f is undefined at x = " + v.point.to_string() + ": " + v.message);
    }
    const int V = options.validity;
    const Hyperreal h = delta_x(n, a, b, V);

    if (report.breakpoints.empty()) {
        Expr g = resolve_on(f, a, b);
        OmegaSumResult result = smooth_sum(g, a, b, n, options);
        add_jump(result, f, g, b, h);
        return result;
    }

    auto bounds = segment_bounds(a, b, report.breakpoints);
    bool aligned = true;
    for (const Scalar& p : report.breakpoints) {
        auto q = alignment_denominator(p, a, b);
        if (!q || !n.divisible_by(*q))
            aligned = false;
    }

    OmegaSumResult result;
    result.method = SumMethod::split_piecewise;
    result.integral_exact = true;
    if (aligned) {
        Hyperreal value = Hyperreal::constant(Scalar(0), V);
        for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
            const Scalar& lo = bounds[i];
            const Scalar& hi = bounds[i + 1];
            Expr g = resolve_on(f, lo, hi);
            NSpec seg_n = n.scaled((hi.rational() - lo.rational()) / (b.rational() - a.rational()));
            OmegaSumResult part = smooth_sum(g, lo, hi, seg_n, options);
            add_jump(part, f, g, hi, h);
            value += part.value;
            result.integral_exact = result.integral_exact && part.integral_exact;
            if (!part.integral_exact)
                result.quadrature_tolerance = options.quadrature_tolerance;
            result.notes.push_back("segment [" + lo.to_string() + ", " + hi.to_string() + "] with " +
                                   seg_n.to_text() + " subintervals");
        }
        result.value = value;
        return result;
    }

    Scalar integral(0);
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        Expr g = resolve_on(f, bounds[i], bounds[i + 1]);
        QuadratureResult part = integrate_segment(g, bounds[i], bounds[i + 1], options.quadrature_tolerance);
        integral += part.value;
        result.integral_exact = result.integral_exact && part.exact;
    }
    if (!result.integral_exact)
        result.quadrature_tolerance = options.quadrature_tolerance;
    result.value = Hyperreal::constant(integral, 1);
    result.notes.push_back("breakpoints not aligned with " + n.to_text() +
                           "; the w^1 coefficient depends on the cell position, only the standard part is kept");
    return result;
}

Scalar finite_sum_oracle(const Expr& f, const Scalar& a, const Scalar& b, long N, OracleMode mode)
{
    if (N < 1)
        throw PreconditionError("oracle needs N >= 1");
    long k = 0;
    try {
        if (mode == OracleMode::exact) {
            if (!a.is_exact() || !b.is_exact())
                throw PreconditionError("exact oracle needs rational endpoints");
            const Rational width = b.rational() - a.rational();
            Rational total(0);
            for (k = 1; k <= N; ++k) {
                Rational x = a.rational() + width * Rational(k, N);
                Scalar v = eval_real(f, Scalar(x));
                if (!v.is_exact())
                    throw PreconditionError("exact oracle needs a rational-closed f; f(" + x.get_str() +
                                            ") is not rational");
                total += v.rational();
            }
            return Scalar(Rational(total * width / N));
        }
        const double lo = a.to_double();
        const double width = b.to_double() - lo;
        // Neumaier summation.
        double sum = 0.0, comp = 0.0;
        for (k = 1; k <= N; ++k) {
            double v = eval_double(f, lo + width * (static_cast<double>(k) / static_cast<double>(N)));
            double t = sum + v;
            comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
            sum = t;
        }
        return Scalar::from_double((sum + comp) * width / static_cast<double>(N));
    } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " (partition point k = " + std::to_string(k) + ")");
    }
}

} // namespace omega
