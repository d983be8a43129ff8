#include "omega/integral.hpp"

#include "omega/error.hpp"

#include <algorithm>
#include <cmath>

namespace omega {

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    case CheckStatus::not_applicable:
        return "not-applicable";
    }
    return "fail";
}

std::string to_string(VerdictKind k)
{
    switch (k) {
    case VerdictKind::integrable:
        return "integrable";
    case VerdictKind::positive_unlimited:
        return "positive-unlimited";
    case VerdictKind::negative_unlimited:
        return "negative-unlimited";
    case VerdictKind::not_integrable:
        return "not-integrable";
    case VerdictKind::inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

std::string to_string(Confidence c)
{
    switch (c) {
    case Confidence::exact:
        return "exact";
    case Confidence::numeric:
        return "numeric";
    case Confidence::heuristic:
        return "heuristic";
    }
    return "heuristic";
}

std::string to_string(GrowthModel m)
{
    switch (m) {
    case GrowthModel::bounded:
        return "bounded";
    case GrowthModel::log:
        return "log";
    case GrowthModel::power:
        return "power";
    case GrowthModel::unknown:
        return "unknown";
    }
    return "unknown";
}

namespace {

class Neumaier
{
public:
    void add(double v)
    {
        double t = sum_ + v;
        comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

IntegralVerdict verdict_from_probe(const Expr& f, const Scalar& a, const Scalar& b, const IntegrateOptions& options,
                                   IntegralVerdict verdict)
{
    GrowthReport probe = divergence_probe(f, a, b);
    verdict.confidence = Confidence::heuristic;
    verdict.tolerance = options.tolerance;
    for (const ProbeSample& s : probe.samples) {
        if (s.sum)
            verdict.evidence.push_back({std::to_string(s.n), format_double(*s.sum)});
        else
            verdict.notes.push_back("N = " + std::to_string(s.n) + ": " + s.error);
    }
    std::string growth = "growth model " + to_string(probe.model) +
                         ", log fit slope " + format_double(probe.log_slope) + " R^2 " + format_double(probe.log_r2);
    if (probe.model == GrowthModel::power)
        growth += ", exponent " + format_double(probe.power_exponent);
    verdict.notes.push_back(growth);

    if (probe.model == GrowthModel::bounded && probe.limit) {
        verdict.kind = VerdictKind::integrable;
        verdict.value = Scalar::from_double(*probe.limit);
        verdict.notes.push_back("value from extrapolated finite sums (method " +
                                to_string(SumMethod::oracle_extrapolation) + ")");
    } else if ((probe.model == GrowthModel::log || probe.model == GrowthModel::power) && probe.monotone &&
               probe.sign != 0) {
        verdict.kind = probe.sign > 0 ? VerdictKind::positive_unlimited : VerdictKind::negative_unlimited;
    } else {
        verdict.kind = VerdictKind::inconclusive;
    }
    return verdict;
}

} // namespace

IntegralVerdict integrate(const Expr& f, const Scalar& a, const Scalar& b, const IntegrateOptions& options)
{
    if (!(a < b))
        throw PreconditionError("integrate needs a < b");
    if (options.family.empty())
        throw PreconditionError("empty N-spec family");

    IntegralVerdict verdict;
    verdict.tolerance = options.tolerance;
    std::vector<Scalar> parts;
    bool all_exact = true;
    for (const NSpec& n : options.family) {
        std::string failure;
        try {
            OmegaSumResult r = omega_sum(f, a, b, n, options.sum);
            HClass cls = classify(r.value);
            if (cls == HClass::unlimited || cls == HClass::indeterminate) {
                failure = "omega sum is " + to_string(cls);
            } else {
                Scalar st = standard_part(r.value);
                all_exact = all_exact && st.is_exact() && r.integral_exact;
                verdict.evidence.push_back({n.to_text(), st.to_string()});
                parts.push_back(st);
            }
        } catch (const DomainError& e) {
            failure = e.what();
        } catch (const QuadratureError& e) {
            failure = e.what();
        } catch (const PreconditionError& e) {
            failure = e.what();
        }
        if (!failure.empty()) {
            verdict.notes.push_back(n.to_text() + ": " + failure);
            verdict.evidence.clear();
            return verdict_from_probe(f, a, b, options, std::move(verdict));
        }
    }

    if (all_exact) {
        verdict.confidence = Confidence::exact;
        bool agree_all = std::all_of(parts.begin(), parts.end(), [&](const Scalar& s) { return s == parts.front(); });
        if (agree_all) {
            verdict.kind = VerdictKind::integrable;
            verdict.value = parts.front();
        } else {
            verdict.kind = VerdictKind::not_integrable;
            verdict.notes.push_back("exact standard parts disagree across the family");
        }
        return verdict;
    }

    verdict.confidence = Confidence::numeric;
    double lo = parts.front().to_double();
    double hi = lo;
    double total = 0.0;
    for (const Scalar& s : parts) {
        lo = std::min(lo, s.to_double());
        hi = std::max(hi, s.to_double());
        total += s.to_double();
    }
    if (hi - lo <= options.tolerance) {
        verdict.kind = VerdictKind::integrable;
        verdict.value = hi == lo ? parts.front() : Scalar::from_double(total / static_cast<double>(parts.size()));
    } else {
        verdict.kind = VerdictKind::not_integrable;
        verdict.notes.push_back("standard parts spread " + format_double(hi - lo) + " exceeds tolerance");
    }
    return verdict;
}

GrowthReport divergence_probe(const Expr& f, const Scalar& a, const Scalar& b, const std::vector<long>& sizes)
{
    GrowthReport report;
    std::vector<double> ns;
    std::vector<double> sums;
    for (long n : sizes) {
        ProbeSample sample;
        sample.n = n;
        try {
            sample.sum = finite_sum_oracle(f, a, b, n, OracleMode::floating).to_double();
            ns.push_back(static_cast<double>(n));
            sums.push_back(*sample.sum);
        } catch (const DomainError& e) {
            sample.error = e.what();
        }
        report.samples.push_back(std::move(sample));
    }
    if (sums.size() < 3 || sums.size() != sizes.size())
        return report;

    const std::size_t m = sums.size();
    report.sign = sums.back() > 0 ? 1 : (sums.back() < 0 ? -1 : 0);

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += std::log(ns[i]);
        my += sums[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double dx = std::log(ns[i]) - mx;
        double dy = sums[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    report.log_slope = sxx > 0 ? sxy / sxx : 0.0;
    report.log_r2 = (sxx > 0 && syy > 0) ? (sxy * sxy) / (sxx * syy) : 0.0;

    std::vector<double> d;
    for (std::size_t i = 1; i < m; ++i)
        d.push_back(sums[i] - sums[i - 1]);
    report.monotone = std::all_of(d.begin(), d.end(), [](double v) { return v > 0; }) ||
                      std::all_of(d.begin(), d.end(), [](double v) { return v < 0; });

    double scale = std::max(1.0, std::abs(sums.back()));
    double dmax = 0.0;
    for (double v : d)
        dmax = std::max(dmax, std::abs(v));
    if (dmax <= 1e-12 * scale) {
        report.model = GrowthModel::bounded;
        report.limit = sums.back();
        return report;
    }

    std::vector<double> ratios;
    for (std::size_t i = 1; i < d.size(); ++i)
        ratios.push_back(d[i - 1] != 0.0 ? d[i] / d[i - 1] : INFINITY);
    auto all = [&](auto pred) { return std::all_of(ratios.begin(), ratios.end(), pred); };

    if (all([](double r) { return std::abs(r) <= 0.7; })) {
        report.model = GrowthModel::bounded;
        double d1 = d[d.size() - 2];
        double d2 = d.back();
        double denom = d2 - d1;
        report.limit = denom != 0.0 ? sums.back() - d2 * d2 / denom : sums.back();
    } else if (report.monotone && all([](double r) { return r > 0.7 && r < 1.5; }) && report.log_r2 > 0.999) {
        report.model = GrowthModel::log;
    } else if (report.monotone && all([](double r) { return r >= 1.5; })) {
        report.model = GrowthModel::power;
        double mean_log = 0.0;
        for (std::size_t i = 1; i < m; ++i)
            mean_log += std::log10(ns[i] / ns[i - 1]);
        double mean_ratio = 0.0;
        for (double r : ratios)
            mean_ratio += std::log10(r);
        report.power_exponent = (mean_ratio / static_cast<double>(ratios.size())) /
                                (mean_log / static_cast<double>(m - 1));
    }
    return report;
}

AdditivityReport additivity_check(const Expr& f, const Scalar& a, const Scalar& b, const Scalar& c,
                                  const IntegrateOptions& options)
{
    if (!(a < b) || !(b < c))
        throw PreconditionError("additivity needs a < b < c");
    AdditivityReport report;
    report.claim = "int_a^b f + int_b^c f = int_a^c f";
    report.left = integrate(f, a, b, options);
    report.right = integrate(f, b, c, options);
    report.whole = integrate(f, a, c, options);
    report.witness("a", a.to_string());
    report.witness("b", b.to_string());
    report.witness("c", c.to_string());

    const std::pair<const char*, const IntegralVerdict*> parts[] = {
        {"left", &report.left}, {"right", &report.right}, {"whole", &report.whole}};
    for (const auto& [name, v] : parts) {
        report.witness(name, v->value ? v->value->to_string() : to_string(v->kind));
        if (!v->integrable()) {
            report.status = CheckStatus::not_applicable;
            report.notes.push_back(std::string(name) + " verdict is " + to_string(v->kind));
        }
    }
    if (report.status == CheckStatus::not_applicable)
        return report;

    Scalar residual = *report.left.value + *report.right.value - *report.whole.value;
    report.residual = residual;
    report.witness("residual", residual.to_string());
    bool exact = report.left.confidence == Confidence::exact && report.right.confidence == Confidence::exact &&
                 report.whole.confidence == Confidence::exact && residual.is_exact();
    bool ok = exact ? residual.is_zero() : std::abs(residual.to_double()) <= options.tolerance;
    report.status = ok ? CheckStatus::pass : CheckStatus::fail;
    report.notes.push_back(exact ? "exact comparison" : "tolerance " + format_double(options.tolerance));
    return report;
}

SplitSumReport split_sum_experiment(const Expr& f, const Scalar& a, const Scalar& b, const Scalar& c, long n)
{
    if (!(a < b) || !(b < c))
        throw PreconditionError("split sum needs a < b < c");
    if (n < 4)
        throw PreconditionError("split sum needs N >= 4");
    SplitSumReport report;
    report.n = n;

    const bool rational_ends = a.is_exact() && b.is_exact() && c.is_exact();
    if (rational_ends) {
        Rational q = Rational(n) * (b.rational() - a.rational()) / (c.rational() - a.rational());
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        report.b_index = fl.get_si();
    } else {
        report.b_index = static_cast<long>(
            std::floor(static_cast<double>(n) * (b - a).to_double() / (c - a).to_double()));
    }
    const long big_b = report.b_index;
    if (big_b < 1 || big_b >= n)
        throw PreconditionError("N too small to place b strictly inside the partition");

    bool exact = rational_ends && to_polynomial(simplify(f)).has_value();
    if (exact) {
        const Rational& ar = a.rational();
        const Rational& br = b.rational();
        const Rational dx = (c.rational() - ar) / Rational(n);
        const Rational dy = (br - ar) / Rational(big_b);
        const Rational dz = (c.rational() - br) / Rational(n - big_b);
        auto value = [&](const Rational& x) {
            Scalar v = eval_real(f, Scalar(x));
            return v.is_exact() ? std::optional<Rational>(v.rational()) : std::nullopt;
        };
        Rational left(0), right(0);
        for (long k = 1; k <= n && exact; ++k) {
            auto fx = value(ar + Rational(k) * dx);
            if (!fx) {
                exact = false;
                break;
            }
            if (k <= big_b) {
                auto fy = value(ar + Rational(k) * dy);
                if (!fy) {
                    exact = false;
                    break;
                }
                left += *fy * dy - *fx * dx;
            } else {
                auto fz = value(br + Rational(k - big_b) * dz);
                if (!fz) {
                    exact = false;
                    break;
                }
                right += *fz * dz - *fx * dx;
            }
        }
        if (exact) {
            report.exact = true;
            report.left_discrepancy = Scalar(Rational(abs(left)));
            report.right_discrepancy = Scalar(Rational(abs(right)));
            return report;
        }
    }

    const double ad = a.to_double();
    const double bd = b.to_double();
    const double cd = c.to_double();
    const double dx = (cd - ad) / static_cast<double>(n);
    const double dy = (bd - ad) / static_cast<double>(big_b);
    const double dz = (cd - bd) / static_cast<double>(n - big_b);
    Neumaier left, right;
    for (long k = 1; k <= big_b; ++k)
        left.add(eval_double(f, ad + static_cast<double>(k) * dy) * dy -
                 eval_double(f, ad + static_cast<double>(k) * dx) * dx);
    for (long k = big_b + 1; k <= n; ++k)
        right.add(eval_double(f, bd + static_cast<double>(k - big_b) * dz) * dz -
                  eval_double(f, ad + static_cast<double>(k) * dx) * dx);
    report.exact = false;
    report.left_discrepancy = Scalar::from_double(std::abs(left.value()));
    report.right_discrepancy = Scalar::from_double(std::abs(right.value()));
    return report;
}

IntegralVerdict dirichlet_integrate(const QuadField& a, const QuadField& b)
{
    if (!(a < b))
        throw PreconditionError("dirichlet integral needs a < b");
    const QuadField width = b - a;
    IntegralVerdict verdict;
    verdict.confidence = Confidence::exact;
    verdict.kind = VerdictKind::integrable;
    if (a.is_rational() && width.is_rational()) {
        verdict.value = Scalar(width.rational_part());
        verdict.notes.push_back("every partition point a + k(b-a)/N is rational");
    } else if (width.is_rational() || a.is_rational()) {
        verdict.value = Scalar(0);
        verdict.notes.push_back("every partition point a + k(b-a)/N with 1 <= k <= N is irrational");
    } else {
        verdict.value = Scalar(0);
        Rational r = -a.radical_part() / width.radical_part();
        if (sgn(r) > 0 && r <= 1)
            verdict.notes.push_back("only k/N = " + r.get_str() +
                                    " can give a rational partition point; it contributes at most dx");
        else
            verdict.notes.push_back("every partition point a + k(b-a)/N with 1 <= k <= N is irrational");
    }
    for (const NSpec& n : default_family())
        verdict.evidence.push_back({n.to_text(), verdict.value->to_string()});
    return verdict;
}

DirichletReport dirichlet_additivity(const QuadField& a, const QuadField& b, const QuadField& c)
{
    std::vector<QuadField> pts = {a, b, c};
    std::sort(pts.begin(), pts.end());
    if (pts[0] == pts[1] || pts[1] == pts[2])
        throw PreconditionError("dirichlet additivity needs three distinct points");
    DirichletReport report;
    report.lo = pts[0];
    report.mid = pts[1];
    report.hi = pts[2];
    report.claim = "int_lo^mid 1_Q + int_mid^hi 1_Q = int_lo^hi 1_Q";
    report.left = dirichlet_integrate(report.lo, report.mid);
    report.right = dirichlet_integrate(report.mid, report.hi);
    report.whole = dirichlet_integrate(report.lo, report.hi);
    const Rational l = report.left.value->rational();
    const Rational r = report.right.value->rational();
    const Rational w = report.whole.value->rational();
    report.witness("lo", report.lo.to_text());
    report.witness("mid", report.mid.to_text());
    report.witness("hi", report.hi.to_text());
    report.witness("left", l.get_str());
    report.witness("right", r.get_str());
    report.witness("whole", w.get_str());
    if (l + r == w) {
        report.status = CheckStatus::pass;
        report.witness("comparison", l.get_str() + " + " + r.get_str() + " = " + w.get_str());
    } else {
        report.status = CheckStatus::fail;
        report.expected_violation = true;
        report.witness("comparison", l.get_str() + " + " + r.get_str() + " != " + w.get_str());
        report.notes.push_back("the omega integral is not additive here; this is the expected finding");
    }
    return report;
}

BoundsReport bounds_check(const Expr& f, const Scalar& a, const Scalar& b, const IntegrateOptions& options)
{
    BoundsReport report;
    report.claim = "m(b-a) <= int_a^b f <= M(b-a)";
    report.verdict = integrate(f, a, b, options);
    if (!report.verdict.integrable()) {
        report.status = CheckStatus::not_applicable;
        report.notes.push_back("verdict is " + to_string(report.verdict.kind));
        return report;
    }
    const Scalar width = b - a;
    const int last = kBoundsGridPoints - 1;
    std::optional<Scalar> m, big_m, coarse_m, coarse_big_m;
    for (int i = 0; i <= last; ++i) {
        Scalar x = i == last ? b : a + width * Scalar(Rational(i, last));
        Scalar v = eval_real(f, x);
        if (!m || v < *m)
            m = v;
        if (!big_m || v > *big_m)
            big_m = v;
        if (i % 2 == 0) {
            if (!coarse_m || v < *coarse_m)
                coarse_m = v;
            if (!coarse_big_m || v > *coarse_big_m)
                coarse_big_m = v;
        }
    }
    report.m = *m;
    report.big_m = *big_m;
    report.margin = std::max((*coarse_m - *m).to_double(), (*big_m - *coarse_big_m).to_double());

    const Scalar& value = *report.verdict.value;
    const Scalar lower = report.m * width;
    const Scalar upper = report.big_m * width;
    bool all_exact =
        value.is_exact() && lower.is_exact() && upper.is_exact() && report.verdict.confidence == Confidence::exact;
    bool ok = false;
    if (all_exact && report.margin == 0.0) {
        ok = lower <= value && value <= upper;
    } else {
        double slack = report.margin * width.to_double() + (all_exact ? 0.0 : options.tolerance);
        ok = lower.to_double() - slack <= value.to_double() && value.to_double() <= upper.to_double() + slack;
        if (report.margin > 0.0)
            report.notes.push_back("grid refinement moved the extrema by " + format_double(report.margin));
    }
    report.status = ok ? CheckStatus::pass : CheckStatus::fail;
    report.witness("m", report.m.to_string());
    report.witness("M", report.big_m.to_string());
    report.witness("lower", lower.to_string());
    report.witness("value", value.to_string());
    report.witness("upper", upper.to_string());
    return report;
}

} // namespace omega
