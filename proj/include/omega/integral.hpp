#pragma once

#include "omega/omegasum.hpp"
#include "omega/quadfield.hpp"
#include "omega/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace omega {

enum class VerdictKind { integrable, positive_unlimited, negative_unlimited, not_integrable, inconclusive };
std::string to_string(VerdictKind k);

enum class Confidence { exact, numeric, heuristic };
std::string to_string(Confidence c);

struct Evidence {
    /// N-spec text, or the standard N of a probe sample.
    std::string n;
    /// Standard part of the omega sum, or the finite sum of a probe sample.
    std::string st;
};

struct IntegralVerdict {
    VerdictKind kind = VerdictKind::inconclusive;
    /// Present iff kind == integrable.
    std::optional<Scalar> value;
    std::vector<Evidence> evidence;
    double tolerance = 0.0;
    Confidence confidence = Confidence::heuristic;
    std::vector<std::string> notes;

    bool integrable() const { return kind == VerdictKind::integrable; }
};

inline constexpr double kDefaultTolerance = 1e-8;

struct IntegrateOptions {
    std::vector<NSpec> family = default_family();
    SumOptions sum;
    double tolerance = kDefaultTolerance;
};

/// Verdict for the omega integral of f over [a, b].  Never throws for
/// evaluation problems; those become verdicts with notes.
IntegralVerdict integrate(const Expr& f, const Scalar& a, const Scalar& b, const IntegrateOptions& options = {});

enum class GrowthModel { bounded, log, power, unknown };
std::string to_string(GrowthModel m);

struct ProbeSample {
    long n = 0;
    std::optional<double> sum;
    std::string error;
};

struct GrowthReport {
    std::vector<ProbeSample> samples;
    bool monotone = false;
    /// Sign of the last finite sum.
    int sign = 0;
    GrowthModel model = GrowthModel::unknown;
    /// Least-squares fit of S against ln N.
    double log_slope = 0.0;
    double log_r2 = 0.0;
    /// S ~ N^p for the power model.
    double power_exponent = 0.0;
    /// Aitken-extrapolated limit for the bounded model.
    std::optional<double> limit;
};

inline const std::vector<long> kProbeSizes = {1000, 10000, 100000, 1000000};

GrowthReport divergence_probe(const Expr& f, const Scalar& a, const Scalar& b,
                              const std::vector<long>& sizes = kProbeSizes);

struct AdditivityReport : CheckReport {
    IntegralVerdict left;
    IntegralVerdict right;
    IntegralVerdict whole;
    std::optional<Scalar> residual;
};

AdditivityReport additivity_check(const Expr& f, const Scalar& a, const Scalar& b, const Scalar& c,
                                  const IntegrateOptions& options = {});

struct SplitSumReport {
    long n = 0;
    long b_index = 0;
    bool exact = false;
    Scalar left_discrepancy;
    Scalar right_discrepancy;
};

SplitSumReport split_sum_experiment(const Expr& f, const Scalar& a, const Scalar& b, const Scalar& c, long n);

/// Omega integral of the indicator of the rationals over [a, b].
IntegralVerdict dirichlet_integrate(const QuadField& a, const QuadField& b);

struct DirichletReport : CheckReport {
    QuadField lo;
    QuadField mid;
    QuadField hi;
    IntegralVerdict left;
    IntegralVerdict right;
    IntegralVerdict whole;
};

/// Sorts the three points and compares [lo, mid] + [mid, hi] with [lo, hi].
/// Non-additivity is reported as a failing claim marked expected_violation.
DirichletReport dirichlet_additivity(const QuadField& a, const QuadField& b, const QuadField& c);

inline constexpr int kBoundsGridPoints = 1025;

struct BoundsReport : CheckReport {
    IntegralVerdict verdict;
    Scalar m;
    Scalar big_m;
    /// Change of the grid extrema between 513 and 1025 points.
    double margin = 0.0;
};

BoundsReport bounds_check(const Expr& f, const Scalar& a, const Scalar& b, const IntegrateOptions& options = {});

} // namespace omega
