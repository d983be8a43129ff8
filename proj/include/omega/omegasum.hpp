#pragma once

#include "omega/expr.hpp"
#include "omega/hyperreal.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace omega {

/// A positive unlimited hyperinteger written as an integer polynomial in W.
class NSpec
{
public:
    /// coefficients[i] multiplies W^i.  Throws PreconditionError unless the
    /// degree is >= 1 and the leading coefficient is positive.
    explicit NSpec(std::vector<Integer> coefficients);

    static NSpec omega() { return NSpec({Integer(0), Integer(1)}); }

    const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    /// `W`, `2*W + 1`, `W^2 - W`.
    std::string to_text() const;

    /// Exact polynomial in W as a series trusted to `valid_order`.
    Hyperreal to_hyperreal(const Rational& valid_order) const;
    /// 1/n, trusted to `valid_order`.
    Hyperreal reciprocal(const Rational& valid_order) const;
    /// Value at the standard integer W := w_value.
    Integer at(const Integer& w_value) const;

    /// Every coefficient divisible by q.
    bool divisible_by(const Integer& q) const;
    /// n * r, which must have integer coefficients.
    NSpec scaled(const Rational& r) const;

    friend NSpec operator*(const NSpec& x, const NSpec& y);
    friend bool operator==(const NSpec& x, const NSpec& y) { return x.coeffs_ == y.coeffs_; }

private:
    std::vector<Integer> coeffs_;
};

/// Accepts integer-coefficient polynomials in `W`.  Throws ParseError for
/// syntax or non-integer coefficients, and for constants ("not unlimited")
/// or a nonpositive leading coefficient ("not positive").
NSpec nspec_parse(std::string_view text);

/// Comma-separated N-spec list.
std::vector<NSpec> nspec_family_parse(std::string_view text);

/// {W, W+1, 2*W, 3*W, W^2}
std::vector<NSpec> default_family();

/// (b - a) / n.
Hyperreal delta_x(const NSpec& n, const Scalar& a, const Scalar& b, int validity = kDefaultValidity);

struct PartitionSpec {
    Scalar a;
    Scalar b;
    NSpec n;
    Hyperreal delta_x;

    /// x_k = a + k * delta_x for a hyperinteger k given as a hyperreal.
    Hyperreal point(const Hyperreal& k) const;
};

PartitionSpec make_partition(const Scalar& a, const Scalar& b, const NSpec& n, int validity = kDefaultValidity);

enum class SumMethod { faulhaber_exact, euler_maclaurin, split_piecewise, oracle_extrapolation };
std::string to_string(SumMethod m);

struct OmegaSumResult {
    Hyperreal value;
    SumMethod method = SumMethod::faulhaber_exact;
    /// Whether the w^0 coefficient came from exact integration.
    bool integral_exact = true;
    double quadrature_tolerance = 0.0;
    std::vector<std::string> notes;

    Rational validity() const { return value.valid_order(); }
    /// "exact" or "quadrature(<tol>)".
    std::string integral_coeff_source() const;
};

inline constexpr double kDefaultQuadratureTolerance = 1e-10;

struct SumOptions {
    int validity = kDefaultValidity;
    double quadrature_tolerance = kDefaultQuadratureTolerance;
    /// User-declared zeros of abs() arguments.
    std::vector<Scalar> breakpoints;
};

/// Sum_{k=1}^{n} f(a + k dx) dx as a hyperreal.  Throws DomainError when f is
/// undefined somewhere on [a, b] (the caller probes divergence instead) and
/// PreconditionError for undeclared abs() sign changes.
OmegaSumResult omega_sum(const Expr& f, const Scalar& a, const Scalar& b, const NSpec& n,
                         const SumOptions& options = {});

enum class OracleMode { exact, floating };

/// Brute-force right sum at a standard N.  Exact mode needs rational a, b and
/// a rational-closed f; domain errors are rethrown naming the failing k.
Scalar finite_sum_oracle(const Expr& f, const Scalar& a, const Scalar& b, long N, OracleMode mode);

struct QuadratureResult {
    Scalar value;
    bool exact = false;
    double error_estimate = 0.0;
    int levels = 0;
};

inline constexpr int kRombergMaxLevels = 20;

/// Romberg integration per smooth segment; exact antiderivative for
/// polynomials.  Throws QuadratureError after kRombergMaxLevels levels.
QuadratureResult quadrature_integral(const Expr& f, const Scalar& a, const Scalar& b,
                                     double tol = kDefaultQuadratureTolerance,
                                     const std::vector<Scalar>& breakpoints = {});

/// Exact Bernoulli number B_n (B_1 = -1/2) for 0 <= n <= 40.
const Rational& bernoulli(int n);

/// Coefficients c_i (index = power of N) of sum_{k=1}^{N} k^p.
std::vector<Rational> faulhaber(int p);

} // namespace omega
