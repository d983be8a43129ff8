#pragma once

#include "omega/scalar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace omega {

inline constexpr int kDefaultValidity = 8;
inline constexpr std::size_t kMaxTerms = 64;
/// Per-coefficient tolerance for equality checks on floating values.
inline constexpr double kCoefficientTolerance = 1e-10;

enum class CoeffMode { exact, floating };

enum class HClass { zero, infinitesimal, appreciable, unlimited, indeterminate };

/// Outcome of comparing two truncated series.  `equal_within_validity` means
/// the difference vanishes modulo an infinitesimal order; `indeterminate`
/// means truncation hides even the standard part of the difference.
enum class Ordering { less, equal_within_validity, greater, indeterminate };

/// Truncated generalized Laurent series in the infinitesimal w (with W = 1/w).
///
/// A value  sum c_e w^e  (mod w^V)  stores only exponents e < V and only
/// nonzero coefficients.  Exponents are rationals; negative exponents are
/// unlimited parts.  The whole value is exact only when every coefficient
/// that went into it was exact.
class Hyperreal
{
public:
    using TermMap = std::map<Rational, Scalar>;

    /// The exact zero, trusted to order kDefaultValidity.
    Hyperreal() : valid_order_(kDefaultValidity) {}

    /// Exponents must be distinct.  Zero coefficients and exponents >= valid_order are dropped.
    static Hyperreal make(const std::vector<std::pair<Rational, Scalar>>& terms,
                          Rational valid_order = kDefaultValidity);
    static Hyperreal constant(const Scalar& c, Rational valid_order = kDefaultValidity);
    static Hyperreal monomial(const Scalar& c, const Rational& exponent,
                              Rational valid_order = kDefaultValidity);
    /// w
    static Hyperreal infinitesimal(Rational valid_order = kDefaultValidity);
    /// W = 1/w
    static Hyperreal unlimited(Rational valid_order = kDefaultValidity);

    const TermMap& terms() const noexcept { return terms_; }
    const Rational& valid_order() const noexcept { return valid_order_; }
    CoeffMode mode() const noexcept { return exact_ ? CoeffMode::exact : CoeffMode::floating; }
    bool is_exact() const noexcept { return exact_; }
    bool empty() const noexcept { return terms_.empty(); }

    /// Minimum stored exponent, if any term is stored.
    std::optional<Rational> leading_exponent() const;
    /// Leading exponent, or the valid order when nothing is stored: the first
    /// order at which the value can be nonzero.
    Rational order() const;
    Scalar coefficient(const Rational& exponent) const;

    /// Lower the validity to min(valid_order, v).
    Hyperreal truncated(const Rational& v) const;

    /// Substitute w := value.  Exact when every coefficient and value are exact
    /// and every exponent is an integer.
    Scalar substitute(const Scalar& w) const;

    Hyperreal operator-() const;
    Hyperreal& operator+=(const Hyperreal& o) { return *this = *this + o; }
    Hyperreal& operator-=(const Hyperreal& o) { return *this = *this - o; }
    Hyperreal& operator*=(const Hyperreal& o) { return *this = *this * o; }

    friend Hyperreal operator+(const Hyperreal& x, const Hyperreal& y);
    friend Hyperreal operator-(const Hyperreal& x, const Hyperreal& y);
    friend Hyperreal operator*(const Hyperreal& x, const Hyperreal& y);
    friend Hyperreal operator*(const Scalar& c, const Hyperreal& x);
    friend Hyperreal operator/(const Hyperreal& x, const Hyperreal& y);

    /// Same validity, same mode and identical stored terms.
    friend bool operator==(const Hyperreal& x, const Hyperreal& y);

private:
    Hyperreal(TermMap terms, Rational valid_order, bool exact);
    void canonicalize();

    TermMap terms_;
    Rational valid_order_;
    bool exact_ = true;
};

Hyperreal add(const Hyperreal& x, const Hyperreal& y);
Hyperreal sub(const Hyperreal& x, const Hyperreal& y);
Hyperreal neg(const Hyperreal& x);
Hyperreal mul(const Hyperreal& x, const Hyperreal& y);
Hyperreal pow(const Hyperreal& x, unsigned n);

/// Reciprocal by factoring out the leading monomial and expanding 1/(1+u).
/// Throws DomainError when no term is stored (indistinguishable from zero).
Hyperreal invert(const Hyperreal& x);

/// The w^0 coefficient.  Throws PreconditionError for unlimited ("no standard
/// part") or indeterminate ("insufficient validity") input.
Scalar standard_part(const Hyperreal& x);

HClass classify(const Hyperreal& x);
/// As classify, ignoring floating coefficients with |c| <= tol.
HClass classify(const Hyperreal& x, double tol);
std::string to_string(HClass c);

/// Sign of the leading term of x - y.  Floating coefficients with magnitude
/// at most `tol` are treated as zero.
Ordering compare(const Hyperreal& x, const Hyperreal& y, double tol = 0.0);
std::string to_string(Ordering o);

/// Coefficientwise agreement up to the joint validity; exact equality for
/// exact values, |difference| <= tol otherwise.
bool agree(const Hyperreal& x, const Hyperreal& y, double tol = kCoefficientTolerance);

/// Guaranteed order of  sum_{k=1}^{W^d} g_k * M * w^s  when every g_k has order >= q.
Rational order_sum_bound(const Rational& term_order, int count_degree, int scale_degree);

/// `1/3 + 1/2*w + 1/6*w^2 (mod w^8)`; W^k for negative exponents.
std::string to_text(const Hyperreal& x);

/// Inverse of to_text.  A missing `(mod w^V)` suffix means validity kDefaultValidity.
Hyperreal parse_hyperreal(std::string_view text);

} // namespace omega
