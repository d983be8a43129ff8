#pragma once

#include "omega/integral.hpp"
#include "omega/report.hpp"

#include <vector>

namespace omega {

/// Sum_{j<=depth} f^(j)(x) alpha^(j+1) / (j+1)!, the integral of f over
/// [x, x + alpha].  Trusted to min(V_alpha, (depth+2) * ord(alpha)).
/// Throws PreconditionError unless alpha is infinitesimal and NotSmoothError
/// at a breakpoint.
Hyperreal integral_taylor(const Expr& f, const Scalar& x, const Hyperreal& alpha, int depth = kDefaultValidity);

struct Ftc1Report : CheckReport {
    Scalar fx;
    std::vector<Hyperreal> quotients;
    std::vector<Scalar> standard_parts;
};

/// st((F(x+alpha) - F(x)) / alpha) = f(x) for every alpha, using the
/// integral over [x, x + alpha] only.
Ftc1Report ftc1_check(const Expr& f, const Scalar& a, const Scalar& b, const Scalar& x,
                      const std::vector<Hyperreal>& alphas, double tol = kDefaultTolerance,
                      int depth = kDefaultValidity);

struct L2Report : CheckReport {
    Hyperreal gamma;
    HClass gamma_class = HClass::indeterminate;
};

/// gamma = H'(x) - (H(x + alpha) - H(x)) / alpha is zero or infinitesimal.
L2Report l2_check(const Expr& h, const Hyperreal& x, const Hyperreal& alpha, int depth = kDefaultValidity);

inline constexpr int kAntiderivativeSamples = 50;
inline constexpr double kAntiderivativeTolerance = 1e-10;

struct Ftc2Report : CheckReport {
    IntegralVerdict verdict;
    Scalar expected;
    /// "polynomial identity", "structural identity" or "random points".
    std::string validation;
};

/// Validates H' = f (throws PreconditionError on failure), then checks
/// int_a^b f = H(b) - H(a).
Ftc2Report ftc2_check(const Expr& f, const Expr& h, const Scalar& a, const Scalar& b,
                      const IntegrateOptions& options = {});

struct TelescopeReport : CheckReport {
    long n = 0;
    bool exact = false;
    Scalar telescoped;
    Scalar expected;
    /// Right sum of H' minus H(b) - H(a).
    Scalar derivative_residual;
};

TelescopeReport telescoping_oracle(const Expr& h, const Scalar& a, const Scalar& b, long n,
                                   double tol = kDefaultTolerance);

} // namespace omega
