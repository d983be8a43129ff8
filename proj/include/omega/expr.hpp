#pragma once

#include "omega/hyperreal.hpp"
#include "omega/scalar.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omega {

enum class NodeKind {
    constant,       // exact rational
    named_constant, // pi, e
    variable,
    neg,
    sin,
    cos,
    exp,
    log,
    sqrt,
    abs,
    add,
    sub,
    mul,
    div,
    pow,         // base ^ rational constant
    conditional, // if(x < c, then, else)
    point_fix,   // fix(e, p, v): e everywhere except value v at x = p
};

enum class NamedConstant { pi, e };

struct Node;
using Expr = std::shared_ptr<const Node>;

/// Immutable expression node.  `args` holds the children:
///   unary ops:     {operand}
///   binary ops:    {lhs, rhs}
///   pow:           {base}, exponent in `number`
///   conditional:   {threshold, then, else}
///   point_fix:     {expr, point, value}
struct Node {
    NodeKind kind;
    Rational number;
    NamedConstant named = NamedConstant::pi;
    std::vector<Expr> args;
};

namespace ex {
Expr constant(const Rational& q);
Expr named(NamedConstant c);
Expr var();
Expr unary(NodeKind kind, Expr operand);
Expr binary(NodeKind kind, Expr lhs, Expr rhs);
Expr pow(Expr base, const Rational& exponent);
/// `threshold` must not depend on x.
Expr conditional(Expr threshold, Expr then_branch, Expr else_branch);
/// Redefine `e` at the single point `point` to `value`; both must not depend on x.
Expr point_fix(Expr e, Expr point, Expr value);
} // namespace ex

struct ParseOptions {
    /// Name of the free variable; N-specs are parsed with "W".
    std::string variable = "x";
};

/// Precedence low to high: additive, multiplicative, unary minus, power
/// (right-assoc), atoms.  `p/q` between integer literals folds to one constant
/// as does a minus sign in front of a literal.
Expr parse(std::string_view text, const ParseOptions& options = {});

/// Minimal-parenthesis text; parse(to_text(e)) is structurally equal to e.
std::string to_text(const Expr& e, const ParseOptions& options = {});

bool structurally_equal(const Expr& x, const Expr& y);
bool depends_on_variable(const Expr& e);

/// Constant folding and 0/1 identities.
Expr simplify(const Expr& e);

/// Symbolic derivative, simplified.  Throws NotSmoothError naming the first
/// abs/conditional/point_fix node that depends on x.
Expr differentiate(const Expr& e);

/// Coefficients (index = power) when e is a polynomial in x with exact
/// rational coefficients; nullopt otherwise.
std::optional<std::vector<Rational>> to_polynomial(const Expr& e);

/// Exact result when every step is exact (rational arithmetic, integer
/// powers, perfect roots, sin(0), exp(0), log(1), ...), double otherwise.
/// Throws DomainError naming the failing subexpression.
Scalar eval_real(const Expr& e, const Scalar& x);

/// Double-only evaluation for grids and oracles.  Throws DomainError.
double eval_double(const Expr& e, double x);

/// Value of a constant expression (no x).
Scalar eval_constant(const Expr& e);

/// Taylor coefficients f^(j)(s)/j! for j = 0..order at the real point s,
/// computed by truncated power-series propagation through the tree.
/// Throws NotSmoothError at breakpoints (conditional threshold, abs of zero,
/// point_fix point, non-integer power of zero) when order > 0.
std::vector<Scalar> taylor_coefficients(const Expr& e, const Scalar& s, int order);

/// The natural extension *f at a limited hyperreal X = s + d:
/// sum_{j<=depth} f^(j)(s) d^j / j!, trusted to min(V_X, (depth+1)*ord(d)).
Hyperreal eval_hyper(const Expr& e, const Hyperreal& x, int depth = kDefaultValidity);

struct DomainViolation {
    Scalar point;
    std::string message;
};

struct SmoothnessReport {
    Scalar a;
    Scalar b;
    /// Sorted, strictly inside (a, b).
    std::vector<Scalar> breakpoints;
    /// x-values of point redefinitions falling on a or b.
    std::vector<Scalar> endpoint_fixes;
    int smooth_degree = 0;
    std::vector<DomainViolation> domain_violations;
    /// abs() arguments that change sign on the grid without a declared breakpoint nearby.
    std::vector<std::string> undeclared_abs;
    bool has_nonsmooth_nodes = false;

    bool clean() const { return domain_violations.empty() && undeclared_abs.empty(); }
};

inline constexpr int kSmoothnessGridPoints = 257;
/// Reported smooth_degree for expressions without non-differentiable nodes.
inline constexpr int kSmoothDegreeCap = 16;

/// Breakpoints: conditional thresholds and point_fix points inside (a,b),
/// plus `declared` points (for abs), each validated by |g| <= 1e-12 for some
/// abs argument g.  Domain validity is probed on a 257-point grid.
SmoothnessReport smoothness_report(const Expr& e, const Scalar& a, const Scalar& b,
                                   const std::vector<Scalar>& declared = {});

/// Replace every conditional, abs and point_fix by the smooth branch in force
/// on the open interval (lo, hi).  Throws PreconditionError if a conditional
/// threshold lies strictly inside.
Expr resolve_on(const Expr& e, const Scalar& lo, const Scalar& hi);

} // namespace omega
