#include "omega/expr.hpp"

#include "omega/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace omega {

namespace ex {

namespace {
Expr make(NodeKind kind, std::vector<Expr> args, Rational number = 0)
{
    return std::make_shared<const Node>(Node{kind, std::move(number), NamedConstant::pi, std::move(args)});
}
} // namespace

Expr constant(const Rational& q)
{
    Rational c(q);
    c.canonicalize();
    return make(NodeKind::constant, {}, c);
}

Expr named(NamedConstant c)
{
    return std::make_shared<const Node>(Node{NodeKind::named_constant, Rational(0), c, {}});
}

Expr var()
{
    return make(NodeKind::variable, {});
}

Expr unary(NodeKind kind, Expr operand)
{
    return make(kind, {std::move(operand)});
}

Expr binary(NodeKind kind, Expr lhs, Expr rhs)
{
    return make(kind, {std::move(lhs), std::move(rhs)});
}

Expr pow(Expr base, const Rational& exponent)
{
    return make(NodeKind::pow, {std::move(base)}, exponent);
}

Expr conditional(Expr threshold, Expr then_branch, Expr else_branch)
{
    if (depends_on_variable(threshold))
        throw PreconditionError("conditional threshold must be constant");
    return make(NodeKind::conditional, {std::move(threshold), std::move(then_branch), std::move(else_branch)});
}

Expr point_fix(Expr e, Expr point, Expr value)
{
    if (depends_on_variable(point) || depends_on_variable(value))
        throw PreconditionError("point redefinition needs a constant point and value");
    return make(NodeKind::point_fix, {std::move(e), std::move(point), std::move(value)});
}

} // namespace ex

bool depends_on_variable(const Expr& e)
{
    if (e->kind == NodeKind::variable || e->kind == NodeKind::conditional || e->kind == NodeKind::point_fix)
        return true;
    return std::any_of(e->args.begin(), e->args.end(), [](const Expr& a) { return depends_on_variable(a); });
}

bool structurally_equal(const Expr& x, const Expr& y)
{
    if (x->kind != y->kind || x->args.size() != y->args.size())
        return false;
    if (x->kind == NodeKind::constant || x->kind == NodeKind::pow)
        if (x->number != y->number)
            return false;
    if (x->kind == NodeKind::named_constant && x->named != y->named)
        return false;
    for (std::size_t i = 0; i < x->args.size(); ++i)
        if (!structurally_equal(x->args[i], y->args[i]))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

const char* function_name(NodeKind k)
{
    switch (k) {
    case NodeKind::sin: return "sin";
    case NodeKind::cos: return "cos";
    case NodeKind::exp: return "exp";
    case NodeKind::log: return "log";
    case NodeKind::sqrt: return "sqrt";
    case NodeKind::abs: return "abs";
    default: return nullptr;
    }
}

std::optional<NodeKind> function_kind(std::string_view name)
{
    for (NodeKind k : {NodeKind::sin, NodeKind::cos, NodeKind::exp, NodeKind::log, NodeKind::sqrt, NodeKind::abs})
        if (name == function_name(k))
            return k;
    return std::nullopt;
}

struct Parsed {
    Expr expr;
    bool literal = false; // bare number token, possibly folded with - and /
};

class Parser
{
public:
    Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

    Expr parse_all()
    {
        skip_ws();
        if (at_end())
            fail("empty expression");
        Expr e = parse_additive().expr;
        skip_ws();
        if (!at_end())
            fail(std::string("unexpected '") + peek() + "'");
        return e;
    }

private:
    Parsed parse_additive()
    {
        Parsed lhs = parse_multiplicative();
        while (true) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-')
                return lhs;
            ++pos_;
            Parsed rhs = parse_multiplicative();
            lhs = {ex::binary(c == '+' ? NodeKind::add : NodeKind::sub, lhs.expr, rhs.expr), false};
        }
    }

    Parsed parse_multiplicative()
    {
        Parsed lhs = parse_unary();
        while (true) {
            skip_ws();
            char c = peek();
            if (c != '*' && c != '/')
                return lhs;
            ++pos_;
            Parsed rhs = parse_unary();
            if (c == '/' && lhs.literal && rhs.literal && sgn(rhs.expr->number) != 0) {
                lhs = {ex::constant(Rational(lhs.expr->number / rhs.expr->number)), true};
                continue;
            }
            lhs = {ex::binary(c == '*' ? NodeKind::mul : NodeKind::div, lhs.expr, rhs.expr), false};
        }
    }

    Parsed parse_unary()
    {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            Parsed operand = parse_unary();
            if (operand.literal)
                return {ex::constant(Rational(-operand.expr->number)), true};
            return {ex::unary(NodeKind::neg, operand.expr), false};
        }
        return parse_power();
    }

    Parsed parse_power()
    {
        Parsed base = parse_atom();
        skip_ws();
        if (peek() != '^')
            return base;
        ++pos_;
        skip_ws();
        std::size_t at = pos_;
        Parsed exponent = parse_unary();
        if (depends_on_variable(exponent.expr))
            throw ParseError("exponent must be a rational constant", at);
        Scalar value;
        try {
            value = eval_constant(exponent.expr);
        } catch (const DomainError&) {
            throw ParseError("exponent is undefined", at);
        }
        if (!value.is_exact())
            throw ParseError("exponent must be a rational constant", at);
        return {ex::pow(base.expr, value.rational()), false};
    }

    Parsed parse_atom()
    {
        skip_ws();
        if (at_end())
            fail("unexpected end of input");
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return {parse_number(), true};
        if (c == '(') {
            ++pos_;
            Parsed inner = parse_additive();
            skip_ws();
            expect(')');
            return {inner.expr, false};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (name == options_.variable)
                return {ex::var(), false};
            if (name == "pi")
                return {ex::named(NamedConstant::pi), false};
            if (name == "e")
                return {ex::named(NamedConstant::e), false};
            if (auto kind = function_kind(name)) {
                open_call(name);
                Expr arg = parse_additive().expr;
                skip_ws();
                expect(')');
                return {ex::unary(*kind, arg), false};
            }
            if (name == "if") {
                open_call(name);
                skip_ws();
                std::size_t vstart = pos_;
                while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                    ++pos_;
                if (text_.substr(vstart, pos_ - vstart) != options_.variable)
                    throw ParseError("conditional must compare the variable '" + options_.variable + "'", vstart);
                skip_ws();
                expect('<');
                std::size_t tstart = pos_;
                Expr threshold = parse_additive().expr;
                if (depends_on_variable(threshold))
                    throw ParseError("conditional threshold must be constant", tstart);
                skip_ws();
                expect(',');
                Expr then_branch = parse_additive().expr;
                skip_ws();
                expect(',');
                Expr else_branch = parse_additive().expr;
                skip_ws();
                expect(')');
                return {ex::conditional(threshold, then_branch, else_branch), false};
            }
            if (name == "fix") {
                open_call(name);
                Expr base = parse_additive().expr;
                skip_ws();
                expect(',');
                std::size_t pstart = pos_;
                Expr point = parse_additive().expr;
                skip_ws();
                expect(',');
                Expr value = parse_additive().expr;
                skip_ws();
                expect(')');
                if (depends_on_variable(point) || depends_on_variable(value))
                    throw ParseError("fix() needs a constant point and value", pstart);
                return {ex::point_fix(base, point, value), false};
            }
            throw ParseError("unknown identifier '" + name + "'", start);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    Expr parse_number()
    {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        std::string digits(text_.substr(start, pos_ - start));
        std::string frac;
        if (peek() == '.') {
            ++pos_;
            std::size_t fstart = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
            frac = std::string(text_.substr(fstart, pos_ - fstart));
            if (digits.empty() && frac.empty())
                throw ParseError("malformed number", start);
        }
        Integer num(digits.empty() ? std::string("0") : digits);
        Integer den(1);
        for (char ch : frac) {
            num = num * 10 + (ch - '0');
            den *= 10;
        }
        return ex::constant(Rational(num, den));
    }

    void open_call(const std::string& name)
    {
        skip_ws();
        if (peek() != '(')
            fail("expected '(' after '" + name + "'");
        ++pos_;
    }

    void expect(char c)
    {
        skip_ws();
        if (peek() != c)
            fail(at_end() ? std::string("expected '") + c + "' before end of input"
                          : std::string("expected '") + c + "'");
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
    const ParseOptions& options_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse(std::string_view text, const ParseOptions& options)
{
    return Parser(text, options).parse_all();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

enum Prec { prec_add = 1, prec_mul = 2, prec_unary = 3, prec_pow = 4, prec_atom = 5 };

bool is_negative_constant(const Expr& e)
{
    return e->kind == NodeKind::constant && sgn(e->number) < 0;
}

int precedence(const Expr& e)
{
    switch (e->kind) {
    case NodeKind::constant:
        if (e->number.get_den() != 1)
            return prec_mul;
        return sgn(e->number) < 0 ? prec_unary : prec_atom;
    case NodeKind::add:
    case NodeKind::sub: return prec_add;
    case NodeKind::mul:
    case NodeKind::div: return prec_mul;
    case NodeKind::neg: return prec_unary;
    case NodeKind::pow: return prec_pow;
    default: return prec_atom;
    }
}

std::string print(const Expr& e, const ParseOptions& o);

std::string wrap(const std::string& s) { return "(" + s + ")"; }

std::string print_child(const Expr& child, bool paren, const ParseOptions& o)
{
    std::string s = print(child, o);
    return paren ? wrap(s) : s;
}

std::string print(const Expr& e, const ParseOptions& o)
{
    switch (e->kind) {
    case NodeKind::constant: return e->number.get_str();
    case NodeKind::named_constant: return e->named == NamedConstant::pi ? "pi" : "e";
    case NodeKind::variable: return o.variable;
    case NodeKind::neg: {
        const Expr& a = e->args[0];
        bool paren = a->kind == NodeKind::constant || precedence(a) < prec_unary;
        return "-" + print_child(a, paren, o);
    }
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul:
    case NodeKind::div: {
        const int p = precedence(e);
        const Expr& l = e->args[0];
        const Expr& r = e->args[1];
        bool lparen = precedence(l) < p || (e->kind == NodeKind::div && l->kind == NodeKind::constant &&
                                            r->kind == NodeKind::constant);
        bool rparen = precedence(r) <= p || r->kind == NodeKind::neg || is_negative_constant(r);
        const char* op = e->kind == NodeKind::add ? " + " : e->kind == NodeKind::sub ? " - "
                       : e->kind == NodeKind::mul ? "*"   : "/";
        return print_child(l, lparen, o) + op + print_child(r, rparen, o);
    }
    case NodeKind::pow: {
        const Expr& b = e->args[0];
        std::string exponent = e->number.get_str();
        if (e->number.get_den() != 1 || sgn(e->number) < 0)
            exponent = wrap(exponent);
        return print_child(b, precedence(b) < prec_atom, o) + "^" + exponent;
    }
    case NodeKind::conditional:
        return "if(" + o.variable + " < " + print(e->args[0], o) + ", " + print(e->args[1], o) + ", " +
               print(e->args[2], o) + ")";
    case NodeKind::point_fix:
        return "fix(" + print(e->args[0], o) + ", " + print(e->args[1], o) + ", " + print(e->args[2], o) + ")";
    default:
        return std::string(function_name(e->kind)) + "(" + print(e->args[0], o) + ")";
    }
}

} // namespace

std::string to_text(const Expr& e, const ParseOptions& options)
{
    return print(e, options);
}

// ---------------------------------------------------------------------------
// Simplification and differentiation

namespace {

bool is_const(const Expr& e, long v)
{
    return e->kind == NodeKind::constant && e->number == v;
}

bool is_const(const Expr& e)
{
    return e->kind == NodeKind::constant;
}

Expr rebuild(const Expr& e, std::vector<Expr> args)
{
    auto node = std::make_shared<Node>(*e);
    node->args = std::move(args);
    return node;
}

Expr simplify_node(const Expr& e)
{
    const auto& a = e->args;
    if (a.size() == 1 && is_const(a[0]) && e->kind != NodeKind::neg) {
        try {
            Scalar v = eval_constant(e);
            if (v.is_exact())
                return ex::constant(v.rational());
        } catch (const DomainError&) {
        }
    }
    switch (e->kind) {
    case NodeKind::neg:
        if (is_const(a[0]))
            return ex::constant(Rational(-a[0]->number));
        if (a[0]->kind == NodeKind::neg)
            return a[0]->args[0];
        return e;
    case NodeKind::add:
        if (is_const(a[0]) && is_const(a[1]))
            return ex::constant(Rational(a[0]->number + a[1]->number));
        if (is_const(a[0], 0))
            return a[1];
        if (is_const(a[1], 0))
            return a[0];
        if (a[1]->kind == NodeKind::neg)
            return simplify_node(ex::binary(NodeKind::sub, a[0], a[1]->args[0]));
        return e;
    case NodeKind::sub:
        if (is_const(a[0]) && is_const(a[1]))
            return ex::constant(Rational(a[0]->number - a[1]->number));
        if (is_const(a[1], 0))
            return a[0];
        if (is_const(a[0], 0))
            return simplify_node(ex::unary(NodeKind::neg, a[1]));
        if (structurally_equal(a[0], a[1]))
            return ex::constant(0);
        if (a[1]->kind == NodeKind::neg)
            return simplify_node(ex::binary(NodeKind::add, a[0], a[1]->args[0]));
        return e;
    case NodeKind::mul: {
        Expr l = a[0], r = a[1];
        if (is_const(r) && !is_const(l))
            std::swap(l, r);
        if (is_const(l) && is_const(r))
            return ex::constant(Rational(l->number * r->number));
        if (is_const(l, 0))
            return ex::constant(0);
        if (is_const(l, 1))
            return r;
        if (is_const(l, -1))
            return simplify_node(ex::unary(NodeKind::neg, r));
        if (is_const(l) && r->kind == NodeKind::mul && is_const(r->args[0]))
            return simplify_node(
                ex::binary(NodeKind::mul, ex::constant(Rational(l->number * r->args[0]->number)), r->args[1]));
        if (is_const(l) && r->kind == NodeKind::neg)
            return simplify_node(ex::binary(NodeKind::mul, ex::constant(Rational(-l->number)), r->args[0]));
        if (l != a[0])
            return ex::binary(NodeKind::mul, l, r);
        return e;
    }
    case NodeKind::div:
        if (is_const(a[1]) && sgn(a[1]->number) != 0) {
            if (is_const(a[0]))
                return ex::constant(Rational(a[0]->number / a[1]->number));
            if (is_const(a[1], 1))
                return a[0];
            if (a[0]->kind == NodeKind::mul && is_const(a[0]->args[0]))
                return simplify_node(ex::binary(NodeKind::mul,
                                                ex::constant(Rational(a[0]->args[0]->number / a[1]->number)),
                                                a[0]->args[1]));
        }
        if (is_const(a[0], 0) && !is_const(a[1], 0))
            return ex::constant(0);
        return e;
    case NodeKind::pow:
        if (e->number == 1)
            return a[0];
        if (sgn(e->number) == 0)
            return ex::constant(1);
        if (is_const(a[0]) && e->number.get_den() == 1 && e->number.get_num().fits_slong_p() &&
            !(sgn(a[0]->number) == 0 && sgn(e->number) < 0)) {
            Scalar v = pow(Scalar(a[0]->number), e->number.get_num().get_si());
            return ex::constant(v.rational());
        }
        return e;
    default:
        return e;
    }
}

} // namespace

Expr simplify(const Expr& e)
{
    if (e->args.empty())
        return e;
    std::vector<Expr> args;
    args.reserve(e->args.size());
    bool changed = false;
    for (const Expr& a : e->args) {
        args.push_back(simplify(a));
        changed = changed || args.back() != a;
    }
    return simplify_node(changed ? rebuild(e, std::move(args)) : e);
}

namespace {

Expr mul(Expr a, Expr b) { return ex::binary(NodeKind::mul, std::move(a), std::move(b)); }
Expr divide(Expr a, Expr b) { return ex::binary(NodeKind::div, std::move(a), std::move(b)); }

Expr derive(const Expr& e)
{
    if (!depends_on_variable(e))
        return ex::constant(0);
    const auto& a = e->args;
    switch (e->kind) {
    case NodeKind::variable: return ex::constant(1);
    case NodeKind::neg: return ex::unary(NodeKind::neg, derive(a[0]));
    case NodeKind::add:
    case NodeKind::sub: return ex::binary(e->kind, derive(a[0]), derive(a[1]));
    case NodeKind::mul:
        return ex::binary(NodeKind::add, mul(derive(a[0]), a[1]), mul(a[0], derive(a[1])));
    case NodeKind::div:
        if (!depends_on_variable(a[1]))
            return divide(derive(a[0]), a[1]);
        return divide(ex::binary(NodeKind::sub, mul(derive(a[0]), a[1]), mul(a[0], derive(a[1]))),
                      ex::pow(a[1], 2));
    case NodeKind::pow:
        return mul(mul(ex::constant(e->number), ex::pow(a[0], Rational(e->number - 1))), derive(a[0]));
    case NodeKind::sin: return mul(ex::unary(NodeKind::cos, a[0]), derive(a[0]));
    case NodeKind::cos: return mul(ex::unary(NodeKind::neg, ex::unary(NodeKind::sin, a[0])), derive(a[0]));
    case NodeKind::exp: return mul(e, derive(a[0]));
    case NodeKind::log: return divide(derive(a[0]), a[0]);
    case NodeKind::sqrt: return divide(derive(a[0]), mul(ex::constant(2), e));
    case NodeKind::abs:
    case NodeKind::conditional:
    case NodeKind::point_fix:
        throw NotSmoothError("cannot differentiate non-smooth node '" + to_text(e) + "'");
    default:
        return ex::constant(0);
    }
}

} // namespace

Expr differentiate(const Expr& e)
{
    return simplify(derive(simplify(e)));
}

// ---------------------------------------------------------------------------
// Polynomial extraction

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p)
{
    while (!p.empty() && sgn(p.back()) == 0)
        p.pop_back();
}

Poly poly_mul(const Poly& x, const Poly& y)
{
    if (x.empty() || y.empty())
        return {};
    Poly out(x.size() + y.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            out[i + j] += x[i] * y[j];
    trim(out);
    return out;
}

Poly poly_add(Poly x, const Poly& y, int sign)
{
    if (x.size() < y.size())
        x.resize(y.size(), Rational(0));
    for (std::size_t i = 0; i < y.size(); ++i)
        x[i] += sign * y[i];
    trim(x);
    return x;
}

} // namespace

std::optional<std::vector<Rational>> to_polynomial(const Expr& e)
{
    if (!depends_on_variable(e)) {
        if (e->kind == NodeKind::conditional || e->kind == NodeKind::point_fix)
            return std::nullopt;
        try {
            Scalar v = eval_constant(e);
            if (!v.is_exact())
                return std::nullopt;
            Poly p{v.rational()};
            trim(p);
            return p;
        } catch (const DomainError&) {
            return std::nullopt;
        }
    }
    const auto& a = e->args;
    switch (e->kind) {
    case NodeKind::variable: return Poly{Rational(0), Rational(1)};
    case NodeKind::neg: {
        auto p = to_polynomial(a[0]);
        if (!p)
            return std::nullopt;
        return poly_add({}, *p, -1);
    }
    case NodeKind::add:
    case NodeKind::sub: {
        auto p = to_polynomial(a[0]);
        auto q = to_polynomial(a[1]);
        if (!p || !q)
            return std::nullopt;
        return poly_add(*p, *q, e->kind == NodeKind::add ? 1 : -1);
    }
    case NodeKind::mul: {
        auto p = to_polynomial(a[0]);
        auto q = to_polynomial(a[1]);
        if (!p || !q)
            return std::nullopt;
        return poly_mul(*p, *q);
    }
    case NodeKind::div: {
        auto p = to_polynomial(a[0]);
        auto q = to_polynomial(a[1]);
        if (!p || !q || q->size() != 1)
            return std::nullopt;
        Poly out = *p;
        for (auto& c : out)
            c /= (*q)[0];
        return out;
    }
    case NodeKind::pow: {
        if (e->number.get_den() != 1 || sgn(e->number) < 0 || !e->number.get_num().fits_ulong_p())
            return std::nullopt;
        auto base = to_polynomial(a[0]);
        if (!base)
            return std::nullopt;
        Poly out{Rational(1)};
        for (unsigned long i = 0; i < e->number.get_num().get_ui(); ++i)
            out = poly_mul(out, *base);
        return out;
    }
    default:
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Smoothness

namespace {

void collect(const Expr& e, NodeKind kind, std::vector<Expr>& out)
{
    if (e->kind == kind)
        out.push_back(e);
    for (const Expr& a : e->args)
        collect(a, kind, out);
}

bool has_nonsmooth(const Expr& e)
{
    if ((e->kind == NodeKind::abs || e->kind == NodeKind::conditional || e->kind == NodeKind::point_fix) &&
        depends_on_variable(e))
        return true;
    return std::any_of(e->args.begin(), e->args.end(), has_nonsmooth);
}

Scalar grid_point(const Scalar& a, const Scalar& b, int i, int n)
{
    return a + (b - a) * Scalar(Rational(i, n));
}

} // namespace

SmoothnessReport smoothness_report(const Expr& e, const Scalar& a, const Scalar& b,
                                   const std::vector<Scalar>& declared)
{
    if (!(a < b))
        throw PreconditionError("smoothness report needs a < b");
    SmoothnessReport report;
    report.a = a;
    report.b = b;
    report.has_nonsmooth_nodes = has_nonsmooth(e);
    report.smooth_degree = report.has_nonsmooth_nodes ? 0 : kSmoothDegreeCap;

    auto add_breakpoint = [&](const Scalar& p) {
        if (a < p && p < b &&
            std::none_of(report.breakpoints.begin(), report.breakpoints.end(),
                         [&](const Scalar& q) { return q == p; }))
            report.breakpoints.push_back(p);
    };

    std::vector<Expr> nodes;
    collect(e, NodeKind::conditional, nodes);
    for (const Expr& n : nodes)
        add_breakpoint(eval_constant(n->args[0]));
    nodes.clear();
    collect(e, NodeKind::point_fix, nodes);
    for (const Expr& n : nodes) {
        Scalar p = eval_constant(n->args[1]);
        if (p == a || p == b)
            report.endpoint_fixes.push_back(p);
        else
            add_breakpoint(p);
    }

    nodes.clear();
    collect(e, NodeKind::abs, nodes);
    std::vector<Scalar> valid_declared;
    for (const Scalar& d : declared) {
        bool vanishes = false;
        for (const Expr& n : nodes) {
            try {
                if (std::abs(eval_real(n->args[0], d).to_double()) <= 1e-12)
                    vanishes = true;
            } catch (const DomainError&) {
            }
        }
        if (vanishes) {
            valid_declared.push_back(d);
            add_breakpoint(d);
        } else {
            report.domain_violations.push_back(
                {d, "declared breakpoint " + d.to_string() + " is not a zero of any abs() argument"});
        }
    }

    constexpr int n = kSmoothnessGridPoints - 1;
    for (const Expr& node : nodes) {
        const Expr& g = node->args[0];
        if (!depends_on_variable(g))
            continue;
        std::optional<double> prev;
        for (int i = 0; i <= n; ++i) {
            double gv;
            try {
                gv = eval_double(g, grid_point(a, b, i, n).to_double());
            } catch (const DomainError&) {
                prev.reset();
                continue;
            }
            bool root_here = gv == 0.0 && i > 0 && i < n;
            bool crossing = prev && (*prev < 0) != (gv < 0) && *prev != 0.0 && gv != 0.0;
            if (root_here || crossing) {
                Scalar lo = grid_point(a, b, std::max(i - 1, 0), n);
                Scalar hi = grid_point(a, b, root_here ? i + 1 : i, n);
                bool covered = std::any_of(valid_declared.begin(), valid_declared.end(),
                                           [&](const Scalar& d) { return lo <= d && d <= hi; });
                if (!covered)
                    report.undeclared_abs.push_back("'" + to_text(node) + "' changes sign in [" + lo.to_string() +
                                                    ", " + hi.to_string() + "] without a declared breakpoint");
            }
            prev = gv;
        }
    }

    for (int i = 0; i <= n; ++i) {
        Scalar t = grid_point(a, b, i, n);
        try {
            eval_double(e, t.to_double());
        } catch (const DomainError& err) {
            report.domain_violations.push_back({t, err.what()});
        }
    }

    std::sort(report.breakpoints.begin(), report.breakpoints.end());
    return report;
}

Expr resolve_on(const Expr& e, const Scalar& lo, const Scalar& hi)
{
    if (!depends_on_variable(e))
        return e;
    switch (e->kind) {
    case NodeKind::conditional: {
        Scalar c = eval_constant(e->args[0]);
        if (c <= lo)
            return resolve_on(e->args[2], lo, hi);
        if (c >= hi)
            return resolve_on(e->args[1], lo, hi);
        throw PreconditionError("conditional threshold " + c.to_string() + " lies inside (" + lo.to_string() +
                                ", " + hi.to_string() + ")");
    }
    case NodeKind::point_fix: {
        Scalar p = eval_constant(e->args[1]);
        if (p <= lo || p >= hi)
            return resolve_on(e->args[0], lo, hi);
        throw PreconditionError("point redefinition at " + p.to_string() + " lies inside the segment");
    }
    case NodeKind::abs: {
        Expr g = resolve_on(e->args[0], lo, hi);
        Scalar mid = (lo + hi) / Scalar(2);
        if (eval_real(g, mid).sign() < 0)
            return ex::unary(NodeKind::neg, g);
        return g;
    }
    default: {
        std::vector<Expr> args;
        for (const Expr& a : e->args)
            args.push_back(resolve_on(a, lo, hi));
        return rebuild(e, std::move(args));
    }
    }
}

} // namespace omega
