#include "omega/cli.hpp"

#include "omega/calculus.hpp"
#include "omega/error.hpp"
#include "omega/integral.hpp"
#include "omega/serialize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace omega::cli {

namespace {

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    int depth = kDefaultValidity;
    double tol = kDefaultTolerance;
    double quad_tol = kDefaultQuadratureTolerance;
    std::string family = "W,W+1,2*W,3*W,W^2";
    std::string format = "text";
    std::string breakpoints;
};

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

double parse_positive(const std::string& key, const std::string& value)
{
    try {
        std::size_t used = 0;
        double d = std::stod(value, &used);
        if (used == value.size() && d > 0)
            return d;
    } catch (const std::exception&) {
    }
    throw UsageError(key + " must be a positive number, got '" + value + "'");
}

int parse_depth(const std::string& value)
{
    try {
        std::size_t used = 0;
        int d = std::stoi(value, &used);
        if (used == value.size() && d >= 2 && d <= 16)
            return d;
    } catch (const std::exception&) {
    }
    throw UsageError("depth must be an integer in [2, 16], got '" + value + "'");
}

void set_key(Config& cfg, const std::string& key, const std::string& value)
{
    if (key == "depth" || key == "validity")
        cfg.depth = parse_depth(value);
    else if (key == "tol" || key == "tolerance")
        cfg.tol = parse_positive(key, value);
    else if (key == "quad-tol" || key == "quad_tol")
        cfg.quad_tol = parse_positive(key, value);
    else if (key == "family")
        cfg.family = value;
    else if (key == "format")
        cfg.format = value;
    else if (key == "breakpoints")
        cfg.breakpoints = value;
    else
        throw UsageError("unknown config key '" + key + "'");
    if (cfg.format != "text" && cfg.format != "json")
        throw UsageError("format must be text or json");
}

void load_config_file(Config& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read config file '" + path + "'");
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(number) + ": expected key=value");
        set_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

Scalar parse_endpoint(const std::string& text)
{
    Expr e = parse(text);
    if (depends_on_variable(e))
        throw ParseError("endpoint '" + text + "' must not depend on x", 0);
    return eval_constant(e);
}

std::vector<Scalar> parse_breakpoints(const std::string& text)
{
    std::vector<Scalar> out;
    for (const std::string& item : split_list(text))
        out.push_back(parse_endpoint(item));
    return out;
}

/// Hyperreal literal; values written without "(mod ...)" are trusted to `depth`.
Hyperreal parse_hyper_arg(const std::string& text, int depth)
{
    Hyperreal h = parse_hyperreal(text);
    if (text.find("mod") != std::string::npos)
        return h;
    std::vector<std::pair<Rational, Scalar>> terms(h.terms().begin(), h.terms().end());
    return Hyperreal::make(terms, depth);
}

void print_lines(std::ostream& out, const std::string& key, const std::vector<std::string>& items)
{
    for (const std::string& s : items)
        out << key << ": " << s << "\n";
}

void print_verdict(std::ostream& out, const IntegralVerdict& v, const std::string& prefix = "")
{
    out << prefix << "verdict: " << to_string(v.kind) << "\n";
    if (v.value)
        out << prefix << "value: " << v.value->to_string() << "\n";
    out << prefix << "confidence: " << to_string(v.confidence) << "\n";
    out << prefix << "tolerance: " << format_double(v.tolerance) << "\n";
    for (const Evidence& e : v.evidence)
        out << prefix << "evidence: " << e.n << " -> " << e.st << "\n";
    print_lines(out, prefix + "note", v.notes);
}

void print_report(std::ostream& out, const CheckReport& r)
{
    out << "claim: " << r.claim << "\n";
    out << "status: " << to_string(r.status) << "\n";
    if (r.expected_violation)
        out << "expected-violation: yes\n";
    for (const Witness& w : r.witnesses)
        out << w.label << ": " << w.value << "\n";
    print_lines(out, "note", r.notes);
}

struct Context {
    Config cfg;
    std::ostream& out;
    bool json() const { return cfg.format == "json"; }

    IntegrateOptions integrate_options() const
    {
        IntegrateOptions o;
        o.family = nspec_family_parse(cfg.family);
        o.tolerance = cfg.tol;
        o.sum = sum_options();
        return o;
    }
    SumOptions sum_options() const
    {
        SumOptions s;
        s.validity = cfg.depth;
        s.quadrature_tolerance = cfg.quad_tol;
        s.breakpoints = parse_breakpoints(cfg.breakpoints);
        return s;
    }

    template <class R>
    int emit_report(const R& r)
    {
        if (json())
            out << to_json(r).dump(2) << "\n";
        else
            print_report(out, r);
        return r.unexpected_failure() ? kExitClaimFailed : kExitOk;
    }
};

Expr with_fixes(Expr f, const std::optional<std::string>& fix_a, const std::optional<std::string>& fix_b,
                const std::string& a_text, const std::string& b_text)
{
    if (fix_a)
        f = ex::point_fix(f, parse(a_text), parse(*fix_a));
    if (fix_b)
        f = ex::point_fix(f, parse(b_text), parse(*fix_b));
    return f;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Omega integral toolkit: hyperreal right sums and machine-checked calculus theorems", "omega"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> format, family, breakpoints, config_path;
    std::optional<double> tol, quad_tol;
    std::optional<int> depth;
    app.add_option("--format", format, "Output format: text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--tol", tol, "Agreement tolerance (default 1e-8)")->check(CLI::PositiveNumber);
    app.add_option("--quad-tol", quad_tol, "Quadrature tolerance (default 1e-10)")->check(CLI::PositiveNumber);
    app.add_option("--depth", depth, "Validity order V of series (2..16, default 8)")->check(CLI::Range(2, 16));
    app.add_option("--family", family, "Comma-separated N-spec family (default W,W+1,2*W,3*W,W^2)");
    app.add_option("--breakpoints", breakpoints, "Comma-separated declared zeros of abs() arguments");
    app.add_option("--config", config_path, "key=value config file");

    std::string expr_text, a_text, b_text, c_text, x_text, n_text = "W", anti_text, alphas_text = "w,-w,2*w,w^2";
    std::string alpha_text = "w";
    std::optional<std::string> fix_a, fix_b, c_opt;
    long big_n = 0;
    bool exact = false;

    auto add_interval = [&](CLI::App* sub) {
        sub->add_option("--a", a_text, "Left endpoint")->required();
        sub->add_option("--b", b_text, "Right endpoint")->required();
        sub->add_option("--fix-a", fix_a, "Redefine f at x = a");
        sub->add_option("--fix-b", fix_b, "Redefine f at x = b");
    };

    CLI::App* sum = app.add_subcommand("sum", "Omega sum of f over [a, b] for one N-spec");
    sum->add_option("expr", expr_text, "f(x)")->required();
    add_interval(sum);
    sum->add_option("--n", n_text, "N-spec, a polynomial in W");

    CLI::App* integ = app.add_subcommand("integrate", "Integrability verdict over the N-spec family");
    integ->add_option("expr", expr_text, "f(x)")->required();
    add_interval(integ);

    CLI::App* additivity = app.add_subcommand("additivity", "Check int_a^b + int_b^c = int_a^c");
    additivity->add_option("expr", expr_text, "f(x)")->required();
    add_interval(additivity);
    additivity->add_option("--c", c_text, "Third point")->required();

    CLI::App* ftc1 = app.add_subcommand("ftc1", "Difference quotients of F(x) = int_a^x f");
    ftc1->add_option("expr", expr_text, "f(x)")->required();
    add_interval(ftc1);
    ftc1->add_option("--x", x_text, "Base point in [a, b]")->required();
    ftc1->add_option("--alphas", alphas_text, "Comma-separated infinitesimals");

    CLI::App* ftc2 = app.add_subcommand("ftc2", "int_a^b f = H(b) - H(a) for an antiderivative H");
    ftc2->add_option("expr", expr_text, "f(x)")->required();
    ftc2->add_option("--anti", anti_text, "H(x)")->required();
    add_interval(ftc2);

    CLI::App* dirichlet = app.add_subcommand("dirichlet", "Omega integral of the indicator of the rationals");
    dirichlet->add_option("--a", a_text, "Endpoint in Q(sqrt d)")->required();
    dirichlet->add_option("--b", b_text, "Endpoint in Q(sqrt d)")->required();
    dirichlet->add_option("--c", c_opt, "Third point; reports additivity of the three integrals");

    CLI::App* oracle = app.add_subcommand("oracle", "Right sum at a standard N");
    oracle->add_option("expr", expr_text, "f(x)")->required();
    add_interval(oracle);
    oracle->add_option("--N", big_n, "Number of subintervals")->required()->check(CLI::PositiveNumber);
    oracle->add_flag("--exact", exact, "Exact rational arithmetic");

    CLI::App* telescope = app.add_subcommand("telescope", "Telescoping identity at a standard N");
    telescope->add_option("expr", expr_text, "H(x)")->required();
    add_interval(telescope);
    telescope->add_option("--N", big_n, "Number of subintervals")->required()->check(CLI::PositiveNumber);

    CLI::App* l2 = app.add_subcommand("l2", "Derivative versus difference quotient at a hyperreal point");
    l2->add_option("expr", expr_text, "H(x)")->required();
    l2->add_option("--x", x_text, "Limited hyperreal base point, e.g. 1 or 1/2 + w")->required();
    l2->add_option("--alpha", alpha_text, "Infinitesimal step");

    CLI::App* bounds = app.add_subcommand("bounds", "m(b-a) <= int_a^b f <= M(b-a) on a grid");
    bounds->add_option("expr", expr_text, "f(x)")->required();
    add_interval(bounds);

    CLI::App* split = app.add_subcommand("split", "Discrepancy of the split partition at a standard N");
    split->add_option("expr", expr_text, "f(x)")->required();
    add_interval(split);
    split->add_option("--c", c_text, "Right end of the whole interval")->required();
    split->add_option("--N", big_n, "Number of subintervals")->required()->check(CLI::Range(4L, 100000000L));

    CLI::App* probe = app.add_subcommand("probe", "Growth of finite right sums for N = 10^3..10^6");
    probe->add_option("expr", expr_text, "f(x)")->required();
    add_interval(probe);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    Context ctx{Config{}, out};
    try {
        if (const char* env = std::getenv("OMEGA_CONFIG"); env != nullptr && *env != '\0')
            load_config_file(ctx.cfg, env);
        if (config_path)
            load_config_file(ctx.cfg, *config_path);
        if (format)
            ctx.cfg.format = *format;
        if (tol)
            ctx.cfg.tol = *tol;
        if (quad_tol)
            ctx.cfg.quad_tol = *quad_tol;
        if (depth)
            ctx.cfg.depth = *depth;
        if (family)
            ctx.cfg.family = *family;
        if (breakpoints)
            ctx.cfg.breakpoints = *breakpoints;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const int v = ctx.cfg.depth;
        auto function = [&] { return with_fixes(parse(expr_text), fix_a, fix_b, a_text, b_text); };

        if (*sum) {
            Expr f = function();
            OmegaSumResult r = omega_sum(f, parse_endpoint(a_text), parse_endpoint(b_text), nspec_parse(n_text),
                                         ctx.sum_options());
            if (ctx.json())
                out << to_json(r).dump(2) << "\n";
            else
                out << to_text(r.value) << "\n";
            return kExitOk;
        }
        if (*integ) {
            Expr f = function();
            IntegralVerdict verdict = integrate(f, parse_endpoint(a_text), parse_endpoint(b_text),
                                                ctx.integrate_options());
            if (ctx.json())
                out << to_json(verdict).dump(2) << "\n";
            else
                print_verdict(out, verdict);
            return kExitOk;
        }
        if (*additivity) {
            Expr f = function();
            return ctx.emit_report(additivity_check(f, parse_endpoint(a_text), parse_endpoint(b_text),
                                                    parse_endpoint(c_text), ctx.integrate_options()));
        }
        if (*ftc1) {
            Expr f = function();
            std::vector<Hyperreal> alphas;
            for (const std::string& s : split_list(alphas_text))
                alphas.push_back(parse_hyper_arg(s, v));
            return ctx.emit_report(ftc1_check(f, parse_endpoint(a_text), parse_endpoint(b_text),
                                              parse_endpoint(x_text), alphas, ctx.cfg.tol, v));
        }
        if (*ftc2) {
            Expr f = function();
            Expr h = parse(anti_text);
            return ctx.emit_report(
                ftc2_check(f, h, parse_endpoint(a_text), parse_endpoint(b_text), ctx.integrate_options()));
        }
        if (*dirichlet) {
            QuadField a = parse_quadfield(a_text);
            QuadField b = parse_quadfield(b_text);
            if (c_opt)
                return ctx.emit_report(dirichlet_additivity(a, b, parse_quadfield(*c_opt)));
            IntegralVerdict verdict = dirichlet_integrate(a, b);
            if (ctx.json())
                out << to_json(verdict).dump(2) << "\n";
            else
                print_verdict(out, verdict);
            return kExitOk;
        }
        if (*oracle) {
            Expr f = function();
            Scalar value = finite_sum_oracle(f, parse_endpoint(a_text), parse_endpoint(b_text), big_n,
                                             exact ? OracleMode::exact : OracleMode::floating);
            if (ctx.json())
                out << Json{{"N", big_n}, {"mode", exact ? "exact" : "floating"}, {"value", value.to_string()}}.dump(2)
                    << "\n";
            else
                out << value.to_string() << "\n";
            return kExitOk;
        }
        if (*telescope) {
            Expr h = function();
            return ctx.emit_report(
                telescoping_oracle(h, parse_endpoint(a_text), parse_endpoint(b_text), big_n, ctx.cfg.tol));
        }
        if (*l2) {
            Expr h = parse(expr_text);
            return ctx.emit_report(l2_check(h, parse_hyper_arg(x_text, v), parse_hyper_arg(alpha_text, v), v));
        }
        if (*bounds) {
            Expr f = function();
            return ctx.emit_report(
                bounds_check(f, parse_endpoint(a_text), parse_endpoint(b_text), ctx.integrate_options()));
        }
        if (*split) {
            Expr f = function();
            SplitSumReport r = split_sum_experiment(f, parse_endpoint(a_text), parse_endpoint(b_text),
                                                    parse_endpoint(c_text), big_n);
            if (ctx.json()) {
                out << to_json(r).dump(2) << "\n";
            } else {
                out << "N: " << r.n << "\nB: " << r.b_index << "\nexact: " << (r.exact ? "yes" : "no")
                    << "\nleft discrepancy: " << r.left_discrepancy.to_string()
                    << "\nright discrepancy: " << r.right_discrepancy.to_string() << "\n";
            }
            return kExitOk;
        }
        if (*probe) {
            Expr f = function();
            GrowthReport g = divergence_probe(f, parse_endpoint(a_text), parse_endpoint(b_text));
            if (ctx.json()) {
                out << to_json(g).dump(2) << "\n";
            } else {
                for (const ProbeSample& s : g.samples)
                    out << "N = " << s.n << ": " << (s.sum ? format_double(*s.sum) : s.error) << "\n";
                out << "model: " << to_string(g.model) << "\nmonotone: " << (g.monotone ? "yes" : "no")
                    << "\nsign: " << g.sign << "\nlog fit R^2: " << format_double(g.log_r2) << "\n";
                if (g.limit)
                    out << "limit: " << format_double(*g.limit) << "\n";
            }
            return kExitOk;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return kExitDomain;
    } catch (const QuadratureError& e) {
        err << "quadrature failed: " << e.what() << "\n";
        return kExitDomain;
    }
    err << "no subcommand\n";
    return kExitUsage;
}

} // namespace omega::cli
