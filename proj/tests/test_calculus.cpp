#include "support.hpp"

#include "omega/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace omega;

namespace {

Hyperreal h(const char* text)
{
    return parse_hyperreal(text);
}

std::vector<Hyperreal> default_alphas()
{
    return {h("w"), h("-w"), h("2*w"), h("w^2")};
}

} // namespace

TEST_CASE("integral over an infinitesimal interval")
{
    CHECK(to_text(integral_taylor(parse("x^2"), Scalar(1), h("w"))) == "w + w^2 + 1/3*w^3 (mod w^8)");
    CHECK(to_text(integral_taylor(parse("5"), Scalar(Rational(2, 7)), h("w"))) == "5*w (mod w^8)");
    Hyperreal s = integral_taylor(parse("sin(x)"), Scalar(0), h("w"), 6);
    CHECK(s.coefficient(2) == Scalar(Rational(1, 2)));
    CHECK(s.coefficient(4) == Scalar(Rational(-1, 24)));
    double at = s.substitute(Scalar::from_double(1e-3)).to_double();
    CHECK(std::abs(at - 2.0 * std::pow(std::sin(5e-4), 2)) < 1e-20);
    CHECK_THROWS_AS(integral_taylor(parse("x"), Scalar(0), h("1")), PreconditionError);
    CHECK_THROWS_AS(integral_taylor(parse("if(x < 1, 0, 1)"), Scalar(1), h("w")), NotSmoothError);
}

TEST_CASE("difference quotients of F")
{
    Ftc1Report r = ftc1_check(parse("x^2"), Scalar(0), Scalar(2), Scalar(1), {h("w")});
    CHECK(r.passed());
    CHECK(to_text(r.quotients[0]) == "1 + w + 1/3*w^2 (mod w^7)");

    Ftc1Report c = ftc1_check(parse("3"), Scalar(0), Scalar(1), Scalar(Rational(1, 2)), default_alphas());
    CHECK(c.passed());
    for (const Hyperreal& q : c.quotients)
        CHECK(to_text(q).rfind("3 (mod", 0) == 0);

    Scalar half_pi = eval_constant(parse("pi/2"));
    Ftc1Report s = ftc1_check(parse("sin(x)"), Scalar(0), eval_constant(parse("pi")), half_pi,
                              {h("w"), h("-w"), h("w^2")}, 1e-10);
    CHECK(s.passed());

    CHECK(ftc1_check(parse("x^2"), Scalar(0), Scalar(1), Scalar(0), {h("w")}).passed());
    CHECK_THROWS_AS(ftc1_check(parse("x^2"), Scalar(0), Scalar(1), Scalar(0), {h("-w")}), PreconditionError);
    CHECK_THROWS_AS(ftc1_check(parse("x^2"), Scalar(0), Scalar(1), Scalar(1), {h("w")}), PreconditionError);
    CHECK_THROWS_AS(ftc1_check(parse("if(x < 1/2, x, 1 - x)"), Scalar(0), Scalar(1), Scalar(Rational(1, 2)),
                               {h("w")}),
                    NotSmoothError);
}

TEST_CASE("derivative against a difference quotient")
{
    L2Report cube = l2_check(parse("x^3/3"), h("1"), h("w"));
    CHECK(cube.passed());
    CHECK(to_text(cube.gamma) == "-w - 1/3*w^2 (mod w^7)");

    L2Report linear = l2_check(parse("2*x + 1"), h("1/3 + w"), h("-w^2"));
    CHECK(linear.passed());
    CHECK(linear.gamma_class == HClass::zero);

    L2Report s = l2_check(parse("sin(x)"), h("w"), h("w"));
    CHECK(s.passed());
    CHECK(s.gamma_class == HClass::infinitesimal);

    CHECK_THROWS_AS(l2_check(parse("x"), h("W"), h("w")), PreconditionError);
    CHECK_THROWS_AS(l2_check(parse("abs(x)"), h("1"), h("w")), NotSmoothError);
}

TEST_CASE("integral equals the change of an antiderivative")
{
    Ftc2Report p = ftc2_check(parse("x^2"), parse("x^3/3"), Scalar(0), Scalar(1));
    CHECK(p.passed());
    CHECK(p.validation == "polynomial identity");
    CHECK(p.expected == Scalar(Rational(1, 3)));
    CHECK(ftc2_check(parse("x^2"), parse("x^3/3 + 7"), Scalar(0), Scalar(1)).passed());
    Ftc2Report c = ftc2_check(parse("cos(x)"), parse("sin(x)"), Scalar(0), eval_constant(parse("pi/2")));
    CHECK(c.passed());
    Ftc2Report e = ftc2_check(parse("exp(x)*(1 + x)"), parse("x*exp(x)"), Scalar(0), Scalar(1));
    CHECK(e.passed());
    CHECK(e.validation == "random points");
    CHECK_THROWS_AS(ftc2_check(parse("x^2"), parse("x^3"), Scalar(0), Scalar(1)), PreconditionError);
    CHECK_THROWS_AS(ftc2_check(parse("cos(x)"), parse("cos(x)"), Scalar(0), Scalar(1)), PreconditionError);
}

TEST_CASE("telescoping at standard N")
{
    TelescopeReport t = telescoping_oracle(parse("x^3/3"), Scalar(0), Scalar(1), 1000);
    CHECK(t.passed());
    CHECK(t.exact);
    CHECK(t.telescoped == Scalar(Rational(1, 3)));
    // Residual is w/2 + w^2/6 at w = 1/1000.
    CHECK(t.derivative_residual == Scalar(Rational(1, 2000) + Rational(1, 6000000)));

    TelescopeReport lin = telescoping_oracle(parse("3*x - 1"), Scalar(-2), Scalar(5), 17);
    CHECK(lin.derivative_residual.is_zero());

    TelescopeReport coarse = telescoping_oracle(parse("x^2"), Scalar(0), Scalar(1), 100);
    TelescopeReport fine = telescoping_oracle(parse("x^2"), Scalar(0), Scalar(1), 10000);
    CHECK(coarse.derivative_residual == Scalar(100) * fine.derivative_residual);

    TelescopeReport s = telescoping_oracle(parse("sin(x)"), Scalar(0), Scalar(1), 100);
    CHECK(s.passed());
    CHECK_FALSE(s.exact);
    CHECK_THROWS_AS(telescoping_oracle(parse("1/(x - 1/2)"), Scalar(0), Scalar(1), 4), DomainError);
}

TEST_CASE("the two directions of the fundamental theorem agree")
{
    for (const auto& item : test::smooth_corpus()) {
        if (item.anti.empty())
            continue;
        Expr f = parse(item.f);
        Ftc2Report whole = ftc2_check(f, parse(item.anti), Scalar(0), Scalar(Rational(3, 2)));
        Ftc1Report local = ftc1_check(f, Scalar(0), Scalar(2), Scalar(Rational(3, 2)), {h("w")});
        CAPTURE(item.f);
        CHECK(whole.passed());
        CHECK(local.passed());
        double slope = (eval_real(parse(item.anti), Scalar(Rational(3, 2) + Rational(1, 100000))) -
                        eval_real(parse(item.anti), Scalar(Rational(3, 2))))
                           .to_double() *
                       1e5;
        CHECK(std::abs(slope - local.standard_parts[0].to_double()) < 1e-3);
    }
}
