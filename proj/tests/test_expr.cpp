#include "support.hpp"

#include "omega/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace omega;

TEST_CASE("printing round-trips through the parser")
{
    for (const char* text : {"x^2", "x^3 - x", "sin(x)", "exp(x)", "1/(1 + x^2)", "-x^2", "(-x)^2", "x^(1/2)",
                             "x^(-1/2)", "2*x + 1/3", "if(x < 1/2, x, 1 - x)", "fix(1/x, 0, 0)", "abs(x - 1/2)",
                             "pi*x", "e*x", "x - (1 - x)", "x/(2*x)", "-(3)", "log(1 + x)/sqrt(x)"}) {
        Expr e = parse(text);
        std::string printed = to_text(e);
        CAPTURE(std::string(text));
        CAPTURE(printed);
        CHECK(structurally_equal(parse(printed), e));
        CHECK(to_text(parse(printed)) == printed);
    }
    CHECK(to_text(parse("x + (2*x)")) == "x + 2*x");
    CHECK(to_text(parse("(x^2)^3")) == "(x^2)^3");
}

TEST_CASE("parse errors carry offsets")
{
    try {
        parse("x +");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
    CHECK_THROWS_AS(parse("y"), ParseError);
    CHECK_THROWS_AS(parse("sin x"), ParseError);
    CHECK_THROWS_AS(parse("x^x"), ParseError);
    CHECK_THROWS_AS(parse("if(x < x, 1, 2)"), ParseError);
    CHECK_THROWS_AS(parse("(x"), ParseError);
    CHECK_THROWS_AS(parse("x 2"), ParseError);
}

TEST_CASE("exact evaluation where every step is exact")
{
    CHECK(eval_real(parse("x^2 + 1/3"), Scalar(Rational(1, 2))) == Scalar(Rational(7, 12)));
    CHECK(eval_real(parse("sqrt(x)"), Scalar(Rational(9, 4))) == Scalar(Rational(3, 2)));
    CHECK(eval_real(parse("x^(1/3)"), Scalar(-8)) == Scalar(-2));
    CHECK(eval_real(parse("exp(x) + cos(x)"), Scalar(0)) == Scalar(2));
    CHECK_FALSE(eval_real(parse("sqrt(x)"), Scalar(2)).is_exact());
    CHECK_THROWS_AS(eval_real(parse("1/x"), Scalar(0)), DomainError);
    CHECK_THROWS_AS(eval_real(parse("log(x)"), Scalar(-1)), DomainError);
    CHECK_THROWS_AS(eval_double(parse("sqrt(x)"), -1.0), DomainError);
    CHECK(eval_real(parse("fix(1/x, 0, 5)"), Scalar(0)) == Scalar(5));
    CHECK(eval_real(parse("if(x < 1, 2, 3)"), Scalar(1)) == Scalar(3));
}

TEST_CASE("symbolic derivatives of the corpus")
{
    CHECK(to_text(differentiate(parse("x^3/3"))) == "x^2");
    CHECK(to_text(differentiate(parse("sin(x)"))) == "cos(x)");
    CHECK(to_text(differentiate(parse("exp(x)"))) == "exp(x)");
    CHECK(*to_polynomial(differentiate(parse("x^4/4 - x^2/2"))) ==
          std::vector<Rational>{Rational(0), Rational(-1), Rational(0), Rational(1)});
    CHECK_THROWS_AS(differentiate(parse("abs(x)")), NotSmoothError);
    CHECK_THROWS_AS(differentiate(parse("if(x < 0, 0, x)")), NotSmoothError);
    CHECK(to_text(differentiate(parse("abs(2)*x"))) == "2");
}

TEST_CASE("Taylor coefficients agree with repeated symbolic derivatives")
{
    std::mt19937_64 rng(11);
    for (const char* text : {"sin(x)", "exp(x)", "1/(1 + x^2)", "x^3 - x", "log(1 + x)", "sqrt(1 + x)",
                             "cos(x)*exp(x)", "x^(3/2)", "(1 + x)^(-2)", "exp(sin(x))"}) {
        Expr f = parse(text);
        for (int trial = 0; trial < 3; ++trial) {
            double s = std::uniform_real_distribution<double>(0.2, 2.0)(rng);
            std::vector<Scalar> tc = taylor_coefficients(f, Scalar::from_double(s), 5);
            Expr d = f;
            double factorial = 1.0;
            for (int j = 0; j <= 5; ++j) {
                if (j > 0) {
                    d = differentiate(d);
                    factorial *= j;
                }
                CAPTURE(std::string(text));
                CAPTURE(j);
                double expected = eval_double(d, s) / factorial;
                CHECK(tc[static_cast<std::size_t>(j)].to_double() ==
                      doctest::Approx(expected).epsilon(1e-9).scale(1.0));
            }
        }
    }
}

TEST_CASE("Taylor coefficients are exact for polynomials at rational points")
{
    std::vector<Scalar> tc = taylor_coefficients(parse("x^3 - x"), Scalar(2), 4);
    CHECK(tc[0] == Scalar(6));
    CHECK(tc[1] == Scalar(11));
    CHECK(tc[2] == Scalar(6));
    CHECK(tc[3] == Scalar(1));
    CHECK(tc[4] == Scalar(0));
    CHECK_THROWS_AS(taylor_coefficients(parse("abs(x)"), Scalar(0), 1), NotSmoothError);
    CHECK_THROWS_AS(taylor_coefficients(parse("x^(1/2)"), Scalar(0), 1), NotSmoothError);
}

TEST_CASE("natural extension at hyperreal points")
{
    Hyperreal one_plus_w = parse_hyperreal("1 + w");
    Hyperreal cube = eval_hyper(parse("x^3"), one_plus_w);
    CHECK(to_text(cube) == "1 + 3*w + 3*w^2 + w^3 (mod w^8)");
    Hyperreal s = eval_hyper(parse("sin(x)"), parse_hyperreal("w"), 5);
    CHECK(s.coefficient(1) == Scalar(1));
    CHECK(s.coefficient(3) == Scalar(Rational(-1, 6)));
    CHECK(s.valid_order() == 6);
    CHECK_THROWS_AS(eval_hyper(parse("x"), parse_hyperreal("W")), PreconditionError);
    CHECK_THROWS_AS(eval_hyper(parse("abs(x)"), parse_hyperreal("w")), NotSmoothError);
}

TEST_CASE("smoothness report")
{
    SmoothnessReport r = smoothness_report(parse("if(x < 1/2, x, 1 - x)"), Scalar(0), Scalar(1));
    REQUIRE(r.breakpoints.size() == 1);
    CHECK(r.breakpoints[0] == Scalar(Rational(1, 2)));
    CHECK(r.smooth_degree == 0);
    CHECK(r.clean());

    SmoothnessReport undeclared = smoothness_report(parse("abs(x - 1/3)"), Scalar(0), Scalar(1));
    CHECK_FALSE(undeclared.undeclared_abs.empty());
    SmoothnessReport declared = smoothness_report(parse("abs(x - 1/3)"), Scalar(0), Scalar(1), {Scalar(Rational(1, 3))});
    CHECK(declared.clean());
    CHECK(declared.breakpoints.size() == 1);
    SmoothnessReport wrong = smoothness_report(parse("abs(x - 1/3)"), Scalar(0), Scalar(1), {Scalar(Rational(1, 2))});
    CHECK_FALSE(wrong.clean());

    SmoothnessReport pole = smoothness_report(parse("1/x"), Scalar(0), Scalar(1));
    CHECK_FALSE(pole.domain_violations.empty());
    SmoothnessReport fixed = smoothness_report(parse("fix(1/x, 0, 0)"), Scalar(0), Scalar(1));
    CHECK(fixed.domain_violations.empty());
    CHECK(fixed.endpoint_fixes.size() == 1);
    CHECK(smoothness_report(parse("sin(x)"), Scalar(0), Scalar(1)).smooth_degree == kSmoothDegreeCap);
}

TEST_CASE("simplify folds constants")
{
    CHECK(to_text(simplify(parse("0*x + 1*x^1 + (2 + 3)"))) == "x + 5");
    CHECK(to_text(simplify(parse("x*3"))) == "3*x");
    CHECK(structurally_equal(simplify(parse("(2*x)/4")), parse("1/2*x")));
}
