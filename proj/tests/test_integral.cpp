#include "support.hpp"

#include "omega/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace omega;

namespace {

Scalar pi_value()
{
    return eval_constant(parse("pi"));
}

} // namespace

TEST_CASE("quadratic field arithmetic")
{
    QuadField r2 = parse_quadfield("sqrt2");
    CHECK(r2.radicand() == 2);
    CHECK(parse_quadfield("sqrt8") == QuadField(Rational(0), Rational(2), Integer(2)));
    CHECK(parse_quadfield("sqrt(9)").is_rational());
    CHECK(parse_quadfield("1 + 2*sqrt2").to_text() == "1 + 2*sqrt2");
    CHECK(parse_quadfield("3/2 - sqrt3").to_text() == "3/2 - sqrt3");
    CHECK((r2 * r2) == QuadField(Rational(2)));
    CHECK(QuadField(Rational(1)) < r2);
    CHECK(r2 < QuadField(Rational(3, 2)));
    CHECK((r2 - QuadField(Rational(1))).sign() > 0);
    CHECK(parse_quadfield("7/5 - sqrt2").sign() < 0);
    CHECK_THROWS_AS(parse_quadfield("sqrt2") + parse_quadfield("sqrt3"), PreconditionError);
    CHECK_THROWS_AS(parse_quadfield("pi"), ParseError);
    CHECK_THROWS_AS(parse_quadfield("1 +"), ParseError);
}

TEST_CASE("verdicts for smooth functions")
{
    IntegralVerdict v = integrate(parse("x^2"), Scalar(0), Scalar(1));
    CHECK(v.kind == VerdictKind::integrable);
    CHECK(*v.value == Scalar(Rational(1, 3)));
    CHECK(v.confidence == Confidence::exact);
    CHECK(v.evidence.size() == 5);

    IntegralVerdict s = integrate(parse("sin(x)"), Scalar(0), pi_value());
    CHECK(s.kind == VerdictKind::integrable);
    CHECK(s.confidence == Confidence::numeric);
    CHECK(std::abs(s.value->to_double() - 2.0) < 1e-8);
}

TEST_CASE("divergence probing")
{
    IntegralVerdict harmonic = integrate(parse("if(x < 0, 0, fix(1/x, 0, 0))"), Scalar(0), Scalar(1));
    CHECK(harmonic.kind == VerdictKind::positive_unlimited);
    CHECK(harmonic.confidence == Confidence::heuristic);

    GrowthReport g = divergence_probe(parse("fix(1/x, 0, 0)"), Scalar(0), Scalar(1));
    CHECK(g.model == GrowthModel::log);
    CHECK(g.monotone);
    CHECK(g.sign > 0);
    CHECK(g.log_r2 > 0.999);

    GrowthReport lin = divergence_probe(parse("x"), Scalar(0), Scalar(1));
    CHECK(lin.model == GrowthModel::bounded);
    CHECK(std::abs(*lin.limit - 0.5) < 1e-9);

    IntegralVerdict improper = integrate(parse("fix(x^(-1/2), 0, 0)"), Scalar(0), Scalar(1));
    CHECK(improper.kind == VerdictKind::integrable);
    CHECK(improper.confidence == Confidence::heuristic);
    CHECK(std::abs(improper.value->to_double() - 2.0) < 1e-3);

    IntegralVerdict negative = integrate(parse("fix(-1/x^2, 0, 0)"), Scalar(0), Scalar(1));
    CHECK(negative.kind == VerdictKind::negative_unlimited);

    GrowthReport hole = divergence_probe(parse("1/(x - 1/2)"), Scalar(0), Scalar(1));
    CHECK(std::any_of(hole.samples.begin(), hole.samples.end(), [](const ProbeSample& s) { return !s.error.empty(); }));
    CHECK(integrate(parse("1/(x - 1/2)"), Scalar(0), Scalar(1)).kind == VerdictKind::inconclusive);
}

TEST_CASE("scaling by a positive constant scales the verdict")
{
    IntegralVerdict v = integrate(parse("x^3 - x"), Scalar(0), Scalar(2));
    IntegralVerdict w = integrate(parse("7/2*(x^3 - x)"), Scalar(0), Scalar(2));
    CHECK(*w.value == Scalar(Rational(7, 2)) * *v.value);
    IntegralVerdict u = integrate(parse("fix(3/x, 0, 0)"), Scalar(0), Scalar(1));
    CHECK(u.kind == VerdictKind::positive_unlimited);
}

TEST_CASE("additivity")
{
    AdditivityReport poly = additivity_check(parse("x^2"), Scalar(0), Scalar(1), Scalar(2));
    CHECK(poly.passed());
    CHECK(*poly.left.value == Scalar(Rational(1, 3)));
    CHECK(*poly.right.value == Scalar(Rational(7, 3)));
    CHECK(*poly.whole.value == Scalar(Rational(8, 3)));
    CHECK(poly.residual->is_zero());
    CHECK(poly.residual->is_exact());

    AdditivityReport s = additivity_check(parse("sin(x)"), Scalar(0), pi_value() / Scalar(2), pi_value());
    CHECK(s.passed());
    CHECK(std::abs(s.residual->to_double()) < 1e-8);

    AdditivityReport c = additivity_check(parse("5"), Scalar(Rational(1, 3)), Scalar(1), Scalar(4));
    CHECK(c.passed());
    CHECK(*c.whole.value == Scalar(Rational(55, 3)));

    AdditivityReport na = additivity_check(parse("fix(1/x, 0, 0)"), Scalar(0), Scalar(1), Scalar(2));
    CHECK(na.status == CheckStatus::not_applicable);
    CHECK_THROWS_AS(additivity_check(parse("x"), Scalar(0), Scalar(2), Scalar(1)), PreconditionError);
}

TEST_CASE("split partition discrepancy")
{
    SplitSumReport small = split_sum_experiment(parse("x^2"), Scalar(0), Scalar(1), Scalar(2), 1000);
    CHECK(small.exact);
    CHECK(small.b_index == 500);
    CHECK(small.left_discrepancy.is_zero());
    CHECK(small.right_discrepancy.is_zero());

    SplitSumReport coarse = split_sum_experiment(parse("x^2"), Scalar(0), Scalar(1), Scalar(3), 1000);
    SplitSumReport fine = split_sum_experiment(parse("x^2"), Scalar(0), Scalar(1), Scalar(3), 100000);
    double ratio = coarse.left_discrepancy.to_double() / fine.left_discrepancy.to_double();
    CHECK(ratio > 50);
    CHECK(ratio < 200);

    SplitSumReport constant = split_sum_experiment(parse("4"), Scalar(0), Scalar(1), Scalar(3), 1000);
    CHECK(constant.left_discrepancy <= Scalar(4) * Scalar(Rational(3, 1000)));
    CHECK_THROWS_AS(split_sum_experiment(parse("x"), Scalar(0), Scalar(1), Scalar(3), 3), PreconditionError);
}

TEST_CASE("Dirichlet indicator")
{
    auto q = [](const char* t) { return parse_quadfield(t); };
    IntegralVerdict unit = dirichlet_integrate(q("0"), q("1"));
    CHECK(unit.kind == VerdictKind::integrable);
    CHECK(*unit.value == Scalar(1));
    CHECK(unit.confidence == Confidence::exact);
    CHECK(*dirichlet_integrate(q("0"), q("sqrt2")).value == Scalar(0));
    CHECK(*dirichlet_integrate(q("1"), q("sqrt2")).value == Scalar(0));
    CHECK(*dirichlet_integrate(q("sqrt2"), q("1 + sqrt2")).value == Scalar(0));
    CHECK(*dirichlet_integrate(q("2 - sqrt2"), q("sqrt2")).value == Scalar(0));
    CHECK(*dirichlet_integrate(q("1/3"), q("5/2")).value == Scalar(Rational(13, 6)));
    CHECK_THROWS_AS(dirichlet_integrate(q("1"), q("0")), PreconditionError);

    DirichletReport violation = dirichlet_additivity(q("0"), q("sqrt2"), q("1"));
    CHECK(violation.status == CheckStatus::fail);
    CHECK(violation.expected_violation);
    CHECK_FALSE(violation.unexpected_failure());
    CHECK(*violation.left.value == Scalar(1));
    CHECK(*violation.right.value == Scalar(0));
    CHECK(*violation.whole.value == Scalar(0));

    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        Rational a = test::random_rational(rng, 0, 3);
        Rational b = a + test::random_rational(rng, 1, 2);
        Rational c = b + test::random_rational(rng, 1, 2);
        DirichletReport rational = dirichlet_additivity(QuadField(a), QuadField(b), QuadField(c));
        CHECK(rational.passed());
    }
}

TEST_CASE("bounds")
{
    BoundsReport s = bounds_check(parse("sin(x)"), Scalar(0), pi_value());
    CHECK(s.passed());
    CHECK(std::abs(s.big_m.to_double() - 1.0) < 1e-12);
    BoundsReport c = bounds_check(parse("3"), Scalar(0), Scalar(2));
    CHECK(c.passed());
    CHECK(c.m == Scalar(3));
    CHECK(c.big_m == Scalar(3));
    BoundsReport x = bounds_check(parse("x"), Scalar(0), Scalar(1));
    CHECK(x.passed());
    CHECK(x.m == Scalar(0));
    CHECK(x.big_m == Scalar(1));
    BoundsReport na = bounds_check(parse("fix(1/x, 0, 0)"), Scalar(0), Scalar(1));
    CHECK(na.status == CheckStatus::not_applicable);
}
