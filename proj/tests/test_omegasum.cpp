#include "support.hpp"

#include "omega/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace omega;

TEST_CASE("Bernoulli numbers")
{
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(3) == Rational(0));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(bernoulli(40) == Rational(Integer("-261082718496449122051"), Integer(13530)));
    CHECK_THROWS_AS(bernoulli(41), PreconditionError);
}

TEST_CASE("Faulhaber coefficients match brute-force power sums")
{
    for (int p = 0; p <= 12; ++p) {
        std::vector<Rational> c = faulhaber(p);
        for (long n : {1L, 2L, 7L, 30L}) {
            Integer brute(0);
            for (long k = 1; k <= n; ++k) {
                Integer kp;
                mpz_ui_pow_ui(kp.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(p));
                brute += kp;
            }
            Rational closed(0);
            Rational npow(1);
            for (const Rational& ci : c) {
                closed += ci * npow;
                npow *= n;
            }
            CAPTURE(p);
            CAPTURE(n);
            CHECK(closed == Rational(brute));
        }
    }
}

TEST_CASE("N-spec parsing")
{
    CHECK(nspec_parse("W").to_text() == "W");
    CHECK(nspec_parse("2*W + 1").coefficients() == std::vector<Integer>{1, 2});
    CHECK(nspec_parse("W^2 - W").degree() == 2);
    CHECK_THROWS_AS(nspec_parse("5"), ParseError);
    CHECK_THROWS_AS(nspec_parse("-W"), ParseError);
    CHECK_THROWS_AS(nspec_parse("W/2"), ParseError);
    CHECK_THROWS_AS(nspec_parse("W +"), ParseError);
    CHECK(default_family().size() == 5);
    CHECK(nspec_family_parse("W, 3*W").size() == 2);
    CHECK(nspec_parse("W + 1").at(Integer(9)) == 10);
}

TEST_CASE("delta_x and partition points")
{
    Hyperreal dx = delta_x(NSpec::omega(), Scalar(0), Scalar(2));
    CHECK(to_text(dx) == "2*w (mod w^8)");
    PartitionSpec p = make_partition(Scalar(1), Scalar(3), nspec_parse("2*W"));
    Hyperreal last = p.point(p.n.to_hyperreal(8));
    CHECK(standard_part(last) == Scalar(3));
    CHECK_THROWS_AS(delta_x(NSpec::omega(), Scalar(1), Scalar(1)), PreconditionError);
}

TEST_CASE("exact Faulhaber sum of x^2")
{
    OmegaSumResult r = omega_sum(parse("x^2"), Scalar(0), Scalar(1), NSpec::omega());
    CHECK(to_text(r.value) == "1/3 + 1/2*w + 1/6*w^2 (mod w^8)");
    CHECK(r.method == SumMethod::faulhaber_exact);
    CHECK(r.integral_coeff_source() == "exact");
}

TEST_CASE("exact sums equal the exact oracle at W = N")
{
    std::mt19937_64 rng(3);
    for (const char* f : {"x^2", "x^3 - x", "3*x^5 - 2*x + 7", "1/2"}) {
        for (const char* n : {"W", "2*W", "3*W", "W^2"}) {
            Rational a = test::random_rational(rng, -2, 1);
            Rational b = a + test::random_rational(rng, 1, 3);
            NSpec spec = nspec_parse(n);
            SumOptions opts;
            opts.validity = 16;
            OmegaSumResult r = omega_sum(parse(f), Scalar(a), Scalar(b), spec, opts);
            for (long w : {3L, 10L}) {
                long big_n = spec.at(Integer(w)).get_si();
                Scalar oracle = finite_sum_oracle(parse(f), Scalar(a), Scalar(b), big_n, OracleMode::exact);
                CAPTURE(std::string(f));
                CAPTURE(std::string(n));
                CHECK(r.value.substitute(Scalar(Rational(1, w))) == oracle);
            }
        }
    }
}

TEST_CASE("a non-monomial N-spec agrees with the oracle up to the truncation order")
{
    // 1/(W + 1) has an infinite expansion in w; the tail beyond w^8 is below 1e-20 at W = 1000.
    Expr f = parse("x^3 - x");
    OmegaSumResult r = omega_sum(f, Scalar(Rational(1, 3)), Scalar(2), nspec_parse("W + 1"));
    Scalar series = r.value.substitute(Scalar(Rational(1, 1000)));
    Scalar oracle = finite_sum_oracle(f, Scalar(Rational(1, 3)), Scalar(2), 1001, OracleMode::exact);
    CHECK(std::abs((series - oracle).to_double()) < 1e-20);
    CHECK(standard_part(r.value) == Scalar(Rational(665, 324)));
}

TEST_CASE("Euler-Maclaurin sums track the float oracle")
{
    for (const char* f : {"sin(x)", "exp(x)", "1/(1 + x^2)"}) {
        OmegaSumResult r = omega_sum(parse(f), Scalar(1), Scalar(3), NSpec::omega());
        CHECK(r.method == SumMethod::euler_maclaurin);
        CHECK(r.integral_coeff_source() == "quadrature(1e-10)");
        for (long n : {50L, 1000L}) {
            double series = r.value.substitute(Scalar::from_double(1.0 / static_cast<double>(n))).to_double();
            double oracle = finite_sum_oracle(parse(f), Scalar(1), Scalar(3), n, OracleMode::floating).to_double();
            CAPTURE(std::string(f));
            CAPTURE(n);
            CHECK(std::abs(series - oracle) < 1e-9);
        }
    }
}

TEST_CASE("piecewise sums split at breakpoints")
{
    SumOptions opts;
    opts.breakpoints = {Scalar(Rational(1, 2))};
    Expr f = parse("abs(x - 1/2)");
    OmegaSumResult aligned = omega_sum(f, Scalar(0), Scalar(1), nspec_parse("2*W"), opts);
    CHECK(aligned.method == SumMethod::split_piecewise);
    CHECK(standard_part(aligned.value) == Scalar(Rational(1, 4)));
    Scalar oracle = finite_sum_oracle(f, Scalar(0), Scalar(1), 2000, OracleMode::exact);
    CHECK(aligned.value.substitute(Scalar(Rational(1, 1000))) == oracle);

    OmegaSumResult loose = omega_sum(f, Scalar(0), Scalar(1), NSpec::omega(), opts);
    CHECK(standard_part(loose.value) == Scalar(Rational(1, 4)));
    CHECK(loose.validity() == 1);
    CHECK_FALSE(loose.notes.empty());

    Expr step = parse("if(x < 1/3, 1, 2)");
    OmegaSumResult jump = omega_sum(step, Scalar(0), Scalar(1), nspec_parse("3*W"));
    CHECK(standard_part(jump.value) == Scalar(Rational(5, 3)));
    CHECK(jump.value.substitute(Scalar(Rational(1, 7))) ==
          finite_sum_oracle(step, Scalar(0), Scalar(1), 21, OracleMode::exact));
}

TEST_CASE("undeclared kinks and poles are rejected")
{
    CHECK_THROWS_AS(omega_sum(parse("abs(x - 1/3)"), Scalar(0), Scalar(1), NSpec::omega()), PreconditionError);
    CHECK_THROWS_AS(omega_sum(parse("1/(x - 1/2)"), Scalar(0), Scalar(1), NSpec::omega()), DomainError);
    CHECK_THROWS_AS(omega_sum(parse("x"), Scalar(1), Scalar(0), NSpec::omega()), PreconditionError);
}

TEST_CASE("oracle modes")
{
    CHECK(finite_sum_oracle(parse("x"), Scalar(0), Scalar(1), 4, OracleMode::exact) == Scalar(Rational(5, 8)));
    CHECK(finite_sum_oracle(parse("x"), Scalar(0), Scalar(1), 4, OracleMode::floating).to_double() ==
          doctest::Approx(0.625));
    CHECK_THROWS_AS(finite_sum_oracle(parse("sin(x)"), Scalar(0), Scalar(1), 4, OracleMode::exact), PreconditionError);
    try {
        finite_sum_oracle(parse("1/(x - 1/2)"), Scalar(0), Scalar(1), 4, OracleMode::floating);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("k = 2") != std::string::npos);
    }
}

TEST_CASE("quadrature")
{
    QuadratureResult exact = quadrature_integral(parse("x^2"), Scalar(0), Scalar(3));
    CHECK(exact.exact);
    CHECK(exact.value == Scalar(9));
    QuadratureResult numeric = quadrature_integral(parse("sin(x)"), Scalar(0), Scalar::from_double(M_PI));
    CHECK(numeric.value.to_double() == doctest::Approx(2.0).epsilon(1e-12));
}
