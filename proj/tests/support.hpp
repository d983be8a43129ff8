#pragma once

#include "omega/calculus.hpp"
#include "omega/hyperreal.hpp"
#include "omega/integral.hpp"

#include <random>
#include <string>
#include <vector>

namespace omega::test {

struct CorpusItem {
    std::string f;
    /// An antiderivative inside the grammar.
    std::string anti;
    bool polynomial;
};

inline const std::vector<CorpusItem>& smooth_corpus()
{
    static const std::vector<CorpusItem> items = {
        {"x^2", "x^3/3", true},
        {"x^3 - x", "x^4/4 - x^2/2", true},
        {"sin(x)", "-cos(x)", false},
        {"exp(x)", "exp(x)", false},
        {"1/(1 + x^2)", "", false},
    };
    return items;
}

/// Exact hyperreal with up to four terms, exponents in [-2, 4], small rational coefficients.
inline Hyperreal random_hyperreal(std::mt19937_64& rng, int min_exp = -2, int max_exp = 4)
{
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_int_distribution<int> exp(min_exp, max_exp);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 6);
    std::vector<std::pair<Rational, Scalar>> terms;
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
        Rational e(exp(rng));
        bool dup = false;
        for (const auto& t : terms)
            dup = dup || t.first == e;
        if (dup)
            continue;
        int p = num(rng);
        terms.emplace_back(e, Scalar(Rational(p == 0 ? 1 : p, den(rng))));
    }
    return Hyperreal::make(terms);
}

/// Rational in [lo, hi] with denominator up to 12.
inline Rational random_rational(std::mt19937_64& rng, int lo, int hi)
{
    std::uniform_int_distribution<int> den(1, 12);
    int q = den(rng);
    std::uniform_int_distribution<int> num(lo * q, hi * q);
    Rational r(num(rng), q);
    r.canonicalize();
    return r;
}

} // namespace omega::test
