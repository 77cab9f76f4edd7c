#include <gtest/gtest.h>

#include "eqkit/charpoly.hpp"
#include "eqkit/generators.hpp"
#include "eqkit/linalg.hpp"
#include "eqkit/polynomial.hpp"
#include "oracles.hpp"

using namespace eqkit;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

}  // namespace

TEST(IntPolynomial, NormalizesAndPrints) {
    IntPolynomial p{-2, -3, 0, 1, 0, 0};
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ(p.to_string(), "x^3 - 3*x - 2");
    EXPECT_EQ(IntPolynomial{}.degree(), -1);
    EXPECT_EQ(IntPolynomial{}.to_string(), "0");
    EXPECT_EQ((IntPolynomial{0, -1}).to_string(), "-x");
}

TEST(IntPolynomial, Arithmetic) {
    const IntPolynomial a{-1, 1};  // x - 1
    const IntPolynomial b{1, 1};   // x + 1
    EXPECT_EQ(a * b, (IntPolynomial{-1, 0, 1}));
    EXPECT_EQ(a + b, (IntPolynomial{0, 2}));
    EXPECT_EQ(a - a, IntPolynomial{});
    EXPECT_EQ(a.pow(3), (IntPolynomial{-1, 3, -3, 1}));
    EXPECT_EQ((IntPolynomial{6, 4, 2}).primitive(), (IntPolynomial{3, 2, 1}));
    EXPECT_EQ((IntPolynomial{-6, -4}).primitive(), (IntPolynomial{3, 2}));
    EXPECT_EQ((IntPolynomial{5, 0, 3}).derivative(), (IntPolynomial{0, 6}));
}

TEST(IntPolynomial, SignAtMatchesRationalEvaluation) {
    const IntPolynomial p{-2, -3, 0, 1};
    for (long n = -40; n <= 40; ++n) {
        for (long d : {1, 2, 3, 7}) {
            const Rational x(n, d);
            const Rational v = p.eval(x);
            EXPECT_EQ(p.sign_at(x), v > 0 ? 1 : (v < 0 ? -1 : 0)) << n << "/" << d;
        }
    }
}

TEST(PolyDivides, KnownExamples) {
    EXPECT_TRUE(poly_divides(IntPolynomial{-1, 1}, IntPolynomial{-1, 0, 1}));
    EXPECT_FALSE(poly_divides(IntPolynomial{-2, 0, 1}, IntPolynomial{-2, -3, 0, 1}));
    const IntPolynomial p{-2, -3, 0, 1};
    EXPECT_TRUE(poly_divides(p, p));
    EXPECT_THROW(poly_divides(IntPolynomial{}, p), std::invalid_argument);
}

TEST(PolyDivides, ContentIsIgnored) {
    EXPECT_TRUE(poly_divides(IntPolynomial{-2, 2}, IntPolynomial{-1, 0, 1}));
    auto quotient = exact_quotient(IntPolynomial{-1, 0, 1}, IntPolynomial{-1, 1});
    ASSERT_TRUE(quotient.has_value());
    EXPECT_EQ(*quotient, (IntPolynomial{1, 1}));
    EXPECT_FALSE(exact_quotient(IntPolynomial{-2, 0, 1}, IntPolynomial{-1, 1}).has_value());
}

TEST(Gcd, CommonFactor) {
    const IntPolynomial x1{-1, 1}, x2{-2, 1}, x3{-3, 1};
    EXPECT_EQ(gcd(x1 * x2, x2 * x3), x2);
    EXPECT_EQ(gcd(x1 * x2, x3), (IntPolynomial{1}));
    EXPECT_EQ(gcd(Integer(6) * x1 * x1, Integer(4) * x1), x1);
}

TEST(SquarefreePart, RemovesRepeatedFactors) {
    const IntPolynomial x1{-1, 1}, x2{2, 1};
    EXPECT_EQ(squarefree_part(x1 * x1 * x1 * x2), x1 * x2);
    EXPECT_EQ(squarefree_part(IntPolynomial{-2, -3, 0, 1}), (IntPolynomial{-2, -1, 1}));
}

TEST(Sturm, KnownExamples) {
    EXPECT_EQ(sturm_count(IntPolynomial{-2, 0, 1}, q(1), q(2)), 1);
    const IntPolynomial k3{-2, -3, 0, 1};  // (x - 2)(x + 1)^2
    EXPECT_EQ(sturm_count(k3, q(3, 2), q(3)), 1);
    EXPECT_EQ(sturm_count(k3, q(-2), q(0)), 1);
    EXPECT_THROW(sturm_count(IntPolynomial{}, q(0), q(1)), std::invalid_argument);
}

TEST(Sturm, HalfOpenIntervals) {
    const IntPolynomial p = IntPolynomial{-1, 1} * IntPolynomial{-2, 1} * IntPolynomial{-3, 1};
    EXPECT_EQ(sturm_count(p, q(1), q(2)), 1);  // root 2 only
    EXPECT_EQ(sturm_count(p, q(0), q(1)), 1);  // root 1
    EXPECT_EQ(sturm_count(p, q(3), q(10)), 0);
    EXPECT_EQ(sturm_count(p, q(0), q(3)), 3);
    EXPECT_THROW(sturm_count(p, q(2), q(2)), std::invalid_argument);
    EXPECT_EQ(SturmChain(p).total(), 3);
}

TEST(Sturm, CountsMatchFloatingRootsOnRandomProducts) {
    Rng rng(11);
    for (int t = 0; t < 40; ++t) {
        IntPolynomial p{1};
        std::vector<long> roots;
        const int m = 1 + static_cast<int>(uniform_index(rng, 6));
        for (int i = 0; i < m; ++i) {
            const long r = static_cast<long>(uniform_index(rng, 13)) - 6;
            roots.push_back(r);
            p = p * IntPolynomial{-r, 1};
        }
        p = p * IntPolynomial{1, 0, 1};  // no real roots
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        for (long lo = -7; lo <= 6; ++lo) {
            const long expected = std::count_if(roots.begin(), roots.end(), [&](long r) { return r > lo && r <= lo + 2; });
            EXPECT_EQ(sturm_count(p, q(lo), q(lo + 2)), expected);
        }
    }
}

TEST(IsolateRealRoots, SqrtTwo) {
    const auto roots = isolate_real_roots(IntPolynomial{-2, 0, 1}, q(1, 1000));
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_LT(to_double(roots[0].hi), -1.41);
    EXPECT_GE(to_double(roots[0].hi), -std::sqrt(2.0));
    EXPECT_LT(to_double(roots[0].lo), -std::sqrt(2.0));
    EXPECT_LE(roots[1].hi - roots[1].lo, q(1, 1000));
    EXPECT_NEAR(to_double(roots[1].hi), std::sqrt(2.0), 1e-3);
}

TEST(SubstituteFraction, AlphaToLambda) {
    // alpha = 1/3 is the root of 3x - 1; lambda = (1 - alpha)/(2 alpha) = 1.
    const IntPolynomial image = substitute_fraction(IntPolynomial{-1, 3}, 0, 1, 2, 1);
    EXPECT_EQ(image.primitive(), (IntPolynomial{-1, 1}));
}

TEST(Charpoly, KnownExamples) {
    EXPECT_EQ(charpoly_exact(complete_graph(3)), (IntPolynomial{-2, -3, 0, 1}));
    EXPECT_EQ(charpoly_exact(complete_graph(2)), (IntPolynomial{-1, 0, 1}));
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(charpoly_exact(empty_graph(n)), IntPolynomial::monomial(Integer(1), n));
    EXPECT_THROW(charpoly_exact(empty_graph(17)), std::invalid_argument);
}

TEST(Charpoly, ThreeVertexCofactorExpansion) {
    // det [[x,-a,-b],[-a,x,-c],[-b,-c,x]] = x^3 - (a^2 + b^2 + c^2) x - 2abc.
    for (int mask = 0; mask < 8; ++mask) {
        const long a = mask & 1, b = (mask >> 1) & 1, c = (mask >> 2) & 1;
        Graph g(3);
        if (a) g.add_edge(0, 1);
        if (b) g.add_edge(0, 2);
        if (c) g.add_edge(1, 2);
        EXPECT_EQ(charpoly_exact(g), (IntPolynomial{-2 * a * b * c, -(a * a + b * b + c * c), 0, 1})) << mask;
    }
}

TEST(Charpoly, AgreesWithBareissAtIntegers) {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const Graph g = oracle::random_graph(3 + uniform_index(rng, 9), 0.45, rng);
        const IntPolynomial p = charpoly_exact(g);
        EXPECT_EQ(p.degree(), static_cast<int>(g.order()));
        EXPECT_EQ(p.leading(), 1);
        for (int s = 0; s < 5; ++s) {
            const long x = static_cast<long>(uniform_index(rng, 41)) - 20;
            EXPECT_EQ(p.eval(Integer(x)), shifted_determinant(g, x));
        }
    }
}

TEST(Charpoly, CoefficientsMatchFloatingSpectrum) {
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        const Graph g = oracle::random_graph(2 + uniform_index(rng, 9), 0.5, rng);
        const auto expected = oracle::poly_from_roots(graph_eigenvalues(g));
        const IntPolynomial p = charpoly_exact(g);
        for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(to_double(p.coeff(i)), expected[i], 1e-6 * (1 + std::abs(expected[i])));
    }
}

TEST(Charpoly, PetersenKnownFactorisation) {
    // (x - 3)(x - 1)^5 (x + 2)^4
    const IntPolynomial expected = IntPolynomial{-3, 1} * IntPolynomial{-1, 1}.pow(5) * IntPolynomial{2, 1}.pow(4);
    EXPECT_EQ(charpoly_exact(petersen_graph()), expected);
}

TEST(Charpoly, RootsMatchFloatingEigenvaluesUpToEight) {
    Rng rng(21);
    for (int t = 0; t < 30; ++t) {
        const Graph g = oracle::random_graph(2 + uniform_index(rng, 7), 0.5, rng);
        auto values = graph_eigenvalues(g);
        const auto roots = isolate_real_roots(charpoly_exact(g), Rational(1, 1000000000));
        values.erase(std::unique(values.begin(), values.end(), [](double a, double b) { return std::abs(a - b) < 1e-7; }), values.end());
        ASSERT_EQ(roots.size(), values.size());
        std::sort(values.begin(), values.end());
        for (std::size_t i = 0; i < roots.size(); ++i) EXPECT_NEAR(to_double(roots[i].hi), values[i], 1e-8);
    }
}
