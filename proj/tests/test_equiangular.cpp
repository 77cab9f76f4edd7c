#include <gtest/gtest.h>

#include "eqkit/equiangular.hpp"
#include "eqkit/generators.hpp"
#include "oracles.hpp"

using namespace eqkit;

namespace {

const Angle kThird = Angle::rational(1, 3);

}  // namespace

TEST(GramFromGraph, EmptyGraphHasFullRank) {
    for (std::size_t d : {1, 4, 9})
        for (const Angle& a : {Angle::rational(1, 3), Angle::rational(1, 5), Angle::rational(2, 9)}) {
            const GramReport r = gram_from_graph(empty_graph(d), a);
            EXPECT_TRUE(r.is_psd);
            EXPECT_EQ(r.rank, d);
        }
}

TEST(GramFromGraph, K2AtOneThird) {
    // Scaled form [[3/2, -1/2], [-1/2, 3/2]] has eigenvalues 1 and 2.
    const GramReport r = gram_from_graph(complete_graph(2), kThird);
    EXPECT_DOUBLE_EQ(r.scaled(0, 0), 1.5);
    EXPECT_DOUBLE_EQ(r.scaled(0, 1), -0.5);
    EXPECT_TRUE(r.is_psd);
    EXPECT_EQ(r.rank, 2u);
    EXPECT_NEAR(r.scaled_min_eigenvalue, 1.0, 1e-12);
}

TEST(GramFromGraph, CompleteGraphsAtOneThird) {
    // Scaled form of K_m is 2I - J/2 with eigenvalues 2 - m/2 and 2.
    for (std::size_t m = 2; m <= 7; ++m) {
        const GramReport r = gram_from_graph(complete_graph(m), kThird);
        EXPECT_NEAR(r.scaled_min_eigenvalue, std::min(2.0, 2.0 - 0.5 * static_cast<double>(m)), 1e-12) << m;
        EXPECT_EQ(r.is_psd, m <= 4) << m;
        if (m <= 4) {
            EXPECT_EQ(r.rank, m == 4 ? 3u : m);
        }
    }
}

TEST(GramFromGraph, UnitFormIsScaledTimesTwoAlpha) {
    const Graph g = petersen_graph();
    const Angle a = Angle::rational(1, 5);
    const GramReport r = gram_from_graph(g, a);
    for (Vertex i = 0; i < g.order(); ++i)
        for (Vertex j = 0; j < g.order(); ++j) EXPECT_NEAR(r.unit(i, j), 2.0 * a.value() * r.scaled(i, j), 1e-15);
    for (Vertex i = 0; i < g.order(); ++i) EXPECT_DOUBLE_EQ(r.unit(i, i), 1.0);
}

TEST(GramFromGraph, FormsAgreeAndMatchCholeskyOracle) {
    Rng rng(71);
    const std::vector<Angle> angles{Angle::rational(1, 3), Angle::rational(1, 5), Angle::rational(1, 7), Angle::rational(2, 7),
                                    alpha_from_lambda(AlgebraicNumber::quadratic(0, 1, 2))};
    for (int t = 0; t < 100; ++t) {
        const Angle& a = angles[uniform_index(rng, angles.size())];
        const Graph g = oracle::random_graph(1 + uniform_index(rng, 12), 0.05 * static_cast<double>(uniform_index(rng, 12)), rng);
        const GramReport r = gram_from_graph(g, a);
        EXPECT_EQ(r.is_psd, r.unit_is_psd);
        EXPECT_EQ(r.rank, r.unit_rank);
        const oracle::PsdOracle o = oracle::pivoted_cholesky(r.scaled, r.threshold);
        EXPECT_EQ(r.is_psd, o.is_psd) << r.scaled_min_eigenvalue;
        if (o.is_psd) {
            EXPECT_EQ(r.rank, o.rank);
        }
    }
}

TEST(LinesFromGraph, KnownExamples) {
    const LineConfig e = lines_from_graph(empty_graph(3), Angle::rational(1, 2));
    EXPECT_EQ(e.size(), 3u);
    EXPECT_EQ(e.d, 3u);
    const ValidationReport ve = validate(e, Angle::rational(1, 2));
    EXPECT_TRUE(ve.valid);
    EXPECT_EQ(ve.associated.size(), 0u);

    const LineConfig two_k2 = lines_from_graph(disjoint_union(complete_graph(2), complete_graph(2)), kThird);
    EXPECT_EQ(two_k2.size(), 4u);
    EXPECT_EQ(two_k2.d, 3u);

    EXPECT_THROW(lines_from_graph(complete_graph(5), kThird), std::domain_error);
}

TEST(LinesFromGraph, RoundTripOnAllSmallGraphs) {
    for (const Angle& a : {Angle::rational(1, 3), Angle::rational(1, 5)}) {
        std::size_t compatible = 0;
        for (std::size_t n = 1; n <= 7; ++n) {
            for (const Graph& g : enumerate_all(n)) {
                if (!gram_from_graph(g, a).is_psd) continue;
                ++compatible;
                const LineConfig c = lines_from_graph(g, a);
                const ValidationReport v = validate(c, a);
                ASSERT_TRUE(v.valid);
                EXPECT_TRUE(v.associated == g);
                EXPECT_EQ(v.effective_dim, c.d);
            }
        }
        EXPECT_GT(compatible, 100u);
    }
}

TEST(ConstructLowerBound, KnownExamples) {
    const LineConfig a = construct_lower_bound(complete_graph(2), 2, 15, kThird);
    EXPECT_EQ(a.size(), 28u);
    EXPECT_EQ(a.d, 15u);
    const ValidationReport va = validate(a, kThird);
    EXPECT_TRUE(va.valid);
    EXPECT_LE(va.effective_dim, 15u);

    const Angle fifth = Angle::rational(1, 5);
    const LineConfig b = construct_lower_bound(complete_graph(3), 3, 11, fifth);
    EXPECT_EQ(b.size(), 15u);
    EXPECT_TRUE(validate(b, fifth).valid);

    const Angle seventh = Angle::rational(1, 7);
    const LineConfig c = construct_lower_bound(complete_graph(4), 4, 10, seventh);
    EXPECT_EQ(c.size(), 12u);
    EXPECT_TRUE(validate(c, seventh).valid);
}

TEST(ConstructLowerBound, Preconditions) {
    EXPECT_THROW(construct_lower_bound(complete_graph(3), 3, 15, kThird), std::invalid_argument);
    EXPECT_THROW(construct_lower_bound(complete_graph(2), 2, 1, kThird), std::invalid_argument);
    EXPECT_THROW(construct_lower_bound(complete_graph(2), 3, 15, kThird), std::invalid_argument);
}

TEST(ConstructLowerBound, SizeIdentity) {
    for (std::size_t k = 2; k <= 5; ++k) {
        const Angle a = Angle::rational(1, static_cast<long>(2 * k - 1));
        for (std::size_t d = k; d <= 60; ++d) {
            EXPECT_EQ(lower_bound_count(k, d), k * (d - 1) / (k - 1));
            EXPECT_EQ(lower_bound_graph(complete_graph(k), d).order(), lower_bound_count(k, d));
        }
        for (std::size_t d = k; d <= 60; d += 5) {
            const LineConfig c = construct_lower_bound(complete_graph(k), k, d, a);
            EXPECT_EQ(c.size(), (d - 1) + (d - 1) / (k - 1)) << k << " " << d;
            EXPECT_TRUE(validate(c, a).valid) << k << " " << d;
        }
    }
}

TEST(ConstructBest, FallsBackToEmptyGraph) {
    const Angle half = Angle::rational(1, 2);
    const LineConfig c = construct_best(half, 6, 6);
    EXPECT_EQ(c.size(), 6u);
    EXPECT_TRUE(validate(c, half).valid);
    EXPECT_EQ(construct_best(kThird, 20).size(), 38u);
}

TEST(Validate, KnownExamples) {
    LineConfig c = construct_lower_bound(complete_graph(2), 2, 15, kThird);
    for (double& x : c.vectors[5]) x *= 1.01;
    const ValidationReport v = validate(c, kThird);
    EXPECT_FALSE(v.valid);
    ASSERT_FALSE(v.violations.empty());
    EXPECT_NE(v.violations.front().find("norm of vector 5"), std::string::npos);

    const ValidationReport empty = validate(LineConfig{3, kThird.value(), {}}, kThird);
    EXPECT_TRUE(empty.valid);
    EXPECT_EQ(empty.count, 0u);
}

TEST(Validate, WrongAngleAndWrongLength) {
    const LineConfig c = construct_lower_bound(complete_graph(2), 2, 15, kThird);
    EXPECT_FALSE(validate(c, Angle::rational(1, 5)).valid);
    LineConfig bad = c;
    bad.vectors[0].pop_back();
    EXPECT_FALSE(validate(bad, kThird).valid);
}

TEST(NAlphaFormula, KnownExamples) {
    const NAlphaResult a = n_alpha_formula(kThird, 100, k_order(AlgebraicNumber::integer(1)));
    EXPECT_EQ(a.value, 198u);
    EXPECT_EQ(a.regime, 'a');
    EXPECT_FALSE(a.caveat.empty());
    EXPECT_EQ(n_alpha_formula(Angle::rational(1, 5), 100, k_order(AlgebraicNumber::integer(2))).value, 148u);

    const Angle half = Angle::rational(1, 2);
    const KOrderResult ko = k_order(lambda_from_alpha(half), 8);
    EXPECT_FALSE(ko.found());
    const NAlphaResult b = n_alpha_formula(half, 100, ko);
    EXPECT_EQ(b.value, 100u);
    EXPECT_EQ(b.regime, 'b');
    EXPECT_THROW(n_alpha_formula(half, 1, ko), std::invalid_argument);
}

TEST(BruteOracle, KnownExamples) {
    EXPECT_EQ(brute_oracle(Angle::rational(1, 2), 2, 5).best, 3u);
    for (std::size_t d = 1; d <= 5; ++d) EXPECT_GE(brute_oracle(Angle::rational(1, 5), d, d).best, d);
    const OracleResult r = brute_oracle(kThird, 3, 7);
    EXPECT_GE(r.best, 4u);
    EXPECT_GE(r.best, lower_bound_count(2, 3));
    ASSERT_TRUE(r.witness.has_value());
    const GramReport w = gram_from_graph(*r.witness, kThird);
    EXPECT_TRUE(w.is_psd);
    EXPECT_LE(w.rank, 3u);
    EXPECT_THROW(brute_oracle(kThird, 3, 9), std::invalid_argument);
}

TEST(BruteOracle, FrozenSmallValues) {
    // Frozen from the exhaustive search itself, then cross-checked against the constructions.
    EXPECT_EQ(brute_oracle(kThird, 3, 7).best, 4u);
    EXPECT_EQ(brute_oracle(kThird, 4, 7).best, 6u);
}

TEST(BruteOracle, Monotone) {
    for (const Angle& a : {Angle::rational(1, 3), Angle::rational(1, 5)}) {
        std::vector<std::vector<std::size_t>> table(5, std::vector<std::size_t>(7, 0));
        for (std::size_t d = 1; d <= 4; ++d)
            for (std::size_t n = 1; n <= 6; ++n) {
                table[d][n] = brute_oracle(a, d, n).best;
                EXPECT_GE(table[d][n], table[d - 1][n]);
                EXPECT_GE(table[d][n], table[d][n - 1]);
                EXPECT_LE(table[d][n], n);
            }
    }
}
