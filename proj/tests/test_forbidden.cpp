#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "uhs/analysis.hpp"
#include "uhs/density.hpp"
#include "uhs/forbidden.hpp"

using namespace uhs;

namespace {

BigInt to_big(unsigned __int128 v) {
    BigInt out = 0;
    BigInt scale = 1;
    while (v) {
        out += scale * static_cast<unsigned>(v % 1000000000U);
        scale *= 1000000000U;
        v /= 1000000000U;
    }
    return out;
}

}  // namespace

TEST(ForbiddenD, Examples) {
    EXPECT_EQ(forbidden_d(2, 16), 1U);
    EXPECT_EQ(forbidden_d(2, 64), 2U);
    EXPECT_EQ(forbidden_d(4, 256), 1U);
    EXPECT_THROW(forbidden_d(2, 4), std::invalid_argument);
    EXPECT_THROW(forbidden_d(2, 1), std::invalid_argument);
    EXPECT_THROW(forbidden_d(4, 16), std::invalid_argument);
}

TEST(ForbiddenD, MatchesFormula) {
    for (unsigned sigma : {2U, 3U, 4U})
        for (unsigned w = 3; w <= 5000; w += 7) {
            const double x = std::log(w / std::log(double(w))) / std::log(double(sigma));
            const long expected = static_cast<long>(std::floor(x)) - 1;
            if (std::fabs(x - std::round(x)) < 1e-9) continue;  // avoid float ties
            if (expected < 1) {
                EXPECT_THROW(forbidden_d(sigma, w), std::invalid_argument);
            } else {
                EXPECT_EQ(forbidden_d(sigma, w), static_cast<unsigned>(expected)) << sigma << "," << w;
            }
        }
}

TEST(ForbiddenSet, SigmaTwoW16) {
    const auto f = build_forbidden_set(2, 16);
    EXPECT_EQ(f.cardinality(), (1U << 15) + 1);
    EXPECT_TRUE(f.contains(Kmer::from_word(Word(16, 1), 2)));
    for (std::uint64_t x = 0; x < f.universe(); ++x) {
        const bool leading_zero = x < (1U << 15);
        EXPECT_EQ(f.contains(x), leading_zero || x == 0xFFFF);
    }
    const auto r = longest_remaining_path(f);
    ASSERT_TRUE(r.acyclic());
    EXPECT_EQ(r.longest_vertices, 15U);
    EXPECT_TRUE(is_avoiding_walk(f, r.witness));
}

TEST(ForbiddenSet, ClausesMatchBruteForce) {
    for (unsigned sigma : {2U, 3U, 4U})
        for (unsigned d = 1; d <= 3; ++d)
            for (unsigned w = d; w <= 10; ++w) {
                if (oracle::ipow(sigma, w) > (1U << 18)) break;
                const auto f = build_forbidden_set(sigma, w, d);
                std::uint64_t clause1 = 0;
                for (std::uint64_t x = 0; x < f.universe(); ++x) {
                    const auto dig = oracle::digits(x, sigma, w);
                    bool prefix = true;
                    for (unsigned i = 0; i < d; ++i) prefix = prefix && dig[i] == 0;
                    unsigned run = 0;
                    bool has = false;
                    for (int s : dig) {
                        run = s == 0 ? run + 1 : 0;
                        has = has || run >= d;
                    }
                    clause1 += prefix;
                    EXPECT_EQ(f.contains(x), prefix || !has);
                }
                EXPECT_EQ(clause1, oracle::ipow(sigma, w - d));
                EXPECT_EQ(BigInt(f.cardinality()), forbidden_set_size(sigma, w, d));
            }
    EXPECT_THROW(build_forbidden_set(2, 4, 5), std::invalid_argument);
}

TEST(ForbiddenSet, LongestPathIsWMinusD) {
    for (unsigned w = 5; w <= 24; ++w) {
        unsigned d = 0;
        try {
            d = forbidden_d(2, w);
        } catch (const std::invalid_argument&) {
            continue;
        }
        const auto f = build_forbidden_set(2, w, d);
        const auto r = longest_remaining_path(f);
        ASSERT_TRUE(r.acyclic()) << w;
        EXPECT_EQ(r.longest_vertices, w - d) << w;
        EXPECT_TRUE(is_uhs(f, w - d + 1));
        EXPECT_FALSE(hits(f, forbidden_witness(w, d)));
    }
}

TEST(ForbiddenSet, WitnessShape) {
    const Word s = forbidden_witness(16, 1);
    EXPECT_EQ(format_word(s, Alphabet(2)), "111111111111111011111111111111");
    EXPECT_EQ(s.size(), string_length_for(15, 16));
    EXPECT_THROW(forbidden_witness(4, 4), std::invalid_argument);
}

TEST(FsmMatrix, Examples) {
    const auto a1 = fsm_matrix(2, 1);
    ASSERT_EQ(a1.rows, 1U);
    EXPECT_EQ(a1(0, 0), Rational(1, 2));
    const auto a2 = fsm_matrix(2, 2);
    EXPECT_EQ(a2(0, 0), Rational(1, 2));
    EXPECT_EQ(a2(0, 1), Rational(1, 2));
    EXPECT_EQ(a2(1, 0), Rational(1, 2));
    EXPECT_EQ(a2(1, 1), Rational(0));
    const auto a4 = fsm_matrix(4, 2);
    EXPECT_EQ(a4(0, 0), Rational(3, 4));
    EXPECT_EQ(a4(0, 1), Rational(3, 4));
    EXPECT_EQ(a4(1, 0), Rational(1, 4));
    EXPECT_EQ(a4(1, 1), Rational(0));
}

TEST(FsmMatrix, ColumnSumsAtMostOne) {
    for (unsigned sigma : {2U, 3U, 5U})
        for (unsigned d = 1; d <= 8; ++d) {
            const auto a = fsm_matrix(sigma, d);
            for (unsigned j = 0; j < d; ++j) {
                Rational sum = 0;
                for (unsigned i = 0; i < d; ++i) sum += a(i, j);
                EXPECT_EQ(sum, j + 1 < d ? Rational(1) : Rational(sigma - 1, sigma));
            }
        }
}

TEST(MatrixPower, MatchesRepeatedProduct) {
    const auto a = fsm_matrix(3, 4);
    auto slow = FsmMatrix::identity(4);
    for (unsigned e = 0; e <= 20; ++e) {
        EXPECT_EQ(matrix_power(a, e), slow);
        slow = slow * a;
    }
}

TEST(Survival, Examples) {
    EXPECT_EQ(survival_probability(2, 2, 4), Rational(8, 16));
    EXPECT_EQ(survival_probability(2, 1, 3), Rational(1, 8));
    for (unsigned sigma : {2U, 4U})
        for (unsigned d = 1; d <= 4; ++d) EXPECT_EQ(survival_probability(sigma, d, 0), Rational(1));
}

TEST(Survival, ExactBruteForceEquivalence) {
    for (unsigned sigma : {2U, 4U})
        for (unsigned d = 1; d <= 4; ++d)
            for (unsigned w = 0; w <= 20; ++w) {
                const BigInt count = avoider_count(sigma, d, w);
                if (oracle::ipow(sigma, w) <= (1U << 20)) {
                    EXPECT_EQ(count, BigInt(oracle::avoiders_brute(sigma, d, w))) << sigma << "," << d << "," << w;
                }
                EXPECT_EQ(count, to_big(oracle::avoiders_dp(sigma, d, w))) << sigma << "," << d << "," << w;
            }
}

TEST(Survival, SetSizeSplitIsDisjoint) {
    for (unsigned w = 5; w <= 22; ++w) {
        const unsigned d = w < 8 ? 1 : 2;
        const auto f = build_forbidden_set(2, w, d);
        const BigInt expected = big_pow(2, w - d) + numerator(survival_probability(2, d, w) * Rational(big_pow(2, w)));
        EXPECT_EQ(BigInt(f.cardinality()), expected);
    }
}

TEST(Survival, NormBound) {
    for (unsigned sigma : {2U, 3U, 4U}) {
        int tested = 0;
        for (unsigned w = 8; w <= 3000; w += (w < 200 ? 1 : 37)) {
            unsigned d = 0;
            try {
                d = forbidden_d(sigma, w);
            } catch (const std::invalid_argument&) {
                continue;
            }
            if (!root_bracket_holds(sigma, d)) continue;
            const double p = survival_probability(sigma, d, w).convert_to<double>();
            const double lw = std::log(double(w));
            const double middle = 3 * std::pow(1 - lw / w, double(w));
            EXPECT_LE(p, middle) << sigma << "," << w;
            EXPECT_LE(middle, 3.0 / w);
            ++tested;
        }
        EXPECT_GT(tested, 0) << sigma;
    }
}

TEST(CharPoly, Examples) {
    EXPECT_NEAR(char_poly_eval(2, 1, 0.0L), 0.5L, 1e-15L);
    EXPECT_NEAR(char_poly_eval(2, 2, 0.5L), -0.25L, 1e-15L);
}

TEST(CharPoly, MatchesDeterminant) {
    for (unsigned sigma : {2U, 3U, 4U})
        for (unsigned d = 1; d <= 12; ++d)
            for (double lambda : {-1.3, -0.2, 0.0, 0.1, 0.37, 0.9, 1.0, 1.7, 1.0 / sigma}) {
                const auto a = fsm_matrix(sigma, d);
                std::vector<std::vector<double>> m(d, std::vector<double>(d));
                for (unsigned i = 0; i < d; ++i)
                    for (unsigned j = 0; j < d; ++j) m[i][j] = a(i, j).convert_to<double>() - (i == j ? lambda : 0.0);
                EXPECT_NEAR(static_cast<double>(char_poly_eval(sigma, d, lambda)), oracle::determinant(m), 1e-9)
                    << sigma << "," << d << "," << lambda;
            }
}

TEST(DominantRoot, Examples) {
    const auto r = dominant_root(2, 2);
    // lambda^3 - lambda^2 + 1/8 = (lambda - 1/2)(lambda^2 - lambda/2 - 1/4)
    EXPECT_NEAR(static_cast<double>(r.lambda), (1 + std::sqrt(5.0)) / 4, 1e-13);
    EXPECT_GT(r.lambda, 0.75L);
    EXPECT_LT(r.lambda, 0.875L);
    const long double l = r.lambda;
    EXPECT_NEAR(static_cast<double>(l * l * l - l * l + 0.125L), 0.0, 1e-12);

    const auto r8 = dominant_root(2, 8);
    EXPECT_GT(r8.lambda, 1 - std::ldexp(1.0L, -8));
    EXPECT_LT(r8.lambda, 1 - std::ldexp(1.0L, -9));
}

TEST(DominantRoot, EigenResidual) {
    const long double tol = 1e-14L;
    for (unsigned sigma : {2U, 3U, 4U, 8U})
        for (unsigned d = 2; d <= 16; ++d) {
            if (!root_bracket_holds(sigma, d)) continue;
            const auto r = dominant_root(sigma, d, tol);
            EXPECT_GT(r.lambda, r.lower);
            EXPECT_LT(r.lambda, r.upper);
            EXPECT_LE(eigen_residual(sigma, d, r.lambda), 10 * tol) << sigma << "," << d;
        }
}

TEST(DominantRoot, BracketFailureIsAnError) {
    EXPECT_FALSE(root_bracket_holds(2, 1));
    EXPECT_THROW(dominant_root(2, 1), bracket_error);
    EXPECT_TRUE(root_bracket_holds(2, 2));
    EXPECT_THROW(dominant_root(2, 3, 0.0L), std::invalid_argument);
}

TEST(DominantRoot, BracketHoldsFromDTwo) {
    for (unsigned sigma = 2; sigma <= 16; ++sigma)
        for (unsigned d = 2; d <= 20; ++d) EXPECT_TRUE(root_bracket_holds(sigma, d)) << sigma << "," << d;
}

TEST(ForbiddenScheme, CompatibleMinimizerDensity) {
    for (unsigned w : {8U, 9U, 10U}) {
        const unsigned d = 1;
        const auto f = build_forbidden_set(2, w, d);
        const auto c = build_compatible_minimizer(f, w - d + 1);
        ASSERT_EQ(c.check, UhsCheck::Holds);
        const auto exact = expected_density(c.scheme);
        ASSERT_EQ(exact.mode, DensityResult::Mode::ExpectedExact);
        EXPECT_LE(exact.density, f.relative_size());
        EXPECT_EQ(build_compatible_minimizer(f, w - d).check, UhsCheck::Fails);
        const auto est = estimate_density(c.scheme, 300'000, 42);
        EXPECT_LE(est.value(), f.relative_size().convert_to<double>() + 3 * est.std_error);
    }
}
