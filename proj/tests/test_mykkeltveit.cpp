#include <gtest/gtest.h>

#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "oracles.hpp"
#include "uhs/analysis.hpp"
#include "uhs/cyclotomic.hpp"
#include "uhs/mykkeltveit.hpp"

using namespace uhs;

namespace {

Kmer word_of(const char* s, unsigned sigma = 2) { return Kmer::parse(s, Alphabet(sigma)); }

Word random_word(std::mt19937_64& rng, unsigned sigma, unsigned w) {
    Word x(w);
    for (auto& s : x) s = static_cast<Symbol>(rng() % sigma);
    return x;
}

// Words with x_i = x_{w-2-i} (indices mod w) have exactly real embeddings.
Word mirrored_word(std::mt19937_64& rng, unsigned sigma, unsigned w) {
    Word x = random_word(rng, sigma, w);
    for (unsigned i = 0; i < w; ++i) x[(2 * w - 2 - i) % w] = x[i];
    return x;
}

Sign reference_im_sign(const Word& x) {
    using F = boost::multiprecision::cpp_bin_float_100;
    const unsigned w = static_cast<unsigned>(x.size());
    const F two_pi = 2 * boost::math::constants::pi<F>();
    F im = 0;
    for (unsigned i = 0; i < w; ++i) im += F(x[i]) * sin(two_pi * ((i + 1) % w) / w);
    if (abs(im) < F(1e-80)) return Sign::Zero;
    return im > 0 ? Sign::Pos : Sign::Neg;
}

}  // namespace

TEST(Cyclotomic, KnownPolynomials) {
    EXPECT_EQ(cyclotomic(1), (IntPoly{-1, 1}));
    EXPECT_EQ(cyclotomic(2), (IntPoly{1, 1}));
    EXPECT_EQ(cyclotomic(4), (IntPoly{1, 0, 1}));
    EXPECT_EQ(cyclotomic(6), (IntPoly{1, -1, 1}));
    EXPECT_EQ(cyclotomic(12), (IntPoly{1, 0, -1, 0, 1}));
    const IntPoly phi105 = cyclotomic(105);
    EXPECT_EQ(phi105.size(), 49U);
    EXPECT_EQ(phi105[7], -2);  // the first coefficient outside {-1, 0, 1}
    EXPECT_THROW(cyclotomic(0), std::invalid_argument);
    EXPECT_THROW(cyclotomic(kMaxCyclotomicOrder + 1), std::invalid_argument);
}

TEST(Cyclotomic, CofactorTimesPhiIsXnMinusOne) {
    for (unsigned n = 1; n <= kMaxCyclotomicOrder; n += (n < 130 ? 1 : 17)) {
        const auto prod = detail::poly_mul(cyclotomic(n), cyclotomic_cofactor(n));
        IntPoly expected(n + 1, 0);
        expected[0] = -1;
        expected[n] = 1;
        EXPECT_EQ(prod, expected) << n;
    }
}

TEST(Cyclotomic, ZeroTest) {
    const RootOfUnityZeroTest t6(6);
    EXPECT_TRUE(t6.vanishes({1, 1, 1, 1, 1, 1}));
    EXPECT_TRUE(t6.vanishes({1, -1, 1, 0, 0, 0}));  // Phi_6(r)
    EXPECT_TRUE(t6.vanishes({1, 0, 0, 1, 0, 0}));   // 1 + r^3
    EXPECT_TRUE(t6.vanishes({0, 1, 0, 0, 1, 0}));   // r + r^4
    EXPECT_TRUE(t6.vanishes({1, 0, 1, 0, 1, 0}));   // 1 + r^2 + r^4
    EXPECT_FALSE(t6.vanishes({1, 0, 0, 0, 0, 0}));
    EXPECT_FALSE(t6.vanishes({1, 1, 0, 0, 0, 0}));
    EXPECT_FALSE(t6.vanishes({0, 1, -1, 0, 0, 0}));
    EXPECT_THROW(t6.vanishes({1, 1}), std::invalid_argument);
}

TEST(Cyclotomic, ZeroTestAgreesWithHighPrecision) {
    using F = boost::multiprecision::cpp_bin_float_100;
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 600; ++trial) {
        const unsigned n = 2 + trial % 40;
        const RootOfUnityZeroTest test(n);
        std::vector<long long> g(n);
        if (trial % 2) {
            // Sums over cosets of a subgroup vanish.
            unsigned d = 2;
            while (n % d) ++d;
            std::fill(g.begin(), g.end(), 0);
            const long long c = 1 + static_cast<long long>(rng() % 3);
            const unsigned shift = static_cast<unsigned>(rng() % n);
            for (unsigned e = 0; e < n; e += n / d) g[(e + shift) % n] += c;
            if (trial % 4 == 1) g[rng() % n] += 1;
        } else {
            for (auto& v : g) v = static_cast<long long>(rng() % 5) - 2;
        }
        const F two_pi = 2 * boost::math::constants::pi<F>();
        F re = 0, im = 0;
        for (unsigned e = 0; e < n; ++e) {
            re += F(g[e]) * cos(two_pi * e / n);
            im += F(g[e]) * sin(two_pi * e / n);
        }
        const bool zero = abs(re) < F(1e-80) && abs(im) < F(1e-80);
        EXPECT_EQ(test.vanishes(g), zero) << "n=" << n << " trial=" << trial;
    }
}

TEST(Embedding, Examples) {
    for (unsigned w = 2; w <= 9; ++w) {
        EXPECT_LT(std::abs(embedding(Kmer::from_word(Word(w, 0), 2)).value()), 1e-15L);
        EXPECT_LT(std::abs(embedding(Kmer::from_word(Word(w, 1), 2)).value()), 1e-15L);
        EXPECT_EQ(embedding(Kmer::from_word(Word(w, 1), 3)).im_sign, Sign::Zero);
    }
    const auto p10 = embedding(word_of("10"));
    EXPECT_NEAR(static_cast<double>(p10.re), -1.0, 1e-15);
    EXPECT_EQ(p10.im, 0.0L);
    const auto p1000 = embedding(word_of("1000"));
    EXPECT_EQ(p1000.im_sign, Sign::Pos);
    EXPECT_NEAR(static_cast<double>(p1000.im), 1.0, 1e-15);
    EXPECT_NEAR(static_cast<double>(p1000.re), 0.0, 1e-15);
}

TEST(Embedding, ImSignExamples) {
    EXPECT_EQ(im_sign(word_of("01")), Sign::Zero);
    EXPECT_EQ(im_sign(word_of("1000")), Sign::Pos);
    EXPECT_EQ(im_sign(word_of("0001")), Sign::Zero);
    EXPECT_EQ(im_sign(word_of("0010")), Sign::Neg);
}

TEST(Embedding, CertifiedSignMatchesHighPrecision) {
    std::mt19937_64 rng(123);
    int zeros = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const unsigned sigma = 2 + trial % 3;
        const unsigned w = 2 + trial % 63;
        const Word x = trial % 3 == 0 ? mirrored_word(rng, sigma, w) : random_word(rng, sigma, w);
        const Embedding emb(sigma, w);
        const Sign s = emb.im_sign(x);
        EXPECT_EQ(s, reference_im_sign(x)) << format_word(x, Alphabet(sigma));
        zeros += s == Sign::Zero;
        if (trial % 3 == 0) {
            EXPECT_EQ(s, Sign::Zero);
        }
    }
    EXPECT_GE(zeros, 1000);
}

TEST(Embedding, ZeroImaginaryPartsAreExactlyCyclotomic) {
    // Im(P(x)) = 0 can happen without mirror symmetry when w has several prime
    // factors; the exact test must agree with 100-digit evaluation there too.
    for (unsigned w : {6U, 10U, 12U}) {
        const Embedding emb(2, w);
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << w); ++code) {
            const Word x = decode(code, 2, w);
            ASSERT_EQ(emb.im_sign(x), reference_im_sign(x)) << w << " " << format_word(x, Alphabet(2));
        }
    }
}

TEST(Weight, Examples) {
    EXPECT_EQ(weight(word_of("0110")), 2U);
    EXPECT_EQ(weight(word_of("0000")), 0U);
    EXPECT_EQ(weight(word_of("11111")), 5U);
    EXPECT_EQ(weight(word_of("2102", 3)), 5U);
}

TEST(WeightIn, Examples) {
    EXPECT_LT(std::abs(weight_in_embedding(word_of("000"))), 1e-15L);
    EXPECT_LT(std::abs(weight_in_embedding(word_of("11111")) + 5.0L), 1e-15L);
}

TEST(WeightIn, RotationPivotsAroundWeight) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const unsigned w = 3 + trial % 20;
        const Kmer x = Kmer::from_word(random_word(rng, 2, w), 2);
        const auto q = weight_in_embedding(x);
        const auto qr = weight_in_embedding(x.pure_rotation());
        const long double t = weight(x);
        const auto pivot = std::complex<long double>(-t, 0);
        const auto expected = pivot + std::polar(1.0L, -2 * std::numbers::pi_v<long double> / w) * (q - pivot);
        EXPECT_LT(std::abs(qr - expected), 1e-12L);
    }
}

TEST(RotationIdentity, Holds) {
    EXPECT_TRUE(rotation_identity_check(word_of("0110"), 0));
    EXPECT_TRUE(rotation_identity_check(word_of("000"), 1));
    const auto zero = Kmer::from_word(Word(5, 0), 3);
    EXPECT_NEAR(static_cast<double>(embedding(zero.successor(2)).re), 2.0, 1e-12);
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 500; ++trial) {
        const unsigned sigma = 2 + trial % 3;
        const unsigned w = 1 + trial % 63;
        const Kmer x = Kmer::from_word(random_word(rng, sigma, w), sigma);
        for (unsigned a = 0; a < sigma; ++a) EXPECT_TRUE(rotation_identity_check(x, static_cast<Symbol>(a), 1e-9L));
    }
}

TEST(Complement, NegatesEmbedding) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const unsigned sigma = 2 + trial % 3;
        const unsigned w = 2 + trial % 30;
        const Kmer x = Kmer::from_word(random_word(rng, sigma, w), sigma);
        const Kmer y = complement(x);
        EXPECT_EQ(complement(y), x);
        EXPECT_LT(std::abs(embedding(x).value() + embedding(y).value()), 1e-12L);
        const Sign sx = embedding(x).im_sign, sy = embedding(y).im_sign;
        EXPECT_EQ(static_cast<int>(sx), -static_cast<int>(sy));
    }
}

TEST(MykkeltveitSet, SmallExample) {
    const auto m = build_mykkeltveit_set(2, 2);
    KmerSet expected(2, 2);
    for (const char* s : {"00", "10", "11"}) expected.insert(word_of(s));
    EXPECT_EQ(m, expected);
    EXPECT_TRUE(is_mykkeltveit_member(word_of("10")));
    EXPECT_FALSE(is_mykkeltveit_member(word_of("01")));
}

TEST(MykkeltveitSet, OnePerClassAndDecycling) {
    for (unsigned sigma : {2U, 3U, 4U})
        for (unsigned w = 2; w <= 16; ++w) {
            if (oracle::ipow(sigma, w) > (1U << 16)) break;
            MykkeltveitStats stats;
            const auto m = build_mykkeltveit_set(sigma, w, {}, &stats);
            EXPECT_EQ(code_t{m.cardinality()}, necklace_count(sigma, w));
            EXPECT_EQ(stats.by_clause[0] + stats.by_clause[1] + stats.by_clause[2], m.cardinality());
            const auto classes = enumerate_classes(sigma, w);
            std::vector<int> hits(classes.class_count(), 0);
            for (auto x : m.members()) ++hits[classes.class_of[x]];
            EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
            EXPECT_TRUE(is_decycling(m)) << sigma << "," << w;
            EXPECT_EQ(m.relative_size(), Rational(BigInt(to_string(necklace_count(sigma, w))), big_pow(sigma, w)));
        }
}

TEST(MykkeltveitSet, PicksSitOnOrBelowNegativeAxis) {
    for (unsigned w = 2; w <= 12; ++w) {
        const Embedding emb(2, w);
        const auto m = build_mykkeltveit_set(2, w);
        for (auto code : m.members()) {
            const Word x = decode(code, 2, w);
            const Sign s = emb.im_sign(x);
            if (emb.at_origin(x)) continue;
            EXPECT_NE(s, Sign::Pos);
            if (s == Sign::Zero) {
                EXPECT_EQ(emb.re_sign(x), Sign::Neg);
            }
            EXPECT_EQ(is_mykkeltveit_member(emb, x), true);
        }
    }
}

TEST(MykkeltveitSet, MembershipAgreesWithSet) {
    for (unsigned w = 3; w <= 10; ++w) {
        const auto m = build_mykkeltveit_set(3, w < 8 ? w : 7);
        const unsigned ww = m.w();
        const Embedding emb(3, ww);
        for (std::uint64_t code = 0; code < m.universe(); ++code)
            ASSERT_EQ(m.contains(code), is_mykkeltveit_member(emb, decode(code, 3, ww)));
    }
}

TEST(MykkeltveitSet, RespectsBudget) {
    EXPECT_THROW(build_mykkeltveit_set(2, 1), std::invalid_argument);
    EXPECT_THROW(build_mykkeltveit_set(2, 22, Budget{1 << 20}), budget_error);
}

TEST(ImaginaryCrossing, RandomAvoidingWalks) {
    std::mt19937_64 rng(2718);
    std::uint64_t walks = 0, crossings = 0;
    for (unsigned w = 3; w <= 16; ++w) {
        const auto m = build_mykkeltveit_set(2, w);
        const Embedding emb(2, w);
        const std::uint64_t n = m.universe();
        const int per_w = 100'000 / 14 + 1;
        for (int walk = 0; walk < per_w; ++walk, ++walks) {
            std::uint64_t v;
            do v = rng() % n;
            while (m.contains(v));
            bool below = false;
            for (unsigned step = 0; step < 3 * w; ++step) {
                const Sign s = emb.im_sign(decode(v, 2, w));
                if (below) {
                    ASSERT_NE(s, Sign::Pos) << "w=" << w;
                } else if (s != Sign::Pos) {
                    below = true;
                    ++crossings;
                }
                const std::uint64_t next = (v * 2) % n;
                const bool ok0 = !m.contains(next), ok1 = !m.contains(next + 1);
                if (!ok0 && !ok1) break;
                v = (ok0 && ok1) ? next + (rng() & 1) : (ok0 ? next : next + 1);
            }
        }
    }
    EXPECT_GE(walks, 100'000U);
    EXPECT_GT(crossings, 1000U);
}
