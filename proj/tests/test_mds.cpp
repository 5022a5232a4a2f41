#include <gtest/gtest.h>

#include <set>

#include "uhs/analysis.hpp"
#include "uhs/mds.hpp"
#include "uhs/mykkeltveit.hpp"

using namespace uhs;

namespace {

// Every one-per-class selection, checked with the full decycling test.
std::uint64_t brute_force_count(unsigned w) {
    const auto table = enumerate_classes(2, w);
    std::vector<std::size_t> choice(table.class_count(), 0);
    std::uint64_t count = 0;
    for (;;) {
        KmerSet s(2, w);
        for (std::size_t c = 0; c < choice.size(); ++c) s.insert(table.members(c)[choice[c]]);
        count += is_decycling(s);
        std::size_t c = 0;
        while (c < choice.size() && ++choice[c] == table.size[c]) choice[c++] = 0;
        if (c == choice.size()) break;
    }
    return count;
}

}  // namespace

TEST(Mds, PublishedCounts) {
    EXPECT_EQ(enumerate_mds(2, 2).mds_count, 2U);
    EXPECT_EQ(enumerate_mds(2, 3).mds_count, 4U);
    EXPECT_EQ(enumerate_mds(2, 4).mds_count, 30U);
    EXPECT_EQ(enumerate_mds(2, 5).mds_count, 28U);
}

TEST(Mds, MatchesBruteForce) {
    for (unsigned w = 1; w <= 5; ++w) EXPECT_EQ(enumerate_mds(2, w).mds_count, brute_force_count(w)) << w;
}

TEST(Mds, EmittedSetsAreMinimumDecycling) {
    for (unsigned w = 2; w <= 5; ++w) {
        const auto table = enumerate_classes(2, w);
        std::set<std::vector<std::uint64_t>> seen;
        const auto census = enumerate_mds(2, w, [&](const KmerSet& s) {
            EXPECT_EQ(code_t{s.cardinality()}, necklace_count(2, w));
            std::vector<int> per_class(table.class_count(), 0);
            for (auto x : s.members()) ++per_class[table.class_of[x]];
            EXPECT_TRUE(std::all_of(per_class.begin(), per_class.end(), [](int n) { return n == 1; }));
            EXPECT_TRUE(is_decycling(s));
            EXPECT_TRUE(seen.insert(s.members()).second);
        });
        EXPECT_EQ(seen.size(), census.mds_count);
        EXPECT_GT(census.nodes_explored, census.mds_count);
    }
}

TEST(Mds, ContainsMykkeltveitSet) {
    for (unsigned w = 2; w <= 5; ++w) {
        const auto m = build_mykkeltveit_set(2, w);
        bool found = false;
        enumerate_mds(2, w, [&](const KmerSet& s) { found = found || s == m; });
        EXPECT_TRUE(found) << w;
    }
}

TEST(Mds, Caps) {
    EXPECT_THROW(enumerate_mds(2, 6), budget_error);
    EXPECT_THROW(enumerate_mds(2, 8, {}, 8), std::invalid_argument);
    EXPECT_THROW(enumerate_mds(3, 3), std::invalid_argument);
    EXPECT_THROW(enumerate_mds(2, 0), std::invalid_argument);
}

TEST(Mds, OptInSix) { EXPECT_EQ(enumerate_mds(2, 6, {}, 6).mds_count, 68288U); }
