#include "ghostmark/inflation.hpp"
#include "ghostmark/shift_sets.hpp"

#include <gtest/gtest.h>

using namespace ghostmark;

TEST(ShiftSets, AdjacencyShiftsOfV8a) {
    const shift_triple t = family_shifts(family::a, 8, shift_set::adjacency);
    EXPECT_EQ(t[0], (vec2{ -3, 7 }));
    EXPECT_EQ(t[1], (vec2{ 14, 10 }));
    EXPECT_EQ(t[2], (vec2{ 17, 3 }));
}

TEST(ShiftSets, AlternateShiftsOfV8aAreThePairShifts) {
    const shift_triple t = family_shifts(family::a, 8, shift_set::alternate);
    EXPECT_EQ(t[0], (vec2{ 14, 10 }));
    EXPECT_EQ(t[1], (vec2{ 10, -2 }));
    EXPECT_EQ(t[2], (vec2{ -4, -12 }));
}

TEST(ShiftSets, SixVectorsAreCentrallySymmetric) {
    const auto six = family_shifts(family::b, 9, shift_set::adjacency).six();
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(six[i], -six[i + 3]);
    }
}

TEST(ShiftSets, MiddleAdjacencyShiftIsSumOfTheOuterOnes) {
    for (const family f : all_families) {
        for (std::size_t n = 3; n <= 14; ++n) {
            const shift_triple t = family_shifts(f, n, shift_set::adjacency);
            EXPECT_EQ(t[0] + t[2], t[1]);
        }
    }
}

TEST(ShiftSets, AdjacencyShiftsTileThePlaneWithTheMinimalGhost) {
    // |det| must equal the tile size and the translates must cover a window once
    for (const family f : all_families) {
        for (std::size_t n = 3; n <= 9; ++n) {
            const signed_grid u = minimal_ghost(f, n - 1);
            const shift_triple t = family_shifts(f, n, shift_set::adjacency);
            EXPECT_EQ(std::llabs(cross(t[0], t[2])), static_cast<std::int64_t>(u.size()));
            EXPECT_TRUE(tiling_check(u, t[0], t[2])) << family_tag(f) << " n=" << n;
        }
    }
}

TEST(ShiftSets, SmallIndicesUseBackExtendedVectors) {
    // V_2^a: U_1 = {(0,0), (1,0)}; v_0 = (v_1 - v_2) / 2 = (0, -1/2)
    const shift_triple adj = family_shifts(family::a, 2, shift_set::adjacency);
    EXPECT_EQ(adj[0], (vec2{ 1, 1 }));
    EXPECT_EQ(adj[1], (vec2{ 2, 0 }));
    EXPECT_EQ(adj[2], (vec2{ 1, -1 }));
    const shift_triple alt3 = family_shifts(family::a, 3, shift_set::alternate);
    EXPECT_EQ(alt3[2], (vec2{ 0, -2 }));
    EXPECT_THROW((void) family_shifts(family::a, 1, shift_set::adjacency), error);
}

TEST(ShiftSets, ExplicitListsNeedTwoVectors) {
    const std::vector<direction> one{ { 1, 0 } };
    EXPECT_THROW((void) adjacency_shifts(one), error);
}
