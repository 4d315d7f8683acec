#include "ghostmark/boundary.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace ghostmark;

namespace {

signed_grid ones(std::initializer_list<vec2> cells) {
    signed_grid g;
    for (const vec2 c : cells) {
        g.set(c, 1);
    }
    return g;
}

/// Cells covered by the minimal ghost or its translate along the boundary direction.
std::int64_t union_area(family f, std::size_t n) {
    const signed_grid u = minimal_ghost(f, n - 1);
    std::set<vec2> cells;
    for (const auto &[c, v] : u) {
        cells.insert(c);
        cells.insert(c + boundary_direction(f).vec());
    }
    return static_cast<std::int64_t>(cells.size());
}

}  // namespace

TEST(Connectivity, DistinguishesFourEightAndHoles) {
    const auto line = connectivity(ones({ { 0, 0 }, { 1, 0 }, { 2, 0 } }));
    EXPECT_TRUE(line.four_connected);
    EXPECT_TRUE(line.simply_connected);
    EXPECT_EQ(line.max_gap_sq, 1);

    const auto diag = connectivity(ones({ { 0, 0 }, { 1, 1 } }));
    EXPECT_FALSE(diag.four_connected);
    EXPECT_TRUE(diag.eight_connected);
    EXPECT_EQ(diag.max_gap_sq, 2);

    const auto ring = connectivity(ones({ { 0, 0 }, { 1, 0 }, { 2, 0 }, { 0, 1 }, { 2, 1 }, { 0, 2 }, { 1, 2 }, { 2, 2 } }));
    EXPECT_TRUE(ring.four_connected);
    EXPECT_FALSE(ring.simply_connected);

    const auto far = connectivity(ones({ { 0, 0 }, { 2, 1 } }));
    EXPECT_FALSE(far.eight_connected);
    EXPECT_EQ(far.max_gap_sq, 5);
    EXPECT_FALSE(far.alternating.has_value());

    EXPECT_THROW((void) connectivity(signed_grid{}), error);
}

TEST(Connectivity, MinimalGhostsAreSimplyConnected) {
    for (const family f : all_families) {
        for (std::size_t n = 2; n <= 10; ++n) {
            EXPECT_TRUE(connectivity(minimal_ghost(f, n)).simply_connected) << family_tag(f) << " n=" << n;
        }
    }
}

TEST(Connectivity, ColumnFamilyBoundariesAlternateInSign) {
    for (const family f : { family::a, family::a_prime }) {
        for (std::size_t n = 3; n <= 12; ++n) {
            const auto c = connectivity(boundary_ghost(f, n));
            EXPECT_TRUE(c.eight_connected);
            ASSERT_TRUE(c.alternating.has_value());
            EXPECT_TRUE(*c.alternating) << family_tag(f) << " n=" << n;
        }
    }
}

TEST(Perimeter, RecursionMatchesMeasuredCountsUpToSixteen) {
    for (std::size_t n = 3; n <= 16; ++n) {
        EXPECT_EQ(static_cast<std::int64_t>(perimeter_count(boundary_ghost(family::a, n))), predicted_perimeter(n)) << n;
    }
    EXPECT_EQ(predicted_perimeter(8), 48);
    EXPECT_EQ(predicted_area(8), 152);
}

TEST(EnclosedArea, EqualsTheUnionOfTileAndItsBoundaryTranslate) {
    for (const family f : all_families) {
        for (std::size_t n = 3; n <= 13; ++n) {
            const signed_grid v = boundary_ghost(f, n);
            EXPECT_EQ(enclosed_area(v, boundary_direction(f)), union_area(f, n)) << family_tag(f) << " n=" << n;
        }
    }
}

TEST(EnclosedArea, RejectsUnpairableLines) {
    EXPECT_THROW((void) enclosed_area(ones({ { 0, 0 } }), direction{ 0, 1 }), malformed_boundary);
    EXPECT_THROW((void) enclosed_area(ones({ { 0, 0 }, { 0, 3 } }), direction{ 0, 1 }), malformed_boundary);
    const signed_grid ok{ { { 0, 0 }, 1 }, { { 0, 3 }, -1 } };
    EXPECT_EQ(enclosed_area(ok, direction{ 0, 1 }), 4);
    const signed_grid diag{ { { 0, 0 }, 1 }, { { -2, 2 }, -1 } };
    EXPECT_EQ(enclosed_area(diag, direction{ -1, 1 }), 3);
}

TEST(Segments, PublishedTableForColumnFamily) {
    const segment_triple adj[] = { { 2, 1, 0 }, { 1, 2, 1 }, { 4, 1, 2 }, { 5, 4, 1 }, { 6, 5, 4 }, { 13, 6, 5 } };
    const segment_triple alt[] = { { 1, 1, 1 }, { 2, 2, 0 }, { 1, 5, 1 }, { 4, 4, 2 }, { 5, 9, 1 }, { 6, 14, 4 } };
    const std::int64_t perim[] = { 6, 8, 14, 20, 30, 48 };
    const std::int64_t area[] = { 7, 12, 23, 42, 79, 152 };
    for (std::size_t n = 3; n <= 8; ++n) {
        const auto p = family_profile(family::a, n, shift_set::adjacency);
        const auto q = family_profile(family::a, n, shift_set::alternate);
        EXPECT_EQ(p.lengths, adj[n - 3]) << n;
        EXPECT_EQ(q.lengths, alt[n - 3]) << n;
        EXPECT_EQ(p.perimeter, perim[n - 3]);
        EXPECT_EQ(p.area, area[n - 3]);
    }
}

TEST(Segments, TwiceTheirSumIsThePerimeter) {
    for (std::size_t n = 3; n <= 14; ++n) {
        for (const auto which : { shift_set::adjacency, shift_set::alternate }) {
            const auto p = family_profile(family::a, n, which);
            EXPECT_EQ(2 * (p.lengths[0] + p.lengths[1] + p.lengths[2]), p.perimeter) << n;
        }
    }
}

TEST(Segments, RecursionsPredictMeasuredLengths) {
    for (std::size_t n = 3; n <= 14; ++n) {
        EXPECT_EQ(predicted_segments(n, shift_set::adjacency), family_profile(family::a, n, shift_set::adjacency).lengths) << n;
        EXPECT_EQ(predicted_segments(n, shift_set::alternate), family_profile(family::a, n, shift_set::alternate).lengths) << n;
    }
    EXPECT_THROW((void) predicted_segments(2, shift_set::adjacency), error);
}

TEST(Segments, ThreeTermRecursionFromMeasuredValues) {
    std::vector<segment_triple> s(13);
    for (std::size_t n = 2; n <= 12; ++n) {
        s[n] = segment_lengths(boundary_ghost(family::a, n), family_shifts(family::a, n, shift_set::adjacency));
    }
    for (std::size_t n = 5; n <= 12; ++n) {
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_EQ(s[n][i], s[n - 2][i] + 2 * s[n - 3][i]) << "n=" << n << " i=" << i;
        }
    }
}
