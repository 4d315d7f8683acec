#include "ghostmark/constructions.hpp"
#include "ghostmark/watermark.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace ghostmark;

namespace {

image8 noisy(std::int64_t w, std::int64_t h, std::uint64_t seed) {
    std::mt19937_64 rng{ seed };
    std::vector<std::uint8_t> px(static_cast<std::size_t>(w * h));
    for (auto &p : px) {
        p = static_cast<std::uint8_t>(20 + rng() % 200);
    }
    return { w, h, std::move(px) };
}

struct fixture {
    image8 original = noisy(61, 47, 5);
    inflation_script script = constant_perimeter_script(family::a, 7, 5);
    signed_grid ghost = run_script(script).ghost;
    vec2 offset = -ghost.bbox()->min + vec2{ 6, 5 };
    embed_result marked = embed(original, ghost, offset, { transform_kind::mt, {}, {}, to_text(script) });
};

}  // namespace

TEST(Embed, ProjectionsAlongGhostDirectionsAreBitIdentical) {
    const fixture f;
    for (const direction d : f.marked.record.ghost_directions) {
        EXPECT_EQ(mojette(f.marked.image, d), mojette(f.original, d));
    }
    EXPECT_EQ(f.marked.record.ghost_directions, canonical_unique(f.script.base.zero_directions()));
}

TEST(Embed, SumIsPreservedAndSubtractingTheGhostRestoresTheImage) {
    const fixture f;
    EXPECT_EQ(f.marked.image.sum(), f.original.sum());
    const auto restored = subtract_ghost(f.marked.image, f.ghost, f.offset);
    EXPECT_EQ(restored, as_values(f.original));
    EXPECT_NE(f.marked.image, f.original);
}

TEST(Embed, RangeAndFrameErrors) {
    const signed_grid g = boundary_ghost(family::a, 5);
    const vec2 at = -g.bbox()->min;
    EXPECT_NO_THROW((void) embed(image8{ 20, 20, 128 }, g, at));
    try {
        (void) embed(image8{ 20, 20, 255 }, g, at);
        FAIL() << "expected range_violation";
    } catch (const range_violation &e) {
        EXPECT_EQ(e.pixels().size(), g.size() / 2);
    }
    EXPECT_THROW((void) embed(image8{ 20, 20, 0 }, g, at), range_violation);
    EXPECT_THROW((void) embed(image8{ 20, 20, 128 }, g, at + vec2{ 15, 0 }), error);
    EXPECT_THROW((void) embed(image8{ 20, 20, 128 }, signed_grid{}, {}), error);
}

TEST(Embed, RejectsDirectionsTheGridIsNotAGhostFor) {
    const signed_grid g = boundary_ghost(family::a, 5);
    embed_options opt;
    opt.ghost_directions = { { 2, 1 } };
    EXPECT_THROW((void) embed(image8{ 20, 20, 128 }, g, -g.bbox()->min, opt), error);
}

TEST(Embed, DetectsGhostDirectionsOfABareGrid) {
    const auto recipe = family_recipe(family::b, 5, true);
    const signed_grid g = build_ghost(recipe);
    const auto found = detect_ghost_directions(g);
    for (const direction d : canonical_unique(recipe.zero_directions())) {
        EXPECT_NE(std::find(found.begin(), found.end(), d), found.end()) << to_string(d);
    }
    const auto r = embed(image8{ 30, 30, 100 }, g, -g.bbox()->min + vec2{ 2, 2 });
    EXPECT_EQ(r.record.ghost_directions, found);
}

TEST(Verify, UntouchedImageIsAuthentic) {
    const fixture f;
    const auto rep = verify(f.marked.image, f.marked.record);
    EXPECT_EQ(rep.result, verdict::authentic);
    EXPECT_TRUE(rep.extrema_match);
    for (const auto &[c, d] : rep.ghost_angle_diffs) {
        EXPECT_EQ(d, 0);
    }
}

TEST(Verify, SinglePixelEditsAreNeverAuthentic) {
    const fixture f;
    std::mt19937_64 rng{ 77 };
    for (int trial = 0; trial < 100; ++trial) {
        image8 t = f.marked.image;
        const vec2 c{ static_cast<std::int64_t>(rng() % 61), static_cast<std::int64_t>(rng() % 47) };
        const int old = t.at(c);
        int now = static_cast<int>(rng() % 256);
        if (now == old) {
            now = (old + 1) % 256;
        }
        t.set(c, static_cast<std::uint8_t>(now));
        const auto rep = verify(t, f.marked.record);
        EXPECT_EQ(rep.result, verdict::tampered) << "pixel " << to_string(c);
    }
}

TEST(Verify, SecondGhostIsReportedAsRemarked) {
    const fixture f;
    const signed_grid extra = boundary_ghost(family::a, 7);
    const vec2 at = -extra.bbox()->min + vec2{ 35, 2 };
    const image8 twice = add_ghost(f.marked.image, extra, at);
    const auto rep = verify(twice, f.marked.record);
    EXPECT_EQ(rep.result, verdict::re_marked);
    for (const auto &[c, d] : rep.ghost_angle_diffs) {
        EXPECT_EQ(d, 0);
    }
    EXPECT_FALSE(rep.extrema_match);
}

TEST(Verify, FrameMismatchIsAnError) {
    const fixture f;
    EXPECT_THROW((void) verify(image8{ 10, 10, 1 }, f.marked.record), error);
}

TEST(Verify, FrtRecordsWork) {
    const image8 img = noisy(31, 31, 9);
    const auto recipe = family_recipe(family::a, 6, true);
    const signed_grid g = build_ghost(recipe);
    embed_options opt;
    opt.transform = transform_kind::frt;
    opt.source = to_manifest(recipe) + "\n";
    const auto r = embed(img, g, -g.bbox()->min + vec2{ 4, 4 }, opt);
    EXPECT_EQ(r.record.check.size() + r.record.ghost_bins.size(), 32U);
    EXPECT_EQ(verify(r.image, r.record).result, verdict::authentic);
    image8 t = r.image;
    t.set({ 0, 0 }, static_cast<std::uint8_t>(t.at({ 0, 0 }) ^ 1U));
    EXPECT_EQ(verify(t, r.record).result, verdict::tampered);
    EXPECT_THROW((void) embed(noisy(30, 30, 1), g, -g.bbox()->min, opt), error);
}

TEST(Record, TextRoundTripPreservesVerification) {
    const fixture f;
    std::ostringstream os;
    write_record(os, f.marked.record);
    std::istringstream in{ os.str() };
    const watermark_record back = read_record(in);
    EXPECT_EQ(back.ghost_directions, f.marked.record.ghost_directions);
    EXPECT_EQ(back.placement, f.marked.record.placement);
    EXPECT_EQ(back.check, f.marked.record.check);
    EXPECT_EQ(back.recorded, f.marked.record.recorded);
    EXPECT_EQ(back.rotated, f.marked.record.rotated);
    EXPECT_EQ(back.source, f.marked.record.source);
    EXPECT_EQ(verify(f.marked.image, back).result, verdict::authentic);
    std::ostringstream again;
    write_record(again, back);
    EXPECT_EQ(again.str(), os.str());
    EXPECT_NE(os.str().find("extrema 1 0 "), std::string::npos);
}

TEST(Record, MalformedInputIsRejected) {
    std::istringstream a{ "wmr v2\n" };
    EXPECT_THROW((void) read_record(a), error);
    std::istringstream b{ "wmr v1\ntransform mt\nbogus 1\n" };
    EXPECT_THROW((void) read_record(b), error);
    std::istringstream c{ "wmr v1\ntransform mt\n" };
    EXPECT_THROW((void) read_record(c), error);
    std::istringstream d{ "wmr v1\nframe 3 3\n" };
    EXPECT_THROW((void) read_record(d), error);
}

TEST(PlanPlacement, UniformImageTakesTheFirstOffset) {
    const signed_grid g = boundary_ghost(family::a, 6);
    EXPECT_EQ(plan_placement(image8{ 40, 40, 128 }, g), -g.bbox()->min);
}

TEST(PlanPlacement, AvoidsSaturatedPixelsLikeAnExhaustiveScan) {
    const signed_grid g = boundary_ghost(family::a, 6);
    image8 img{ 40, 30, 128 };
    for (std::int64_t y = 0; y < 30; ++y) {
        for (std::int64_t x = 0; x < 12; ++x) {
            img.set({ x, y }, 255);
        }
    }
    const vec2 off = plan_placement(img, g);
    EXPECT_TRUE(range_conflicts(img, g, off).empty());
    // first feasible offset in (y, x) scan order, found independently
    std::optional<vec2> first;
    const rect b = *g.bbox();
    for (std::int64_t oy = -b.min.y; !first && oy + b.max.y < 30; ++oy) {
        for (std::int64_t ox = -b.min.x; ox + b.max.x < 40; ++ox) {
            bool ok = true;
            for (const auto &[c, v] : g) {
                const vec2 p = c + vec2{ ox, oy };
                ok = ok && !(v > 0 && img.at(p) == 255);
            }
            if (ok) {
                first = vec2{ ox, oy };
                break;
            }
        }
    }
    ASSERT_TRUE(first.has_value());
    EXPECT_EQ(off, *first);
}

TEST(PlanPlacement, MinimisesMaskWeight) {
    const signed_grid g = boundary_ghost(family::a, 5);
    const image8 img{ 24, 24, 128 };
    image8 mask{ 24, 24, 0 };
    for (std::int64_t y = 6; y < 18; ++y) {
        for (std::int64_t x = 6; x < 18; ++x) {
            mask.set({ x, y }, 9);
        }
    }
    const vec2 off = plan_placement(img, g, mask);
    auto weight = [&](vec2 o) {
        std::int64_t w = 0;
        for (const auto &[c, v] : g) {
            w += mask.at(c + o);
        }
        return w;
    };
    const rect b = *g.bbox();
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t oy = -b.min.y; oy + b.max.y < 24; ++oy) {
        for (std::int64_t ox = -b.min.x; ox + b.max.x < 24; ++ox) {
            best = std::min(best, weight({ ox, oy }));
        }
    }
    EXPECT_EQ(weight(off), best);
    EXPECT_THROW((void) plan_placement(image8{ 3, 3, 128 }, g), error);
    EXPECT_THROW((void) plan_placement(img, g, image8{ 5, 5, 0 }), error);
}
