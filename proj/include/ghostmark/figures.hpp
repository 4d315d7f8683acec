/**
 * @file
 * @brief Regenerates the objects behind the published figures, with the
 *        numbers their captions state.
 */

#pragma once

#include "ghostmark/boundary.hpp"
#include "ghostmark/constructions.hpp"
#include "ghostmark/imageio.hpp"
#include "ghostmark/inflation.hpp"
#include "ghostmark/projections.hpp"
#include "ghostmark/watermark.hpp"

#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ghostmark {

struct figure_info {
    std::string_view id;
    std::string_view summary;
};

/// Figure ids understood by reproduce_figure, with the numbers each one asserts.
inline constexpr figure_info figure_catalog[] = {
    { "fig1", "S_10: 40 pixels in a 17x17 box, zero sums in 10 directions" },
    { "fig3a", "12-pixel tile grown by 5 shifts: 384 pixels, 24x27 box" },
    { "fig3b", "its boundary ghost along (0,1): 52 pixels, 24x28 box, area 410" },
    { "fig4", "U_7^a 128 pixels 20x13; V_8^a 48 pixels, area 152" },
    { "fig5", "U_7^a' 128 pixels 22x13; V_8^a' 52 pixels, area 154" },
    { "fig6", "U_7^b 128 pixels 16x13; V_8^b 48 pixels area 152; V_8^b' 52 pixels area 154" },
    { "fig7", "V_8^a pairs at (14,10),(10,-2),(-4,-12): perimeters 84,68,88, areas 298,290,300" },
    { "fig8", "W_8(m) for m=4..7: perimeter 144, areas 584,712,840,968; W_8(7) of families a and b" },
    { "fig9a", "W_8(9): 160 pixels, area 1232" },
    { "fig9b", "W_8(18): 220 pixels, area 2414" },
    { "fig10", "random-walk inflation of V_12^b (seeded): valid 12-direction ghost" },
    { "fig12", "W_8(18) in a 131x131 image: MT max-abs diffs, exactly 8 zeros" },
    { "fig13", "same embedding: FRT row diffs, exactly 8 zero rows of 132" },
};

struct figure_image {
    std::string name;
    image8 image;
};

struct figure_output {
    std::string id;
    /// `key=value` pairs separated by spaces.
    std::string stats;
    std::vector<figure_image> images;
    /// Optional table (fig12, fig13).
    std::string tsv;
};

struct figure_options {
    std::uint64_t seed{ 1 };
    /// 131x131 host image for fig12/fig13; a seeded synthetic image otherwise.
    std::optional<image8> host;
    std::int64_t scale{ 4 };
    /// Tiles for fig10.
    std::size_t walk_tiles{ 10 };
};

/// Deterministic smooth-ish test image with values in 1..254.
inline image8 synthetic_image(std::int64_t width, std::int64_t height, std::uint64_t seed) {
    std::mt19937_64 rng{ seed };
    std::vector<std::uint8_t> px(static_cast<std::size_t>(width * height));
    for (std::int64_t row = 0; row < height; ++row) {
        for (std::int64_t col = 0; col < width; ++col) {
            const std::int64_t base = 40 + (col * 150) / width + (row * 50) / height;
            const auto noise = static_cast<std::int64_t>(rng() % 21) - 10;
            px[static_cast<std::size_t>(row * width + col)] = static_cast<std::uint8_t>(std::clamp<std::int64_t>(base + noise, 1, 254));
        }
    }
    return { width, height, std::move(px) };
}

/// Watermarking setup shared by fig12 and fig13.
struct signature_setup {
    image8 original;
    image8 marked;
    signed_grid ghost;
    vec2 offset;
    std::vector<direction> ghost_directions;
};

inline signature_setup w8_signature_setup(const figure_options &opt) {
    signature_setup s;
    s.original = opt.host.value_or(synthetic_image(131, 131, opt.seed));
    if (s.original.width() != 131 || s.original.height() != 131) {
        throw error{ "fig12/fig13 need a 131x131 host image" };
    }
    const inflation_script script = w8_eighteen_script(family::a);
    s.ghost = run_script(script).ghost;
    s.ghost_directions = canonical_unique(script.base.zero_directions());
    s.offset = plan_placement(s.original, s.ghost);
    s.marked = add_ghost(s.original, s.ghost, s.offset);
    return s;
}

/// Per direction of the sufficient set: max |MT(marked) - MT(original)|.
inline std::vector<std::pair<direction, std::int64_t>> mt_signature(const signature_setup &s) {
    const auto dirs = sufficient_angle_set(s.original.width(), s.original.height(), s.ghost_directions);
    std::vector<mojette_projection> a;
    std::vector<mojette_projection> b;
    for (const direction d : dirs) {
        a.push_back(mojette(s.original, d));
        b.push_back(mojette(s.marked, d));
    }
    return projection_max_abs_diff(a, b);
}

/// Per FRT row: max |FRT(marked) - FRT(original)|.
inline std::vector<std::int64_t> frt_signature(const signature_setup &s) {
    return projection_max_abs_diff(frt(s.original, s.original.width()), frt(s.marked, s.original.width()));
}

namespace detail {

inline std::string box_text(const signed_grid &g) {
    const auto b = g.bbox();
    return b ? std::to_string(b->width()) + "x" + std::to_string(b->height()) : "0x0";
}

inline std::string area_text(const std::optional<std::int64_t> &a) { return a ? std::to_string(*a) : "-"; }

}  // namespace detail

inline figure_output reproduce_figure(std::string_view id, const figure_options &opt = {}) {
    figure_output out{ std::string{ id }, {}, {}, {} };
    const render_style style{ opt.scale };
    std::ostringstream st;
    auto add = [&](const std::string &name, const signed_grid &g) { out.images.push_back({ name, render_ghost(g, style) }); };

    if (id == "fig1") {
        const signed_grid g = build_ghost(s10_recipe());
        st << "cells=" << g.size() << " box=" << detail::box_text(g) << " zero_dirs=" << (is_ghost_for(g, s10_directions()) ? 10 : 0);
        add("fig1", g);
    } else if (id == "fig3a" || id == "fig3b") {
        const bool hollow = id == "fig3b";
        const signed_grid g = tile_t12_ghost(hollow);
        st << "cells=" << g.size() << " box=" << detail::box_text(g);
        if (hollow) {
            st << " area=" << enclosed_area(g, direction{ 0, 1 });
        }
        add(std::string{ id }, g);
    } else if (id == "fig4" || id == "fig5" || id == "fig6") {
        std::vector<family> fams;
        if (id == "fig4") {
            fams = { family::a };
        } else if (id == "fig5") {
            fams = { family::a_prime };
        } else {
            fams = { family::b, family::b_prime };
        }
        const signed_grid u = minimal_ghost(fams.front(), 7);
        st << "U7_cells=" << u.size() << " U7_box=" << detail::box_text(u);
        add(std::string{ id } + "_U7", u);
        for (const family f : fams) {
            const signed_grid v = boundary_ghost(f, 8);
            const std::string tag = f == family::a_prime ? "ap" : f == family::b_prime ? "bp" : std::string{ family_tag(f) };
            st << " V8" << tag << "_cells=" << v.size() << " V8" << tag << "_box=" << detail::box_text(v) << " V8" << tag
               << "_area=" << enclosed_area(v, boundary_direction(f));
            add(std::string{ id } + "_V8" + tag, v);
        }
    } else if (id == "fig7") {
        const signed_grid v = boundary_ghost(family::a, 8);
        const char tag[] = { 'a', 'b', 'c' };
        int i = 0;
        for (const vec2 w : { vec2{ 14, 10 }, vec2{ 10, -2 }, vec2{ -4, -12 } }) {
            const signed_grid g = merge(v, w);
            st << (i ? " " : "") << tag[i] << "_shift=" << w.x << ',' << w.y << ' ' << tag[i] << "_perimeter=" << g.size() << ' ' << tag[i]
               << "_area=" << enclosed_area(g, direction{ 0, 1 });
            add(std::string{ "fig7" } + tag[i], g);
            ++i;
        }
    } else if (id == "fig8") {
        for (std::size_t m = 4; m <= 7; ++m) {
            const script_result r = run_script(constant_perimeter_script(family::b, 8, m));
            st << (m == 4 ? "" : " ") << "m" << m << "_perimeter=" << r.ghost.size() << " m" << m << "_area=" << detail::area_text(r.trace.back().area);
            add("fig8_m" + std::to_string(m), r.ghost);
        }
        for (const family f : { family::a, family::b }) {
            const script_result r = run_script(w8_surround_script(f, shift_set::adjacency));
            st << " W7" << family_tag(f) << "_perimeter=" << r.ghost.size() << " W7" << family_tag(f) << "_area=" << detail::area_text(r.trace.back().area);
            add(std::string{ "fig8_W7" } + std::string{ family_tag(f) }, r.ghost);
        }
    } else if (id == "fig9a") {
        const script_result r = run_script(w8_nine_script(family::a));
        st << "cells=" << r.ghost.size() << " area=" << detail::area_text(r.trace.back().area) << " box=" << detail::box_text(r.ghost);
        add("fig9a", r.ghost);
    } else if (id == "fig9b") {
        vec2 w;
        const script_result r = run_script(w8_eighteen_script(family::a, &w));
        st << "cells=" << r.ghost.size() << " area=" << detail::area_text(r.trace.back().area) << " box=" << detail::box_text(r.ghost)
           << " shift=" << w.x << ',' << w.y;
        add("fig9b", r.ghost);
    } else if (id == "fig10") {
        const random_walk_result r = random_walk_inflate(family::b, 12, opt.walk_tiles, opt.seed, std::nullopt);
        const script_result replay = run_script(r.script);
        st << "tiles=" << opt.walk_tiles << " cells=" << r.ghost.size() << " area=" << detail::area_text(replay.trace.back().area)
           << " box=" << detail::box_text(r.ghost) << " seed=" << opt.seed << " attempts=" << r.attempts;
        add("fig10", r.ghost);
    } else if (id == "fig12") {
        const signature_setup s = w8_signature_setup(opt);
        std::ostringstream tsv;
        tsv << "index\tp\tq\tmax_abs_diff\n";
        std::size_t zeros = 0;
        std::size_t idx = 1;
        for (const auto &[d, diff] : mt_signature(s)) {
            tsv << idx++ << '\t' << d.p() << '\t' << d.q() << '\t' << diff << '\n';
            zeros += diff == 0 ? 1 : 0;
        }
        out.tsv = tsv.str();
        st << "directions=" << idx - 1 << " zeros=" << zeros << " offset=" << s.offset.x << ',' << s.offset.y;
        out.images.push_back({ "fig12_marked", s.marked });
    } else if (id == "fig13") {
        const signature_setup s = w8_signature_setup(opt);
        std::ostringstream tsv;
        tsv << "row\tmax_abs_diff\n";
        std::size_t zeros = 0;
        const auto diffs = frt_signature(s);
        for (std::size_t r = 0; r < diffs.size(); ++r) {
            tsv << r << '\t' << diffs[r] << '\n';
            zeros += diffs[r] == 0 ? 1 : 0;
        }
        out.tsv = tsv.str();
        st << "rows=" << diffs.size() << " zeros=" << zeros << " offset=" << s.offset.x << ',' << s.offset.y;
        out.images.push_back({ "fig13_marked", s.marked });
    } else {
        throw error{ "unknown figure id '" + std::string{ id } + "'" };
    }
    out.stats = st.str();
    return out;
}

}  // namespace ghostmark
