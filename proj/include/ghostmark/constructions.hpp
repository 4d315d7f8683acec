/**
 * @file
 * @brief Named constructions: the worked example tiles, the inflated W_8 ghosts
 *        and the segment/perimeter/area table of V_3^a .. V_8^a.
 */

#pragma once

#include "ghostmark/boundary.hpp"
#include "ghostmark/ghost_builder.hpp"
#include "ghostmark/inflation.hpp"
#include "ghostmark/lattice.hpp"
#include "ghostmark/shift_sets.hpp"

#include <numeric>
#include <ostream>
#include <vector>

namespace ghostmark {

/// Ten directions with a 40-pixel binary ghost in a 17 x 17 box.
inline std::vector<direction> s10_directions() {
    return { { 0, -1 }, { 1, 0 }, { 1, -1 }, { 1, 1 }, { 1, -2 }, { 2, -1 }, { 1, -4 }, { 4, -1 }, { 2, -3 }, { 3, -2 } };
}

inline ghost_recipe s10_recipe() {
    ghost_recipe r;
    r.directions = s10_directions();
    r.require_overwrite_free = false;
    return r;
}

/// The 8-pixel tile in a 5 x 3 box that tiles the plane with (3,1) and (2,-2).
inline signed_grid tile_t8() {
    return { { { 1, 2 }, 1 }, { { 2, 2 }, 1 }, { { 0, 1 }, 1 }, { { 1, 1 }, 1 },
             { { 2, 1 }, 1 }, { { 3, 1 }, 1 }, { { 4, 1 }, 1 }, { { 2, 0 }, 1 } };
}

/// tile_t8 with a chosen sign pattern.
inline signed_grid signed_tile_t8() {
    return { { { 1, 2 }, 1 }, { { 2, 2 }, -1 }, { { 0, 1 }, 1 }, { { 1, 1 }, 1 },
             { { 2, 1 }, -1 }, { { 3, 1 }, 1 }, { { 4, 1 }, -1 }, { { 2, 0 }, 1 } };
}

/// The 12-pixel alternating tile in a 3 x 6 box.
inline signed_grid tile_t12() {
    return { { { 2, 5 }, 1 },  { { 1, 4 }, -1 }, { { 2, 4 }, 1 },  { { 0, 3 }, 1 },
             { { 1, 3 }, -1 }, { { 2, 3 }, 1 },  { { 0, 2 }, 1 },  { { 1, 2 }, -1 },
             { { 2, 2 }, 1 },  { { 0, 1 }, 1 },  { { 1, 1 }, -1 }, { { 0, 0 }, 1 } };
}

/// Shift vectors that grow tile_t12; (-3,-3) is a multiple of the line direction (1,1).
inline std::vector<vec2> tile_t12_shifts() { return { { 1, -3 }, { -3, -3 }, { -5, 3 }, { 1, 9 }, { 11, 3 } }; }

/// Zero-sum directions of the grown tile (primitive forms of the shifts).
inline std::vector<direction> tile_t12_directions() {
    std::vector<direction> out;
    for (const vec2 v : tile_t12_shifts()) {
        const std::int64_t g = std::gcd(v.x, v.y);
        out.emplace_back(v.x / g, v.y / g);
    }
    return out;
}

/// tile_t12 dilated by each of tile_t12_shifts(); optionally hollowed along (0,1).
inline signed_grid tile_t12_ghost(bool with_boundary) {
    signed_grid g = tile_t12();
    for (const vec2 v : tile_t12_shifts()) {
        if (!overwrite_free(g, v)) {
            throw overwrite_error{ 0, v };
        }
        g = dilate(g, v);
    }
    if (with_boundary) {
        g = dilate(g, direction{ 0, 1 });
    }
    return g;
}

// ---------------------------------------------------------------------------
// inflated W_8 ghosts

/// Boundary-merge script placing V_8 copies at all six shifts of one set: W_8(7).
inline inflation_script w8_surround_script(family f, shift_set which) {
    inflation_script s;
    s.base = family_recipe(f, 7, true);
    const shift_triple t = family_shifts(f, 8, which);
    for (const vec2 w : cyclic_order(t)) {
        s.steps.push_back({ script_step::kind::place, w });
    }
    return s;
}

/// W_8(7) from the alternate set plus V_8 copies at +-(w1' + w2'): W_8(9).
inline inflation_script w8_nine_script(family f) {
    inflation_script s = w8_surround_script(f, shift_set::alternate);
    const shift_triple t = family_shifts(f, 8, shift_set::alternate);
    s.steps.push_back({ script_step::kind::place, t[0] + t[1] });
    s.steps.push_back({ script_step::kind::place, -(t[0] + t[1]) });
    return s;
}

/// Candidate self-merge shifts that double W_8(9): 3 w2' and w1' + w2'.
inline std::vector<vec2> w8_eighteen_candidates(family f) {
    const shift_triple t = family_shifts(f, 8, shift_set::alternate);
    return { 3 * t[1], t[0] + t[1] };
}

/**
 * @brief W_8(9) self-merged into W_8(18).
 *
 * Tries the candidate shifts in order and keeps the first that merges
 * cleanly into 220 cells covering 2414 pixels. @p chosen receives the shift.
 */
inline inflation_script w8_eighteen_script(family f, vec2 *chosen = nullptr) {
    const inflation_script nine = w8_nine_script(f);
    for (const vec2 w : w8_eighteen_candidates(f)) {
        inflation_script s = nine;
        s.steps.push_back({ script_step::kind::merge, w });
        try {
            const script_result r = run_script(s);
            if (r.ghost.size() == 220 && r.trace.back().area == 2414) {
                if (chosen != nullptr) {
                    *chosen = w;
                }
                return s;
            }
        } catch (const error &) {
            // candidate does not merge; try the next one
        }
    }
    throw error{ "no candidate shift doubles W_8(9) into W_8(18)" };
}

/// Constant-perimeter inflation W_n(m) (m = 4..7) from the adjacency set.
inline inflation_script constant_perimeter_script(family f, std::size_t n, std::size_t m) {
    inflation_script s;
    s.base = family_recipe(f, n - 1, true);
    const auto ring = cyclic_order(family_shifts(f, n, shift_set::adjacency));
    for (const std::size_t i : constant_perimeter_pattern(m)) {
        s.steps.push_back({ script_step::kind::place, ring[i] });
    }
    return s;
}

// ---------------------------------------------------------------------------
// segment table

struct segment_table_row {
    std::size_t n{ 0 };
    direction v;  ///< last direction of U_{n-1}
    segment_triple adjacency{};
    segment_triple alternate{};
    std::int64_t perimeter{ 0 };
    std::int64_t area{ 0 };
};

/// Measured rows for V_n^a, n = first .. last.
inline std::vector<segment_table_row> segment_table(std::size_t first = 3, std::size_t last = 8) {
    std::vector<segment_table_row> rows;
    for (std::size_t n = first; n <= last; ++n) {
        const signed_grid v = boundary_ghost(family::a, n);
        const auto seq = direction_sequence(family::a, n - 1);
        rows.push_back({ n, seq.back(), segment_lengths(v, family_shifts(family::a, n, shift_set::adjacency)),
                         segment_lengths(v, family_shifts(family::a, n, shift_set::alternate)),
                         static_cast<std::int64_t>(perimeter_count(v)), enclosed_area(v, direction{ 0, 1 }) });
    }
    return rows;
}

/// Tab-separated table with a header line.
inline void write_segment_table(std::ostream &os, const std::vector<segment_table_row> &rows) {
    os << "n\tp\tq\ts1\ts2\ts3\ts1'\ts2'\ts3'\tP\tA\n";
    for (const auto &r : rows) {
        os << r.n << '\t' << r.v.p() << '\t' << r.v.q();
        for (const auto s : r.adjacency) {
            os << '\t' << s;
        }
        for (const auto s : r.alternate) {
            os << '\t' << s;
        }
        os << '\t' << r.perimeter << '\t' << r.area << '\n';
    }
}

}  // namespace ghostmark
