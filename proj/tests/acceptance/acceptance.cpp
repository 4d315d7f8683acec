// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. An optional argument names a 131x131 PGM used
// as the host image for the watermark criteria (a seeded synthetic image
// otherwise).

#include "ghostmark/constructions.hpp"
#include "ghostmark/figures.hpp"
#include "ghostmark/imageio.hpp"
#include "ghostmark/watermark.hpp"

#include "../unit/oracles.hpp"

#include <chrono>
#include <deque>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace ghostmark;

namespace {

int failures = 0;

/// Collects the first mismatch of a criterion so the summary line can show it.
struct check {
    std::string first_problem;
    void expect(bool ok, const std::string &what) {
        if (!ok && first_problem.empty()) {
            first_problem = what;
        }
    }
};

void report(int id, const std::string &title, const check &c, const std::string &detail = {}) {
    const bool ok = c.first_problem.empty();
    failures += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title;
    if (!ok) {
        std::cout << " -- " << c.first_problem;
    } else if (!detail.empty()) {
        std::cout << " (" << detail << ")";
    }
    std::cout << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << s << "s";
    return os.str();
}

/// Cells enclosed by a closed boundary: everything in the padded bbox that a
/// 4-connected flood from outside cannot reach, including the boundary itself.
std::int64_t filled_area(const signed_grid &g) {
    const oracle::dense d{ g };
    const std::int64_t w = d.w + 2;
    const std::int64_t h = d.h + 2;
    std::vector<char> outside(static_cast<std::size_t>(w * h), 0);
    auto wall = [&](std::int64_t x, std::int64_t y) {
        const std::int64_t gx = x - 1 + d.x0;
        const std::int64_t gy = y - 1 + d.y0;
        return d.inside(gx, gy) && d.at(gx, gy) != 0;
    };
    std::deque<std::pair<std::int64_t, std::int64_t>> todo{ { 0, 0 } };
    outside[0] = 1;
    while (!todo.empty()) {
        const auto [x, y] = todo.front();
        todo.pop_front();
        const std::pair<std::int64_t, std::int64_t> next[] = { { x + 1, y }, { x - 1, y }, { x, y + 1 }, { x, y - 1 } };
        for (const auto &[nx, ny] : next) {
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) {
                continue;
            }
            auto &seen = outside[static_cast<std::size_t>(ny * w + nx)];
            if (seen == 0 && !wall(nx, ny)) {
                seen = 1;
                todo.emplace_back(nx, ny);
            }
        }
    }
    std::int64_t inside = 0;
    for (const char o : outside) {
        inside += o == 0 ? 1 : 0;
    }
    return inside;
}

bool brute_force_ghost(const signed_grid &g, const std::vector<direction> &dirs) {
    for (const direction d : dirs) {
        if (!oracle::walked_zero(g, d.p(), d.q())) {
            return false;
        }
    }
    return !g.empty();
}

std::string box(const signed_grid &g) {
    return std::to_string(g.bbox()->width()) + "x" + std::to_string(g.bbox()->height());
}

// ---------------------------------------------------------------------------

void criterion_table() {
    check c;
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream actual;
    write_segment_table(actual, segment_table(3, 8));
    const double took = seconds_since(t0);

    std::ifstream golden{ std::string{ GHOSTMARK_GOLDEN_DIR } + "/table5.tsv" };
    c.expect(static_cast<bool>(golden), "golden table5.tsv not found");
    std::string gline;
    std::string aline;
    std::istringstream as{ actual.str() };
    std::getline(golden, gline);
    std::getline(as, aline);
    c.expect(gline == aline, "header differs");
    std::size_t entries = 0;
    while (std::getline(golden, gline)) {
        std::getline(as, aline);
        std::istringstream gs{ gline };
        std::istringstream ls{ aline };
        std::int64_t n = 0;
        std::int64_t m = 0;
        gs >> n;
        ls >> m;
        c.expect(n == m, "row order differs at n=" + std::to_string(n));
        // the direction (p, q) counts as one entry, then eight numbers
        std::int64_t gp = 0, gq = 0, ap = 0, aq = 0;
        gs >> gp >> gq;
        ls >> ap >> aq;
        c.expect(gp == ap && gq == aq, "direction mismatch in row '" + gline + "'");
        ++entries;
        for (int col = 0; col < 8; ++col) {
            std::int64_t want = 0;
            std::int64_t got = -1;
            gs >> want;
            ls >> got;
            c.expect(want == got, "entry mismatch in row '" + gline + "' vs '" + aline + "'");
            ++entries;
        }
    }
    c.expect(entries == 54, "expected 54 entries, found " + std::to_string(entries));
    c.expect(took < 1.0, "table took " + fmt_seconds(took));
    report(1, "segment table matches all 54 entries", c, std::to_string(entries) + " entries, " + fmt_seconds(took));
}

void criterion_geometry() {
    check c;
    const std::tuple<family, std::size_t, std::string> u_cases[] = { { family::a, 128, "20x13" }, { family::a_prime, 128, "22x13" }, { family::b, 128, "16x13" } };
    for (const auto &[f, cells, b] : u_cases) {
        const signed_grid u = minimal_ghost(f, 7);
        c.expect(u.size() == cells && box(u) == b, "U_7^" + std::string{ family_tag(f) } + " has " + std::to_string(u.size()) + " cells in " + box(u));
    }
    const std::tuple<family, std::size_t, std::int64_t> v_cases[] = { { family::a, 48, 152 }, { family::a_prime, 52, 154 }, { family::b, 48, 152 }, { family::b_prime, 52, 154 } };
    for (const auto &[f, cells, area] : v_cases) {
        const signed_grid v = boundary_ghost(f, 8);
        const std::int64_t a = enclosed_area(v, boundary_direction(f));
        c.expect(v.size() == cells && a == area, "V_8^" + std::string{ family_tag(f) } + " has " + std::to_string(v.size()) + " cells, area " + std::to_string(a));
    }
    report(2, "minimal and boundary ghost geometry", c);
}

void criterion_zero_projections() {
    check c;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t ghosts = 0;
    for (const family f : all_families) {
        for (std::size_t n = 3; n <= 12; ++n) {
            const auto u_recipe = family_recipe(f, n, false);
            const auto v_recipe = family_recipe(f, n - 1, true);
            c.expect(brute_force_ghost(build_ghost(u_recipe), u_recipe.zero_directions()), "U_" + std::to_string(n) + "^" + std::string{ family_tag(f) });
            c.expect(brute_force_ghost(build_ghost(v_recipe), v_recipe.zero_directions()), "V_" + std::to_string(n) + "^" + std::string{ family_tag(f) });
            ghosts += 2;
        }
    }
    const double took = seconds_since(t0);
    c.expect(took < 5.0, "brute force took " + fmt_seconds(took));
    report(3, "every U and V ghost has zero line sums (brute force)", c, std::to_string(ghosts) + " ghosts, " + fmt_seconds(took));
}

void criterion_inflation() {
    check c;
    const signed_grid v = boundary_ghost(family::a, 8);
    const std::tuple<vec2, std::size_t, std::int64_t> pairs[] = { { { 14, 10 }, 84, 298 }, { { 10, -2 }, 68, 290 }, { { -4, -12 }, 88, 300 } };
    for (const auto &[w, p, a] : pairs) {
        const signed_grid g = merge(v, w);
        const std::int64_t area = enclosed_area(g, direction{ 0, 1 });
        c.expect(g.size() == p && area == a, "pair at " + to_string(w) + ": " + std::to_string(g.size()) + "/" + std::to_string(area));
    }
    const std::int64_t areas[] = { 584, 712, 840, 968 };
    for (std::size_t m = 4; m <= 7; ++m) {
        const script_result r = run_script(constant_perimeter_script(family::a, 8, m));
        c.expect(r.ghost.size() == 144 && r.trace.back().area == areas[m - 4], "pattern m=" + std::to_string(m) + ": " + std::to_string(r.ghost.size()));
    }
    const script_result nine = run_script(w8_nine_script(family::a));
    c.expect(nine.ghost.size() == 160 && nine.trace.back().area == 1232, "nine-copy ghost " + std::to_string(nine.ghost.size()));
    const script_result eighteen = run_script(w8_eighteen_script(family::a));
    c.expect(eighteen.ghost.size() == 220 && eighteen.trace.back().area == 2414, "eighteen-copy ghost " + std::to_string(eighteen.ghost.size()));
    report(4, "inflation perimeters and areas", c);
}

void criterion_recursions() {
    check c;
    for (std::size_t n = 3; n <= 16; ++n) {
        const signed_grid v = boundary_ghost(family::a, n);
        c.expect(static_cast<std::int64_t>(v.size()) == predicted_perimeter(n), "perimeter at n=" + std::to_string(n));
        const std::int64_t filled = filled_area(v);
        c.expect(filled == predicted_area(n), "area at n=" + std::to_string(n) + ": fill " + std::to_string(filled) + " vs " + std::to_string(predicted_area(n)));
    }
    std::vector<segment_triple> s(13);
    for (std::size_t n = 2; n <= 12; ++n) {
        s[n] = segment_lengths(boundary_ghost(family::a, n), family_shifts(family::a, n, shift_set::adjacency));
    }
    for (std::size_t n = 5; n <= 12; ++n) {
        for (std::size_t i = 0; i < 3; ++i) {
            c.expect(s[n][i] == s[n - 2][i] + 2 * s[n - 3][i], "segment recursion at n=" + std::to_string(n));
        }
    }
    report(5, "perimeter, area and segment recursions", c, "n<=16 by fill, segments 5..12");
}

void criterion_s10() {
    check c;
    const signed_grid g = build_ghost(s10_recipe());
    c.expect(g.size() == 40, "cells " + std::to_string(g.size()));
    c.expect(box(g) == "17x17", "box " + box(g));
    c.expect(s10_directions().size() == 10 && brute_force_ghost(g, s10_directions()), "nonzero line sum");
    report(6, "ten-direction ghost", c, std::to_string(g.size()) + " cells, " + box(g));
}

void criteria_watermark(const std::optional<image8> &host) {
    figure_options opt;
    opt.host = host;
    const signature_setup s = w8_signature_setup(opt);
    const auto is_ghost_dir = [&](direction d) {
        return std::find(s.ghost_directions.begin(), s.ghost_directions.end(), d.canonical()) != s.ghost_directions.end();
    };

    {
        check c;
        std::size_t zeros = 0;
        std::size_t total = 0;
        for (const auto &[d, diff] : mt_signature(s)) {
            ++total;
            zeros += diff == 0 ? 1 : 0;
            c.expect(is_ghost_dir(d) ? diff == 0 : diff > 0, "direction " + to_string(d) + " diff " + std::to_string(diff));
        }
        c.expect(zeros == 8, std::to_string(zeros) + " zero directions");
        for (const direction d : s.ghost_directions) {
            c.expect(mojette(s.original, d) == mojette(s.marked, d), "ghost direction " + to_string(d) + " not in the set or changed");
        }
        report(7, "MT signature of the eighteen-copy ghost", c, std::to_string(zeros) + " zeros of " + std::to_string(total) + " directions");
    }
    {
        check c;
        const auto diffs = frt_signature(s);
        std::vector<std::size_t> zero_rows;
        for (std::size_t r = 0; r < diffs.size(); ++r) {
            if (diffs[r] == 0) {
                zero_rows.push_back(r);
            }
        }
        std::vector<std::size_t> expected;
        for (const direction d : s.ghost_directions) {
            expected.push_back(static_cast<std::size_t>(direction_to_frt_row(d, 131)));
        }
        std::sort(expected.begin(), expected.end());
        c.expect(diffs.size() == 132, std::to_string(diffs.size()) + " rows");
        c.expect(zero_rows == expected, std::to_string(zero_rows.size()) + " zero rows, not at the ghost rows");
        report(8, "FRT signature of the eighteen-copy ghost", c, std::to_string(zero_rows.size()) + " zero rows of " + std::to_string(diffs.size()));
    }
    {
        check c;
        embed_options eo;
        eo.source = to_text(w8_eighteen_script(family::a));
        const embed_result r = embed(s.original, s.ghost, s.offset, eo);
        c.expect(verify(r.image, r.record).result == verdict::authentic, "untouched image not authentic");
        std::mt19937_64 rng{ 2024 };
        std::size_t false_authentic = 0;
        for (int trial = 0; trial < 100; ++trial) {
            image8 t = r.image;
            const vec2 p{ static_cast<std::int64_t>(rng() % 131), static_cast<std::int64_t>(rng() % 131) };
            const std::uint8_t old = t.at(p);
            std::uint8_t now = static_cast<std::uint8_t>(rng() % 256);
            if (now == old) {
                now = static_cast<std::uint8_t>(old + 1);
            }
            t.set(p, now);
            false_authentic += verify(t, r.record).result == verdict::authentic ? 1 : 0;
        }
        c.expect(false_authentic == 0, std::to_string(false_authentic) + " edits verified as authentic");
        const signed_grid second = boundary_ghost(family::a, 8);
        const image8 twice = add_ghost(r.image, second, plan_placement(r.image, second));
        const verdict v = verify(twice, r.record).result;
        c.expect(v == verdict::re_marked, std::string{ "second ghost gave " } + std::string{ verdict_name(v) });
        report(9, "tamper detection", c, "100 edits, 0 false authentic; overlay re-marked");
    }
}

void criterion_random_walk() {
    check c;
    const std::size_t n = 12;
    const std::size_t tiles = 100;
    std::size_t largest = 0;
    for (const std::uint64_t seed : { 1U, 2U, 3U }) {
        const random_walk_result r = random_walk_inflate(family::b, n, tiles, seed);
        const auto dirs = r.script.base.zero_directions();
        c.expect(canonical_unique(dirs).size() == 12, "not twelve directions");
        c.expect(is_binary(r.ghost), "values outside +-1 for seed " + std::to_string(seed));
        c.expect(brute_force_ghost(r.ghost, dirs), "nonzero line sum for seed " + std::to_string(seed));
        const script_result replay = run_script(r.script);
        const std::int64_t expected = static_cast<std::int64_t>(tiles) * (std::int64_t{ 1 } << (n - 1)) + static_cast<std::int64_t>(r.ghost.size()) / 2;
        c.expect(replay.ghost == r.ghost, "script replay differs");
        c.expect(replay.trace.back().area == expected, "area bookkeeping for seed " + std::to_string(seed));
        largest = std::max(largest, r.ghost.size());
    }
    report(10, "random-walk inflation of 100 tiles", c, "3 seeds, perimeter up to " + std::to_string(largest));
}

}  // namespace

int main(int argc, char **argv) {
    std::optional<image8> host;
    try {
        if (argc > 1) {
            host = read_pgm(std::filesystem::path{ argv[1] });
        }
        criterion_table();
        criterion_geometry();
        criterion_zero_projections();
        criterion_inflation();
        criterion_recursions();
        criterion_s10();
        criteria_watermark(host);
        criterion_random_walk();
    } catch (const std::exception &e) {
        std::cout << "FAIL aborted: " << e.what() << std::endl;
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
