/**
 * @file
 * @brief Inflation of boundary ghosts by merging shifted copies.
 *
 * Two equivalent constructions are provided. Boundary merge adds signed,
 * shifted copies of a boundary ghost V_n so that overlapping perimeter
 * segments cancel. Tile-then-boundary places copies of the filled tile
 * U_{n-1} and applies the boundary direction once at the end. Both preserve
 * every zero-projection direction of the base ghost.
 */

#pragma once

#include "ghostmark/boundary.hpp"
#include "ghostmark/ghost_builder.hpp"
#include "ghostmark/lattice.hpp"
#include "ghostmark/shift_sets.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ghostmark {

/// Raised when a copy would meet an equal-signed cell instead of cancelling it.
class collision_error : public error {
  public:
    collision_error(std::optional<std::size_t> step, vec2 shift, const std::string &what) :
        error{ (step ? "step " + std::to_string(*step) + ": " : std::string{}) + "shift " + to_string(shift) + " " + what },
        step_{ step } {}

    [[nodiscard]] std::optional<std::size_t> step() const noexcept { return step_; }

  private:
    std::optional<std::size_t> step_;
};

/**
 * @brief A sign character chi(x, y) = (-1)^(a x + b y) of the lattice.
 *
 * A filled minimal ghost satisfies sign(U(c)) = chi(c); a copy placed at w
 * must then carry polarity chi(w) for the union to keep that pattern.
 */
struct parity_character {
    int a{ 0 };
    int b{ 0 };

    [[nodiscard]] constexpr int operator()(vec2 c) const noexcept {
        const std::int64_t e = a * c.x + b * c.y;
        return (e % 2 == 0) ? 1 : -1;
    }
};

/// The character matching the sign pattern of @p g up to a global sign, if any.
inline std::optional<parity_character> find_parity_character(const signed_grid &g) {
    if (g.empty()) {
        return std::nullopt;
    }
    for (const parity_character chi : { parity_character{ 1, 0 }, parity_character{ 0, 1 }, parity_character{ 1, 1 },
                                        parity_character{ 0, 0 } }) {
        const auto &[p0, v0] = *g.begin();
        const int s0 = (v0 > 0 ? 1 : -1) * chi(p0);
        const bool ok = std::all_of(g.begin(), g.end(), [&](const auto &c) { return (c.second > 0 ? 1 : -1) == s0 * chi(c.first); });
        if (ok) {
            return chi;
        }
    }
    return std::nullopt;
}

/**
 * @brief Sign k such that base + k * shift(base, w) cancels every overlapping cell.
 *
 * Returns nullopt when the copies do not overlap; throws collision_error when
 * some overlapping cells would cancel and others would not.
 */
inline std::optional<int> copy_polarity(const signed_grid &base, const signed_grid &copy, vec2 w) {
    std::optional<int> k;
    for (const auto &[p, v] : copy) {
        const auto b = base.at(p + w);
        if (b == 0) {
            continue;
        }
        const int needed = (b > 0) == (v > 0) ? -1 : 1;
        if (k && *k != needed) {
            throw collision_error{ std::nullopt, w, "overlaps with mixed sign relations" };
        }
        k = needed;
    }
    return k;
}

/**
 * @brief Merges @p base with a copy of itself shifted by @p w.
 *
 * The copy is negated when needed so that the overlapping segment cancels.
 * A shift with no overlap, or one producing a value of magnitude above 1, is
 * rejected.
 */
inline signed_grid merge(const signed_grid &base, vec2 w) {
    const auto k = copy_polarity(base, base, w);
    if (!k) {
        throw collision_error{ std::nullopt, w, "does not overlap the ghost" };
    }
    signed_grid out = base;
    accumulate(out, base, w, *k);
    if (!is_binary(out)) {
        throw collision_error{ std::nullopt, w, "creates a cell of magnitude 2" };
    }
    return out;
}

/// The six shifts ordered by angle (counter-clockwise from the positive x axis).
inline std::array<vec2, 6> cyclic_order(const shift_triple &t) {
    auto six = t.six();
    auto half = [](vec2 v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; };
    std::sort(six.begin(), six.end(), [&](vec2 l, vec2 r) {
        if (half(l) != half(r)) {
            return half(l) < half(r);
        }
        return cross(l, r) > 0;
    });
    return six;
}

/**
 * @brief Neighbour positions (indices into cyclic_order) for the constant
 *        perimeter patterns with m = 4..7 tiles.
 *
 * m = 7: all six; m = 6: any five; m = 5: four with one tile whose two
 * neighbours are both missing; m = 4: three alternating tiles.
 */
inline std::vector<std::size_t> constant_perimeter_pattern(std::size_t m) {
    switch (m) {
        case 4: return { 0, 2, 4 };
        case 5: return { 0, 1, 2, 4 };
        case 6: return { 0, 1, 2, 3, 4 };
        case 7: return { 0, 1, 2, 3, 4, 5 };
        default: throw error{ "constant perimeter patterns exist for m = 4..7" };
    }
}

/**
 * @brief Sum of @p base and its copies at every shift in @p chosen.
 *
 * Each copy's polarity is fixed by its overlap with the base; when it does
 * not overlap, @p chi (if given) decides.
 */
inline signed_grid surround(const signed_grid &base, std::span<const vec2> chosen, std::optional<parity_character> chi = std::nullopt) {
    signed_grid out = base;
    for (const vec2 w : chosen) {
        auto k = copy_polarity(base, base, w);
        if (!k) {
            if (!chi) {
                throw collision_error{ std::nullopt, w, "does not touch the base and no parity is known" };
            }
            k = (*chi)(w);
        }
        accumulate(out, base, w, *k);
    }
    if (!is_binary(out)) {
        throw collision_error{ std::nullopt, {}, "surround produced a cell of magnitude 2" };
    }
    return out;
}

// ---------------------------------------------------------------------------
// scripts

enum class inflation_method { boundary_merge, tile_then_boundary };

inline std::string_view method_name(inflation_method m) noexcept {
    return m == inflation_method::boundary_merge ? "boundary-merge" : "tile-then-boundary";
}

struct script_step {
    enum class kind {
        merge,  ///< self-merge of the current aggregate at the shift
        place,  ///< add one more base copy (V_n or U_{n-1}) at the absolute shift
    };
    kind op{ kind::merge };
    vec2 shift;

    friend bool operator==(const script_step &, const script_step &) = default;
};

struct inflation_script {
    ghost_recipe base;
    std::vector<script_step> steps;
    inflation_method method{ inflation_method::boundary_merge };
    std::optional<std::uint64_t> seed;
};

struct step_stat {
    std::size_t step{ 0 };
    std::size_t cells{ 0 };
    std::optional<std::int64_t> area;
};

struct script_result {
    signed_grid ghost;
    std::vector<step_stat> trace;
};

/**
 * @brief Replays an inflation script.
 *
 * The base recipe must carry a boundary direction. Any collision aborts with
 * the 1-based index of the offending step.
 */
inline script_result run_script(const inflation_script &script) {
    if (!script.base.boundary) {
        throw error{ "inflation needs a base recipe with a boundary direction" };
    }
    const direction bdir = *script.base.boundary;
    const build_result built = build_ghost_traced(script.base);
    const auto chi = find_parity_character(built.filled);
    script_result res;

    auto area_of = [&](const signed_grid &g) -> std::optional<std::int64_t> {
        try {
            return enclosed_area(g, bdir);
        } catch (const malformed_boundary &) {
            return std::nullopt;
        }
    };

    if (script.method == inflation_method::boundary_merge) {
        signed_grid agg = built.ghost;
        res.trace.push_back({ 0, agg.size(), area_of(agg) });
        for (std::size_t i = 0; i < script.steps.size(); ++i) {
            const script_step &s = script.steps[i];
            try {
                if (s.op == script_step::kind::merge) {
                    agg = merge(agg, s.shift);
                } else {
                    auto k = copy_polarity(agg, built.ghost, s.shift);
                    if (!k) {
                        if (!chi) {
                            throw collision_error{ std::nullopt, s.shift, "does not touch the aggregate and no parity is known" };
                        }
                        k = (*chi)(s.shift);
                    }
                    accumulate(agg, built.ghost, s.shift, *k);
                    if (!is_binary(agg)) {
                        throw collision_error{ std::nullopt, s.shift, "creates a cell of magnitude 2" };
                    }
                }
            } catch (const collision_error &e) {
                throw collision_error{ i + 1, s.shift, e.what() };
            }
            res.trace.push_back({ i + 1, agg.size(), area_of(agg) });
        }
        res.ghost = std::move(agg);
        return res;
    }

    if (!chi) {
        throw error{ "tile-then-boundary needs a tile with a parity sign pattern" };
    }
    signed_grid tiles = built.filled;
    res.trace.push_back({ 0, tiles.size(), std::nullopt });
    for (std::size_t i = 0; i < script.steps.size(); ++i) {
        const script_step &s = script.steps[i];
        const signed_grid &piece = s.op == script_step::kind::merge ? tiles : built.filled;
        const bool touches = std::any_of(piece.begin(), piece.end(), [&](const auto &c) {
            const vec2 q = c.first + s.shift;
            return tiles.contains(q + vec2{ 1, 0 }) || tiles.contains(q - vec2{ 1, 0 }) || tiles.contains(q + vec2{ 0, 1 }) ||
                   tiles.contains(q - vec2{ 0, 1 });
        });
        if (support_overlap(tiles, shift(piece, s.shift)) != 0) {
            throw collision_error{ i + 1, s.shift, "places a tile on occupied cells" };
        }
        if (!touches) {
            throw collision_error{ i + 1, s.shift, "places a tile not edge-adjacent to the tiling" };
        }
        signed_grid copy = piece;
        accumulate(tiles, copy, s.shift, chi->operator()(s.shift));
        res.trace.push_back({ i + 1, tiles.size(), std::nullopt });
    }
    res.ghost = dilate(tiles, bdir);
    res.trace.back().cells = res.ghost.size();
    res.trace.back().area = area_of(res.ghost);
    return res;
}

/**
 * @brief Text form: a header, the base manifest, optional method/seed, then steps.
 *
 * ```
 * inflation v1
 * recipe v1 family=a n=8 recursions=----- boundary=0,1
 * method boundary-merge
 * seed 42
 * place 14 10
 * step 30 -6
 * ```
 * `step dx dy` self-merges the aggregate; `place dx dy` adds a base copy.
 */
inline std::string to_text(const inflation_script &s) {
    std::ostringstream os;
    os << "inflation v1\n" << to_manifest(s.base) << "\nmethod " << method_name(s.method) << '\n';
    if (s.seed) {
        os << "seed " << *s.seed << '\n';
    }
    for (const script_step &st : s.steps) {
        os << (st.op == script_step::kind::merge ? "step " : "place ") << st.shift.x << ' ' << st.shift.y << '\n';
    }
    return os.str();
}

inline inflation_script parse_script(std::istream &in) {
    inflation_script s;
    std::string line;
    bool header = false;
    bool have_base = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls{ line };
        std::string word;
        ls >> word;
        if (!header) {
            std::string ver;
            ls >> ver;
            if (word != "inflation" || ver != "v1") {
                throw error{ "inflation script must start with 'inflation v1'" };
            }
            header = true;
        } else if (word == "recipe") {
            s.base = parse_manifest(line);
            have_base = true;
        } else if (word == "method") {
            std::string m;
            ls >> m;
            if (m == "boundary-merge") {
                s.method = inflation_method::boundary_merge;
            } else if (m == "tile-then-boundary") {
                s.method = inflation_method::tile_then_boundary;
            } else {
                throw error{ "unknown inflation method '" + m + "'" };
            }
        } else if (word == "seed") {
            std::uint64_t v = 0;
            if (!(ls >> v)) {
                throw error{ "invalid seed line" };
            }
            s.seed = v;
        } else if (word == "step" || word == "place") {
            vec2 v;
            if (!(ls >> v.x >> v.y)) {
                throw error{ "invalid step line: " + line };
            }
            s.steps.push_back({ word == "step" ? script_step::kind::merge : script_step::kind::place, v });
        } else {
            throw error{ "unknown script line: " + line };
        }
    }
    if (!header || !have_base) {
        throw error{ "inflation script needs a header and a recipe line" };
    }
    return s;
}

// ---------------------------------------------------------------------------
// random walks

/// splitmix64 finalizer; derives independent seeds for walk restarts.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t attempt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (attempt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::size_t random_walk_retries = 64;

struct random_walk_result {
    signed_grid ghost;
    inflation_script script;
    std::size_t attempts{ 1 };
};

/**
 * @brief Self-avoiding random walk over the six-neighbour tile lattice.
 *
 * Tile positions are integer combinations of the adjacency shifts; every
 * position is used at most once. Each placement is a U_{n-1} tile and the
 * boundary direction is applied once at the end. A walk with no free
 * neighbour restarts from a derived seed, at most random_walk_retries times.
 *
 * @p first_move, if set, forces the first step to that adjacency shift.
 */
inline random_walk_result random_walk_inflate(family f, std::size_t n, std::size_t tiles, std::uint64_t seed,
                                              std::optional<vec2> first_move = std::nullopt) {
    if (tiles < 1) {
        throw error{ "random walk needs at least one tile" };
    }
    if (n < 3) {
        throw error{ "random walk inflation needs n >= 3" };
    }
    const shift_triple adj = family_shifts(f, n, shift_set::adjacency);
    // lattice basis: e1 = adj[0], e2 = adj[2], and adj[1] = e1 + e2
    const std::array<std::pair<int, int>, 6> moves{ { { 1, 0 }, { 1, 1 }, { 0, 1 }, { -1, 0 }, { -1, -1 }, { 0, -1 } } };
    auto to_vec = [&](std::pair<std::int64_t, std::int64_t> ij) { return ij.first * adj[0] + ij.second * adj[2]; };

    for (std::size_t attempt = 0; attempt < random_walk_retries; ++attempt) {
        std::mt19937_64 rng{ derive_seed(seed, attempt) };
        std::set<std::pair<std::int64_t, std::int64_t>> visited{ { 0, 0 } };
        std::vector<std::pair<std::int64_t, std::int64_t>> path{ { 0, 0 } };
        bool trapped = false;
        while (path.size() < tiles) {
            const auto cur = path.back();
            std::vector<std::pair<std::int64_t, std::int64_t>> free;
            for (const auto &[di, dj] : moves) {
                const std::pair<std::int64_t, std::int64_t> nxt{ cur.first + di, cur.second + dj };
                if (!visited.contains(nxt)) {
                    free.push_back(nxt);
                }
            }
            if (path.size() == 1 && first_move) {
                free.erase(std::remove_if(free.begin(), free.end(), [&](auto ij) { return to_vec(ij) != *first_move; }), free.end());
                if (free.empty()) {
                    throw error{ "forced first move is not an adjacency shift" };
                }
            }
            if (free.empty()) {
                trapped = true;
                break;
            }
            const auto pick = free[static_cast<std::size_t>(rng() % free.size())];
            visited.insert(pick);
            path.push_back(pick);
        }
        if (trapped) {
            continue;
        }
        random_walk_result res;
        res.script.base = family_recipe(f, n - 1, true);
        res.script.method = inflation_method::tile_then_boundary;
        res.script.seed = seed;
        for (std::size_t i = 1; i < path.size(); ++i) {
            res.script.steps.push_back({ script_step::kind::place, to_vec(path[i]) });
        }
        res.ghost = run_script(res.script).ghost;
        res.attempts = attempt + 1;
        return res;
    }
    throw error{ "random walk trapped after " + std::to_string(random_walk_retries) + " attempts" };
}

// ---------------------------------------------------------------------------
// linear tilings

/**
 * @brief True iff the lattice {a t1 + b t2} tiles the plane with @p tile.
 *
 * Requires |det(t1, t2)| = |tile| and checks that every cell of a test
 * window several periods wide is covered exactly once.
 */
inline bool tiling_check(const signed_grid &tile, vec2 t1, vec2 t2) {
    if (tile.empty()) {
        throw error{ "tiling check of an empty tile" };
    }
    const std::int64_t det = cross(t1, t2);
    if (det == 0 || static_cast<std::size_t>(std::llabs(det)) != tile.size()) {
        return false;
    }
    const rect box = *tile.bbox();
    const std::int64_t reach = std::max<std::int64_t>({ box.width(), box.height(), std::llabs(t1.x) + std::llabs(t2.x),
                                          std::llabs(t1.y) + std::llabs(t2.y) }) * 2;
    for (std::int64_t y = -reach; y <= reach; ++y) {
        for (std::int64_t x = -reach; x <= reach; ++x) {
            std::size_t hits = 0;
            for (const auto &[s, v] : tile) {
                const vec2 d = vec2{ x, y } - s;
                const std::int64_t a = cross(d, t2);
                const std::int64_t b = cross(t1, d);
                if (a % det == 0 && b % det == 0) {
                    ++hits;
                }
            }
            if (hits != 1) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace ghostmark
