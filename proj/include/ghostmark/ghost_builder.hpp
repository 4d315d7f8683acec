/**
 * @file
 * @brief Construction of binary ghosts by repeated negate-shift-add dilation.
 *
 * A ghost for directions v_1..v_n is obtained from a start tile S by
 * S_k = S_{k-1} - shift(S_{k-1}, v_k). The minimal ghost families start from
 * a single +1 pixel at the origin and generate their directions from two
 * start vectors with v_k = v_{k-1} -/+ 2 v_{k-2}.
 */

#pragma once

#include "ghostmark/lattice.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ghostmark {

/// Raised when a dilation step would overwrite existing ghost values.
class overwrite_error : public error {
  public:
    overwrite_error(std::size_t step, vec2 shift) :
        error{ "dilation step " + std::to_string(step) + " by " + to_string(shift) + " overwrites existing cells" },
        step_{ step } {}

    /// 1-based index of the offending step.
    [[nodiscard]] std::size_t step() const noexcept { return step_; }

  private:
    std::size_t step_;
};

enum class family { a, a_prime, b, b_prime };

inline constexpr family all_families[] = { family::a, family::a_prime, family::b, family::b_prime };

inline std::string_view family_tag(family f) noexcept {
    switch (f) {
        case family::a: return "a";
        case family::a_prime: return "a'";
        case family::b: return "b";
        case family::b_prime: return "b'";
    }
    return "?";
}

inline family parse_family(std::string_view tag) {
    if (tag == "a") {
        return family::a;
    }
    if (tag == "a'" || tag == "ap" || tag == "a_prime") {
        return family::a_prime;
    }
    if (tag == "b") {
        return family::b;
    }
    if (tag == "b'" || tag == "bp" || tag == "b_prime") {
        return family::b_prime;
    }
    throw error{ "unknown ghost family '" + std::string{ tag } + "'" };
}

struct family_vectors {
    direction v1;
    direction v2;
    direction boundary;
};

inline family_vectors vectors_of(family f) {
    switch (f) {
        case family::a: return { { 1, 0 }, { 1, 1 }, { 0, 1 } };
        case family::a_prime: return { { 1, 0 }, { -1, 1 }, { 0, 1 } };
        case family::b: return { { 1, 0 }, { 0, 1 }, { -1, 1 } };
        case family::b_prime: return { { 1, 0 }, { 0, 1 }, { 1, 1 } };
    }
    throw error{ "invalid family" };
}

inline direction boundary_direction(family f) { return vectors_of(f).boundary; }

/// Recursion used to derive v_k from v_{k-1} and v_{k-2}.
enum class recursion : char {
    minus = '-',  ///< v_k = v_{k-1} - 2 v_{k-2}
    plus = '+',   ///< v_k = v_{k-1} + 2 v_{k-2}
};

inline std::string recursion_string(const std::vector<recursion> &r) {
    std::string s;
    for (const recursion c : r) {
        s.push_back(static_cast<char>(c));
    }
    return s;
}

inline std::vector<recursion> parse_recursions(std::string_view s) {
    std::vector<recursion> r;
    for (const char c : s) {
        if (c == '-') {
            r.push_back(recursion::minus);
        } else if (c == '+') {
            r.push_back(recursion::plus);
        } else {
            throw error{ "recursion string may only contain '-' and '+'" };
        }
    }
    return r;
}

/// Extends two start vectors to @p count directions.
inline std::vector<direction> direction_sequence(direction v1, direction v2, std::size_t count, const std::vector<recursion> &choices) {
    if (count < 2) {
        throw error{ "a direction sequence needs at least two directions" };
    }
    if (choices.size() != count - 2) {
        throw error{ "expected " + std::to_string(count - 2) + " recursion choices, got " + std::to_string(choices.size()) };
    }
    std::vector<direction> v{ v1, v2 };
    for (const recursion c : choices) {
        const vec2 prev = v[v.size() - 1].vec();
        const vec2 prev2 = v[v.size() - 2].vec();
        const std::int64_t sign = c == recursion::minus ? -1 : 1;
        v.emplace_back(prev + sign * (2 * prev2));
    }
    return v;
}

inline std::vector<direction> direction_sequence(family f, std::size_t count, const std::vector<recursion> &choices) {
    const family_vectors fv = vectors_of(f);
    return direction_sequence(fv.v1, fv.v2, count, choices);
}

/// All-minus sequence; count may be 1.
inline std::vector<direction> direction_sequence(family f, std::size_t count) {
    if (count == 1) {
        return { vectors_of(f).v1 };
    }
    return direction_sequence(f, count, std::vector<recursion>(count < 2 ? 0 : count - 2, recursion::minus));
}

/// g - shift(g, v): kills every line sum in direction v.
inline signed_grid dilate(const signed_grid &g, vec2 v) {
    signed_grid out = g;
    accumulate(out, g, v, -1);
    return out;
}

inline signed_grid dilate(const signed_grid &g, direction d) { return dilate(g, d.vec()); }

/// True iff g and shift(g, v) have disjoint supports.
inline bool overwrite_free(const signed_grid &g, vec2 v) {
    return std::none_of(g.begin(), g.end(), [&](const auto &c) { return g.contains(c.first + v); });
}

inline bool overwrite_free(const signed_grid &g, direction d) { return overwrite_free(g, d.vec()); }

/// True iff along every lattice line of direction d all nonzero values share one sign.
inline bool column_uniform(const signed_grid &g, direction d) {
    std::map<std::int64_t, int> sign_of_line;
    for (const auto &[p, w] : g) {
        const int s = w > 0 ? 1 : -1;
        auto [it, inserted] = sign_of_line.try_emplace(d.line_of(p), s);
        if (!inserted && it->second != s) {
            return false;
        }
    }
    return true;
}

/**
 * @brief Full provenance of a ghost.
 *
 * When @c fam is set the directions are the family's sequence for the given
 * recursion choices; otherwise they are taken verbatim.
 */
struct ghost_recipe {
    signed_grid start_tile{ { vec2{ 0, 0 }, 1 } };
    std::vector<direction> directions;
    std::vector<recursion> recursion_choices;
    std::optional<direction> boundary;
    std::optional<family> fam;
    /// Abort when any dilation step overwrites cells (maximal/minimal ghosts).
    bool require_overwrite_free = true;

    /// All zero-projection directions of the result.
    [[nodiscard]] std::vector<direction> zero_directions() const {
        std::vector<direction> all = directions;
        if (boundary) {
            all.push_back(*boundary);
        }
        return all;
    }
};

/**
 * @brief Recipe of a family ghost with @p steps dilation directions.
 *
 * With @p with_boundary the family's boundary direction is appended, giving
 * the boundary ghost V_{steps+1}.
 */
inline ghost_recipe family_recipe(family f, std::size_t steps, std::vector<recursion> choices, bool with_boundary) {
    if (steps < 1) {
        throw error{ "a family ghost needs at least one direction" };
    }
    ghost_recipe r;
    r.fam = f;
    if (steps == 1) {
        if (!choices.empty()) {
            throw error{ "one-direction ghost takes no recursion choices" };
        }
        r.directions = { vectors_of(f).v1 };
    } else {
        r.directions = direction_sequence(f, steps, choices);
    }
    r.recursion_choices = std::move(choices);
    if (with_boundary) {
        r.boundary = boundary_direction(f);
    }
    return r;
}

inline ghost_recipe family_recipe(family f, std::size_t steps, bool with_boundary) {
    return family_recipe(f, steps, std::vector<recursion>(steps < 2 ? 0 : steps - 2, recursion::minus), with_boundary);
}

struct build_result {
    signed_grid ghost;
    /// Grid before the boundary dilation (the filled tile), equal to ghost when no boundary is set.
    signed_grid filled;
    bool overwrite_free{ true };
};

inline build_result build_ghost_traced(const ghost_recipe &recipe) {
    if (recipe.directions.empty()) {
        throw error{ "recipe has no directions" };
    }
    build_result res;
    res.filled = recipe.start_tile;
    for (std::size_t i = 0; i < recipe.directions.size(); ++i) {
        const direction d = recipe.directions[i];
        if (!overwrite_free(res.filled, d)) {
            if (recipe.require_overwrite_free) {
                throw overwrite_error{ i + 1, d.vec() };
            }
            res.overwrite_free = false;
        }
        res.filled = dilate(res.filled, d);
    }
    if (recipe.boundary) {
        if (!column_uniform(res.filled, *recipe.boundary)) {
            throw error{ "boundary direction " + to_string(*recipe.boundary) + " does not see uniformly signed lines" };
        }
        res.ghost = dilate(res.filled, *recipe.boundary);
    } else {
        res.ghost = res.filled;
    }
    return res;
}

inline signed_grid build_ghost(const ghost_recipe &recipe) { return build_ghost_traced(recipe).ghost; }

/// U_n: 2^n cells, single +1 start pixel, all-minus recursion.
inline signed_grid minimal_ghost(family f, std::size_t n) { return build_ghost(family_recipe(f, n, false)); }

/// V_n = dilate(U_{n-1}, boundary direction).
inline signed_grid boundary_ghost(family f, std::size_t n) {
    if (n < 2) {
        throw error{ "boundary ghost needs n >= 2" };
    }
    return build_ghost(family_recipe(f, n - 1, true));
}

/**
 * @brief Checks that family b directions are shears of the a and a' directions.
 *
 * (p_b, q_b) = (p_a - q_a, q_a) = (p_a' + q_a', q_a') for 2 < i <= n.
 */
inline bool family_transform_check(std::size_t n) {
    if (n < 3) {
        throw error{ "family transform check needs n >= 3" };
    }
    const auto a = direction_sequence(family::a, n);
    const auto ap = direction_sequence(family::a_prime, n);
    const auto b = direction_sequence(family::b, n);
    for (std::size_t i = 2; i < n; ++i) {
        const bool from_a = b[i].p() == a[i].p() - a[i].q() && b[i].q() == a[i].q();
        const bool from_ap = b[i].p() == ap[i].p() + ap[i].q() && b[i].q() == ap[i].q();
        if (!from_a || !from_ap) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// recipe manifest

namespace detail {

inline std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw error{ "invalid integer '" + std::string{ s } + "'" };
    }
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

inline vec2 parse_pair(std::string_view s, char sep = ',') {
    const auto parts = split(s, sep);
    if (parts.size() != 2) {
        throw error{ "expected a pair 'x" + std::string(1, sep) + "y', got '" + std::string{ s } + "'" };
    }
    return { parse_int(parts[0]), parse_int(parts[1]) };
}

}  // namespace detail

/**
 * @brief One-line text manifest of a recipe.
 *
 * Family recipes: `recipe v1 family=a n=8 recursions=----- boundary=0,1`, where
 * n counts all zero directions including the boundary one (`steps=` may be
 * given instead of n to count only the dilation directions).
 * Custom recipes list `directions=p,q;p,q;...` and, unless the start tile is
 * the unit pixel, `tile=x:y:v;...`.
 */
inline std::string to_manifest(const ghost_recipe &r) {
    std::ostringstream os;
    os << "recipe v1";
    if (r.fam) {
        os << " family=" << family_tag(*r.fam) << " n=" << r.zero_directions().size()
           << " recursions=" << recursion_string(r.recursion_choices);
    } else {
        os << " directions=";
        for (std::size_t i = 0; i < r.directions.size(); ++i) {
            os << (i ? ";" : "") << r.directions[i].p() << ',' << r.directions[i].q();
        }
    }
    const signed_grid unit{ { vec2{ 0, 0 }, 1 } };
    if (!r.fam || r.start_tile != unit) {
        if (r.start_tile == unit) {
            os << " tile=unit";
        } else {
            os << " tile=";
            bool first = true;
            for (const auto &[p, v] : r.start_tile) {
                os << (first ? "" : ";") << p.x << ':' << p.y << ':' << v;
                first = false;
            }
        }
    }
    os << " boundary=";
    if (r.boundary) {
        os << r.boundary->p() << ',' << r.boundary->q();
    } else {
        os << "none";
    }
    if (!r.require_overwrite_free) {
        os << " overwrite=allow";
    }
    return os.str();
}

inline ghost_recipe parse_manifest(std::string_view line) {
    std::istringstream is{ std::string{ line } };
    std::string word;
    is >> word;
    if (word != "recipe") {
        throw error{ "manifest must start with 'recipe'" };
    }
    is >> word;
    if (word != "v1") {
        throw error{ "unsupported manifest version '" + word + "'" };
    }
    std::optional<family> fam;
    std::optional<std::size_t> steps;
    std::optional<std::size_t> total;
    std::optional<std::string> recursions;
    std::vector<direction> dirs;
    ghost_recipe r;
    while (is >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos) {
            throw error{ "manifest field without '=': " + word };
        }
        const std::string_view key = std::string_view{ word }.substr(0, eq);
        const std::string_view val = std::string_view{ word }.substr(eq + 1);
        if (key == "family") {
            fam = parse_family(val);
        } else if (key == "steps") {
            steps = static_cast<std::size_t>(detail::parse_int(val));
        } else if (key == "n") {
            total = static_cast<std::size_t>(detail::parse_int(val));
        } else if (key == "recursions") {
            recursions = std::string{ val };
        } else if (key == "directions") {
            for (const auto part : detail::split(val, ';')) {
                dirs.emplace_back(detail::parse_pair(part));
            }
        } else if (key == "tile") {
            if (val != "unit") {
                signed_grid tile;
                for (const auto part : detail::split(val, ';')) {
                    const auto f = detail::split(part, ':');
                    if (f.size() != 3) {
                        throw error{ "tile cell must be x:y:v" };
                    }
                    tile.set({ detail::parse_int(f[0]), detail::parse_int(f[1]) }, detail::parse_int(f[2]));
                }
                r.start_tile = std::move(tile);
            }
        } else if (key == "boundary") {
            if (val != "none") {
                r.boundary = direction{ detail::parse_pair(val) };
            }
        } else if (key == "overwrite") {
            r.require_overwrite_free = val != "allow";
        } else {
            throw error{ "unknown manifest field '" + std::string{ key } + "'" };
        }
    }
    if (fam) {
        if (total) {
            const std::size_t from_n = *total - (r.boundary ? 1 : 0);
            if (*total < 1 || (steps && *steps != from_n)) {
                throw error{ "manifest n= and steps= disagree" };
            }
            steps = from_n;
        }
        if (!steps) {
            throw error{ "family manifest needs n= or steps=" };
        }
        auto boundary = r.boundary;
        auto tile = r.start_tile;
        const bool strict = r.require_overwrite_free;
        r = recursions ? family_recipe(*fam, *steps, parse_recursions(*recursions), false) : family_recipe(*fam, *steps, false);
        r.boundary = boundary;
        r.start_tile = std::move(tile);
        r.require_overwrite_free = strict;
    } else {
        if (dirs.empty()) {
            throw error{ "manifest needs family= or directions=" };
        }
        r.directions = std::move(dirs);
    }
    return r;
}

}  // namespace ghostmark
