/**
 * @file
 * @brief Connectivity, perimeter, enclosed area and boundary segment lengths of ghosts.
 */

#pragma once

#include "ghostmark/ghost_builder.hpp"
#include "ghostmark/lattice.hpp"
#include "ghostmark/shift_sets.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ghostmark {

/// Raised when boundary cells along a fill line cannot be paired.
class malformed_boundary : public error {
  public:
    using error::error;
};

struct vec2_hash {
    std::size_t operator()(vec2 v) const noexcept {
        const auto ux = static_cast<std::uint64_t>(v.x);
        const auto uy = static_cast<std::uint64_t>(v.y);
        return std::hash<std::uint64_t>{}(ux * 0x9E3779B97F4A7C15ULL ^ (uy + 0x632BE59BD9B4E019ULL + (ux << 6) + (ux >> 2)));
    }
};

using cell_set = std::unordered_set<vec2, vec2_hash>;

inline cell_set support_of(const signed_grid &g) {
    cell_set s;
    s.reserve(g.size());
    for (const auto &[p, v] : g) {
        s.insert(p);
    }
    return s;
}

struct connectivity_report {
    bool four_connected{ false };
    bool eight_connected{ false };
    bool simply_connected{ false };
    /// Squared length of the longest hop needed to link all cells (bottleneck spanning tree).
    std::int64_t max_gap_sq{ 0 };
    /// Some closed 8-path through all cells alternates in sign; only evaluated when max_gap <= sqrt(2).
    std::optional<bool> alternating;

    [[nodiscard]] double max_gap() const { return std::sqrt(static_cast<double>(max_gap_sq)); }
};

namespace detail {

inline constexpr std::array<vec2, 4> n4{ { { 1, 0 }, { -1, 0 }, { 0, 1 }, { 0, -1 } } };
inline constexpr std::array<vec2, 8> n8{ { { 1, 0 }, { -1, 0 }, { 0, 1 }, { 0, -1 }, { 1, 1 }, { 1, -1 }, { -1, 1 }, { -1, -1 } } };

template <std::size_t N>
bool connected(const cell_set &cells, const std::array<vec2, N> &nbrs) {
    if (cells.empty()) {
        return true;
    }
    cell_set seen{ *cells.begin() };
    std::deque<vec2> todo{ *cells.begin() };
    while (!todo.empty()) {
        const vec2 c = todo.front();
        todo.pop_front();
        for (const vec2 d : nbrs) {
            const vec2 n = c + d;
            if (cells.contains(n) && seen.insert(n).second) {
                todo.push_back(n);
            }
        }
    }
    return seen.size() == cells.size();
}

/// True iff every cell of the padded bounding box outside @p cells is reachable from outside.
inline bool complement_connected(const cell_set &cells, rect box) {
    const rect pad{ box.min - vec2{ 1, 1 }, box.max + vec2{ 1, 1 } };
    cell_set seen{ pad.min };
    std::deque<vec2> todo{ pad.min };
    while (!todo.empty()) {
        const vec2 c = todo.front();
        todo.pop_front();
        for (const vec2 d : n4) {
            const vec2 n = c + d;
            if (pad.contains(n) && !cells.contains(n) && seen.insert(n).second) {
                todo.push_back(n);
            }
        }
    }
    const auto area = static_cast<std::size_t>(pad.width() * pad.height());
    return seen.size() + cells.size() == area;
}

struct disjoint_sets {
    std::vector<std::size_t> parent;
    std::size_t components;

    explicit disjoint_sets(std::size_t n) : parent(n), components{ n } { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
};

/// Smallest r^2 such that linking cells closer than sqrt(r^2) connects everything.
inline std::int64_t bottleneck_gap_sq(const signed_grid &g, rect box) {
    if (g.size() <= 1) {
        return 0;
    }
    std::vector<vec2> pts;
    pts.reserve(g.size());
    for (const auto &[p, v] : g) {
        pts.push_back(p);
    }
    std::unordered_map<vec2, std::size_t, vec2_hash> idx;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        idx.emplace(pts[i], i);
    }
    disjoint_sets ds{ pts.size() };
    const std::int64_t limit = norm_sq(box.max - box.min);
    for (std::int64_t r2 = 1; r2 <= limit; ++r2) {
        // offsets with dx^2 + dy^2 == r2 in a half plane
        bool any = false;
        const auto rmax = static_cast<std::int64_t>(std::sqrt(static_cast<double>(r2))) + 1;
        for (std::int64_t dx = 0; dx <= rmax; ++dx) {
            for (std::int64_t dy = -rmax; dy <= rmax; ++dy) {
                if (dx * dx + dy * dy != r2 || (dx == 0 && dy <= 0)) {
                    continue;
                }
                any = true;
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    const auto it = idx.find(pts[i] + vec2{ dx, dy });
                    if (it != idx.end()) {
                        ds.unite(i, it->second);
                    }
                }
            }
        }
        if (any && ds.components == 1) {
            return r2;
        }
    }
    return limit;
}


/**
 * Looks for a closed 8-path through every cell whose values alternate in sign
 * (a Hamiltonian cycle over opposite-sign 8-neighbours). Boundary curves have
 * almost every cell of degree two, so the depth-first search rarely branches;
 * @p budget caps the work on pathological inputs, which then count as failures.
 */
inline bool alternating_cycle(const signed_grid &g, std::size_t budget = 4'000'000) {
    std::vector<vec2> pts;
    std::unordered_map<vec2, std::size_t, vec2_hash> idx;
    for (const auto &[p, v] : g) {
        idx.emplace(p, pts.size());
        pts.push_back(p);
    }
    const std::size_t n = pts.size();
    if (n % 2 != 0) {
        return false;
    }
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const vec2 d : n8) {
            const auto it = idx.find(pts[i] + d);
            if (it != idx.end() && (g.at(pts[i]) > 0) != (g.at(it->first) > 0)) {
                adj[i].push_back(it->second);
            }
        }
        if (adj[i].empty()) {
            return false;
        }
    }
    if (n == 2) {
        return true;
    }
    std::vector<char> used(n, 0);
    std::vector<std::size_t> path{ 0 };
    std::vector<std::size_t> next{ 0 };
    used[0] = 1;
    while (!path.empty() && budget-- > 0) {
        const std::size_t at = path.back();
        if (path.size() == n) {
            if (std::find(adj[at].begin(), adj[at].end(), path.front()) != adj[at].end()) {
                return true;
            }
        }
        std::size_t &k = next.back();
        while (k < adj[at].size() && used[adj[at][k]] != 0) {
            ++k;
        }
        if (path.size() == n || k == adj[at].size()) {
            used[at] = 0;
            path.pop_back();
            next.pop_back();
            continue;
        }
        const std::size_t to = adj[at][k++];
        used[to] = 1;
        path.push_back(to);
        next.push_back(0);
    }
    return false;
}
}  // namespace detail

/// Classifies the support of a nonempty grid.
inline connectivity_report connectivity(const signed_grid &g) {
    if (g.empty()) {
        throw error{ "connectivity of an empty grid" };
    }
    const cell_set cells = support_of(g);
    const rect box = *g.bbox();
    connectivity_report r;
    r.four_connected = detail::connected(cells, detail::n4);
    r.eight_connected = r.four_connected || detail::connected(cells, detail::n8);
    r.simply_connected = r.four_connected && detail::complement_connected(cells, box);
    r.max_gap_sq = detail::bottleneck_gap_sq(g, box);
    if (r.max_gap_sq <= 2) {
        r.alternating = detail::alternating_cycle(g);
    }
    return r;
}

/// Number of nonzero cells of a boundary ghost.
inline std::size_t perimeter_count(const signed_grid &v) { return v.size(); }

/**
 * @brief Perimeter P_n of V_n from P_n = P_{n-2} + 2 P_{n-3}.
 *
 * Seeds are P_1 = 2, P_2 = 4, P_3 = 6 (the boundaries of U_0, U_1, U_2);
 * P_0 = 2 continues the recursion backwards.
 */
inline std::int64_t predicted_perimeter(std::size_t n) {
    std::vector<std::int64_t> p{ 2, 2, 4, 6 };
    for (std::size_t k = 4; k <= n; ++k) {
        p.push_back(p[k - 2] + 2 * p[k - 3]);
    }
    return p[n];
}

/// A_n = 2^(n-1) + P_n / 2 for a minimal boundary ghost.
inline std::int64_t predicted_area(std::size_t n) {
    if (n < 1) {
        throw error{ "area is defined for n >= 1" };
    }
    return (std::int64_t{ 1 } << (n - 1)) + predicted_perimeter(n) / 2;
}

/**
 * @brief Cells covered by filling each boundary-direction line between paired cells.
 *
 * Along every line the nonzero cells are taken in order and paired
 * (1st, 2nd), (3rd, 4th), ...; each pair must have opposite signs and
 * contributes its inclusive span.
 */
inline std::int64_t enclosed_area(const signed_grid &v, direction boundary) {
    std::map<std::int64_t, std::vector<std::pair<std::int64_t, std::int64_t>>> lines;
    for (const auto &[p, w] : v) {
        lines[boundary.line_of(p)].emplace_back(dot(p, boundary.vec()), w);
    }
    const std::int64_t step = norm_sq(boundary.vec());
    std::int64_t area = 0;
    for (auto &[t, cells] : lines) {
        std::sort(cells.begin(), cells.end());
        if (cells.size() % 2 != 0) {
            throw malformed_boundary{ "odd number of boundary cells on line t=" + std::to_string(t) };
        }
        for (std::size_t i = 0; i < cells.size(); i += 2) {
            if ((cells[i].second > 0) == (cells[i + 1].second > 0)) {
                throw malformed_boundary{ "boundary cells with equal signs paired on line t=" + std::to_string(t) };
            }
            area += (cells[i + 1].first - cells[i].first) / step + 1;
        }
    }
    return area;
}

using segment_triple = std::array<std::int64_t, 3>;

/// s_i = |support(v) & support(shift(v, w_i))|.
inline segment_triple segment_lengths(const signed_grid &v, const shift_triple &shifts) {
    segment_triple s{};
    for (std::size_t i = 0; i < 3; ++i) {
        s[i] = static_cast<std::int64_t>(
            std::count_if(v.begin(), v.end(), [&](const auto &c) { return v.contains(c.first + shifts[i]); }));
    }
    return s;
}

/**
 * @brief Segment lengths of V_n^a predicted by recursion.
 *
 * Adjacency set: s_{n+1} = (s2 + 2 s3, s1, s2) from s_3 = (2, 1, 0).
 * Alternate set, from (1, 1, 1) and (2, 2, 0) at n = 3, 4:
 *   s1'_n = s2'_{n-2} + 2 s3'_{n-3}   (n >= 6; below that s1'_n = s2_n, the shared segment)
 *   s2'_n = s1'_n + 4 s3'_{n-2}
 *   s3'_n = s1'_{n-2}
 */
inline segment_triple predicted_segments(std::size_t n, shift_set which) {
    if (n < 3) {
        throw error{ "predicted segments need n >= 3" };
    }
    std::vector<segment_triple> adj{ {}, {}, {}, { 2, 1, 0 } };
    for (std::size_t k = 4; k <= n; ++k) {
        const auto &s = adj[k - 1];
        adj.push_back({ s[1] + 2 * s[2], s[0], s[1] });
    }
    if (which == shift_set::adjacency) {
        return adj[n];
    }
    std::vector<segment_triple> alt{ {}, {}, {}, { 1, 1, 1 }, { 2, 2, 0 } };
    for (std::size_t k = 5; k <= n; ++k) {
        segment_triple s{};
        s[0] = k >= 6 ? alt[k - 2][1] + 2 * alt[k - 3][2] : adj[k][1];
        s[1] = s[0] + 4 * alt[k - 2][2];
        s[2] = alt[k - 2][0];
        alt.push_back(s);
    }
    return alt[n];
}

/// Measured segment structure of a boundary ghost under one shift set.
struct segment_profile {
    shift_set set{ shift_set::adjacency };
    segment_triple lengths{};
    std::int64_t perimeter{ 0 };
    std::int64_t area{ 0 };
};

inline segment_profile measure_profile(const signed_grid &v, const shift_triple &shifts, shift_set which, direction boundary) {
    return { which, segment_lengths(v, shifts), static_cast<std::int64_t>(perimeter_count(v)), enclosed_area(v, boundary) };
}

inline segment_profile family_profile(family f, std::size_t n, shift_set which) {
    const signed_grid v = boundary_ghost(f, n);
    return measure_profile(v, family_shifts(f, n, which), which, boundary_direction(f));
}

}  // namespace ghostmark
