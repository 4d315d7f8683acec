/**
 * @file
 * @brief The two six-vector shift sets that tile a minimal ghost U_{n-1}
 *        (and so merge copies of its boundary ghost V_n).
 *
 * With v_n the last direction of U_{n-1}:
 *  - adjacency set: +-(v_n - 2 v_{n-1}), +-2 v_n, +-(v_n + 2 v_{n-1})
 *  - alternate set: +-2 v_n, +-2 v_{n-1}, +-4 v_{n-2}
 *
 * The representative triples are ordered so that the overlap counts are the
 * segment lengths (s1, s2, s3) and (s1', s2', s3') in the usual tabulation.
 */

#pragma once

#include "ghostmark/ghost_builder.hpp"
#include "ghostmark/lattice.hpp"

#include <array>
#include <span>

namespace ghostmark {

enum class shift_set { adjacency, alternate };

inline std::string_view shift_set_name(shift_set s) noexcept {
    return s == shift_set::adjacency ? "adjacency" : "alternate";
}

/// Representative triple of a centrally symmetric six-vector shift set.
struct shift_triple {
    std::array<vec2, 3> w;

    [[nodiscard]] const vec2 &operator[](std::size_t i) const { return w[i]; }

    /// w1, w2, w3, -w1, -w2, -w3.
    [[nodiscard]] std::array<vec2, 6> six() const { return { w[0], w[1], w[2], -w[0], -w[1], -w[2] }; }

    friend bool operator==(const shift_triple &, const shift_triple &) = default;
};

namespace detail {

/**
 * @brief 4 * v_k for k = m, m-1, m-2, where k may run below 1.
 *
 * Indices below 1 are filled by running v_k = v_{k-1} - 2 v_{k-2} backwards
 * from v_1, v_2; the factor 4 keeps those values integral down to k = -1.
 */
inline std::array<vec2, 3> quadrupled_tail(std::span<const direction> seq, std::size_t m) {
    if (seq.size() < 2) {
        throw error{ "shift sets need at least the two start vectors" };
    }
    if (m < 1 || m > seq.size()) {
        throw error{ "shift set index out of range" };
    }
    // q[k + 1] = 4 v_k for k = -1 .. m
    std::vector<vec2> q(m + 2);
    for (std::size_t k = 1; k <= m; ++k) {
        q[k + 1] = 4 * seq[k - 1].vec();
    }
    const vec2 q1 = 4 * seq[0].vec();
    const vec2 q2 = 4 * seq[1].vec();
    const vec2 q0 = { (q1.x - q2.x) / 2, (q1.y - q2.y) / 2 };
    const vec2 qm1 = { (q0.x - q1.x) / 2, (q0.y - q1.y) / 2 };
    q[1] = q0;
    q[0] = qm1;
    return { q[m + 1], q[m], q[m - 1] };
}

inline vec2 exact_div(vec2 v, std::int64_t d) {
    if (v.x % d != 0 || v.y % d != 0) {
        throw error{ "shift vector is not integral for this direction list" };
    }
    return { v.x / d, v.y / d };
}

}  // namespace detail

/**
 * @brief Adjacency shifts of U_m (the tile of V_{m+1}).
 *
 * @p seq holds v_1, v_2, ...; only v_1..v_m are used, with m defaulting to
 * seq.size(). Returns (v_m - 2 v_{m-1}, 2 v_m, v_m + 2 v_{m-1}).
 */
inline shift_triple adjacency_shifts(std::span<const direction> seq, std::size_t m) {
    const auto q = detail::quadrupled_tail(seq, m);
    return { { detail::exact_div(q[0] - 2 * q[1], 4), detail::exact_div(q[0], 2), detail::exact_div(q[0] + 2 * q[1], 4) } };
}

inline shift_triple adjacency_shifts(std::span<const direction> seq) { return adjacency_shifts(seq, seq.size()); }

/// Alternate shifts (2 v_m, 2 v_{m-1}, 4 v_{m-2}) of U_m.
inline shift_triple alternate_shifts(std::span<const direction> seq, std::size_t m) {
    const auto q = detail::quadrupled_tail(seq, m);
    return { { detail::exact_div(q[0], 2), detail::exact_div(q[1], 2), q[2] } };
}

inline shift_triple alternate_shifts(std::span<const direction> seq) { return alternate_shifts(seq, seq.size()); }

/// Shift set of the boundary ghost V_n of family @p f (n >= 2).
inline shift_triple family_shifts(family f, std::size_t n, shift_set which) {
    if (n < 2) {
        throw error{ "shift sets are defined for V_n with n >= 2" };
    }
    const auto seq = direction_sequence(f, std::max<std::size_t>(n - 1, 2));
    return which == shift_set::adjacency ? adjacency_shifts(seq, n - 1) : alternate_shifts(seq, n - 1);
}

}  // namespace ghostmark
