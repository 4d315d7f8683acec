/**
 * @file
 * @brief Integer lattice vectors, projection directions and sparse signed grids.
 *
 * Coordinates follow the mathematical convention: x grows to the right and
 * y grows upward. Images flip y only when they are read or written.
 */

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghostmark {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief A point or displacement on the integer lattice.
 *
 * Ordering is lexicographic by (y, x), which is also the canonical cell order
 * of the ghost text format.
 */
struct vec2 {
    std::int64_t x{ 0 };
    std::int64_t y{ 0 };

    constexpr vec2 operator+(vec2 o) const noexcept { return { x + o.x, y + o.y }; }
    constexpr vec2 operator-(vec2 o) const noexcept { return { x - o.x, y - o.y }; }
    constexpr vec2 operator-() const noexcept { return { -x, -y }; }
    constexpr vec2 &operator+=(vec2 o) noexcept {
        x += o.x;
        y += o.y;
        return *this;
    }
    friend constexpr vec2 operator*(std::int64_t k, vec2 v) noexcept { return { k * v.x, k * v.y }; }

    friend constexpr bool operator==(vec2, vec2) = default;
    friend constexpr std::strong_ordering operator<=>(vec2 a, vec2 b) noexcept {
        if (auto c = a.y <=> b.y; c != 0) {
            return c;
        }
        return a.x <=> b.x;
    }
};

/// z-component of the cross product; the signed area spanned by a and b.
constexpr std::int64_t cross(vec2 a, vec2 b) noexcept { return a.x * b.y - a.y * b.x; }
constexpr std::int64_t dot(vec2 a, vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr std::int64_t norm_sq(vec2 a) noexcept { return dot(a, a); }

inline std::string to_string(vec2 v) { return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")"; }

/**
 * @brief A discrete projection direction (p, q) with gcd(|p|, |q|) = 1.
 *
 * Any sign combination is accepted; canonical() maps d and -d to the same
 * representative (p > 0, or p == 0 and q > 0).
 */
class direction {
  public:
    constexpr direction() noexcept = default;

    direction(std::int64_t p, std::int64_t q) : p_{ p }, q_{ q } {
        if (p == 0 && q == 0) {
            throw error{ "direction (0,0) is degenerate" };
        }
        if (std::gcd(p, q) != 1) {
            throw error{ "direction " + to_string(vec2{ p, q }) + " is not co-prime" };
        }
    }

    explicit direction(vec2 v) : direction(v.x, v.y) {}

    [[nodiscard]] constexpr std::int64_t p() const noexcept { return p_; }
    [[nodiscard]] constexpr std::int64_t q() const noexcept { return q_; }
    [[nodiscard]] constexpr vec2 vec() const noexcept { return { p_, q_ }; }

    [[nodiscard]] direction canonical() const noexcept {
        direction d = *this;
        if (p_ < 0 || (p_ == 0 && q_ < 0)) {
            d.p_ = -p_;
            d.q_ = -q_;
        }
        return d;
    }

    /// Quarter turn counter-clockwise: (p, q) -> (-q, p).
    [[nodiscard]] direction rotated() const noexcept {
        direction d;
        d.p_ = -q_;
        d.q_ = p_;
        return d;
    }

    /// Index of the lattice line through @p cell: t = q*x - p*y.
    [[nodiscard]] constexpr std::int64_t line_of(vec2 cell) const noexcept { return q_ * cell.x - p_ * cell.y; }

    friend constexpr bool operator==(direction, direction) = default;
    friend constexpr auto operator<=>(direction a, direction b) noexcept { return a.vec() <=> b.vec(); }

  private:
    std::int64_t p_{ 1 };
    std::int64_t q_{ 0 };
};

inline std::string to_string(direction d) { return to_string(d.vec()); }

/// Canonicalizes and removes duplicates, keeping first-occurrence order.
inline std::vector<direction> canonical_unique(std::span<const direction> dirs) {
    std::vector<direction> out;
    for (const direction d : dirs) {
        const direction c = d.canonical();
        if (std::find(out.begin(), out.end(), c) == out.end()) {
            out.push_back(c);
        }
    }
    return out;
}

/// Inclusive bounding rectangle of a nonempty cell set.
struct rect {
    vec2 min;
    vec2 max;

    [[nodiscard]] constexpr std::int64_t width() const noexcept { return max.x - min.x + 1; }
    [[nodiscard]] constexpr std::int64_t height() const noexcept { return max.y - min.y + 1; }
    [[nodiscard]] constexpr bool contains(vec2 c) const noexcept {
        return c.x >= min.x && c.x <= max.x && c.y >= min.y && c.y <= max.y;
    }
    friend constexpr bool operator==(rect, rect) = default;
};

/// Image extent of a ghost for a direction list.
struct box_size {
    std::int64_t a{ 1 };  ///< width
    std::int64_t b{ 1 };  ///< height
    friend constexpr bool operator==(box_size, box_size) = default;
};

/**
 * @brief Finite map from lattice points to nonzero integers.
 *
 * Zero is represented by absence: no operation ever stores a zero value.
 * Iteration order is (y, x) lexicographic.
 */
class signed_grid {
  public:
    using value_type = std::int64_t;
    using map_type = std::map<vec2, value_type>;
    using const_iterator = map_type::const_iterator;

    signed_grid() = default;

    signed_grid(std::initializer_list<std::pair<const vec2, value_type>> cells) {
        for (const auto &[p, v] : cells) {
            add_to(p, v);
        }
    }

    /// Sets the value at @p cell; a zero value removes the cell.
    void set(vec2 cell, value_type value) {
        if (value == 0) {
            cells_.erase(cell);
        } else {
            cells_[cell] = value;
        }
    }

    /// Adds @p delta to the value at @p cell, dropping the cell if it reaches zero.
    void add_to(vec2 cell, value_type delta) {
        if (delta == 0) {
            return;
        }
        auto [it, inserted] = cells_.try_emplace(cell, delta);
        if (!inserted) {
            it->second += delta;
            if (it->second == 0) {
                cells_.erase(it);
            }
        }
    }

    [[nodiscard]] value_type at(vec2 cell) const {
        const auto it = cells_.find(cell);
        return it == cells_.end() ? 0 : it->second;
    }

    [[nodiscard]] bool contains(vec2 cell) const { return cells_.contains(cell); }
    [[nodiscard]] bool empty() const noexcept { return cells_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return cells_.size(); }
    [[nodiscard]] const map_type &cells() const noexcept { return cells_; }
    [[nodiscard]] const_iterator begin() const noexcept { return cells_.begin(); }
    [[nodiscard]] const_iterator end() const noexcept { return cells_.end(); }

    /// Tight bounding rectangle, or nullopt for the empty grid.
    [[nodiscard]] std::optional<rect> bbox() const {
        if (cells_.empty()) {
            return std::nullopt;
        }
        rect r{ cells_.begin()->first, cells_.begin()->first };
        r.min.y = cells_.begin()->first.y;
        r.max.y = cells_.rbegin()->first.y;
        for (const auto &[p, v] : cells_) {
            r.min.x = std::min(r.min.x, p.x);
            r.max.x = std::max(r.max.x, p.x);
        }
        return r;
    }

    friend bool operator==(const signed_grid &, const signed_grid &) = default;

  private:
    map_type cells_;
};

/// Sum of all values.
inline std::int64_t total(const signed_grid &g) {
    std::int64_t s = 0;
    for (const auto &[p, v] : g) {
        s += v;
    }
    return s;
}

/// True when every stored value is +1 or -1.
inline bool is_binary(const signed_grid &g) {
    return std::all_of(g.begin(), g.end(), [](const auto &c) { return c.second == 1 || c.second == -1; });
}

inline signed_grid shift(const signed_grid &g, vec2 v) {
    signed_grid out;
    for (const auto &[p, w] : g) {
        out.set(p + v, w);
    }
    return out;
}

inline signed_grid negate(const signed_grid &g) {
    signed_grid out;
    for (const auto &[p, w] : g) {
        out.set(p, -w);
    }
    return out;
}

/// Multiplies every value by @p k (k != 0).
inline signed_grid scaled(const signed_grid &g, std::int64_t k) {
    if (k == 0) {
        return {};
    }
    signed_grid out;
    for (const auto &[p, w] : g) {
        out.set(p, k * w);
    }
    return out;
}

/// Adds k * shift(src, offset) into @p dst in place.
inline void accumulate(signed_grid &dst, const signed_grid &src, vec2 offset = {}, std::int64_t k = 1) {
    for (const auto &[p, w] : src) {
        dst.add_to(p + offset, k * w);
    }
}

/// Pointwise sum; cells that cancel are dropped.
inline signed_grid add(const signed_grid &a, const signed_grid &b) {
    signed_grid out = a;
    accumulate(out, b);
    return out;
}

/// Cells present in both grids (values ignored).
inline std::size_t support_overlap(const signed_grid &a, const signed_grid &b) {
    const signed_grid &small = a.size() <= b.size() ? a : b;
    const signed_grid &large = a.size() <= b.size() ? b : a;
    return static_cast<std::size_t>(
        std::count_if(small.begin(), small.end(), [&](const auto &c) { return large.contains(c.first); }));
}

/**
 * @brief Box of the ghost generated by dilating one pixel along @p dirs.
 *
 * a = 1 + sum |p_i|, b = 1 + sum |q_i|.
 */
inline box_size ghost_box_size(std::span<const direction> dirs) {
    if (dirs.empty()) {
        throw error{ "box size of an empty direction list: degenerate ghost" };
    }
    box_size s;
    for (const direction d : dirs) {
        s.a += std::llabs(d.p());
        s.b += std::llabs(d.q());
    }
    return s;
}

/// Sums of g along each lattice line of direction d, keyed by t = q*x - p*y.
inline std::map<std::int64_t, std::int64_t> line_sums(const signed_grid &g, direction d) {
    std::map<std::int64_t, std::int64_t> sums;
    for (const auto &[p, w] : g) {
        sums[d.line_of(p)] += w;
    }
    return sums;
}

inline bool is_ghost_for(const signed_grid &g, direction d) {
    const auto sums = line_sums(g, d);
    return std::all_of(sums.begin(), sums.end(), [](const auto &s) { return s.second == 0; });
}

inline bool is_ghost_for(const signed_grid &g, std::span<const direction> dirs) {
    return std::all_of(dirs.begin(), dirs.end(), [&](direction d) { return is_ghost_for(g, d); });
}

}  // namespace ghostmark
