/**
 * @file
 * @brief Mojette and finite Radon projections, and the Katz sufficiency test.
 */

#pragma once

#include "ghostmark/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <tuple>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace ghostmark {

/**
 * @brief 8-bit grey image.
 *
 * Samples are stored row-major from the top row down, as in PGM. at(x, y)
 * uses lattice coordinates with y growing upward, so y = 0 is the bottom row.
 */
class image8 {
  public:
    image8() = default;

    image8(std::int64_t width, std::int64_t height, std::uint8_t fill = 0) : width_{ width }, height_{ height } {
        if (width < 1 || height < 1) {
            throw error{ "image dimensions must be positive" };
        }
        samples_.assign(static_cast<std::size_t>(width * height), fill);
    }

    image8(std::int64_t width, std::int64_t height, std::vector<std::uint8_t> samples) :
        width_{ width }, height_{ height }, samples_{ std::move(samples) } {
        if (width < 1 || height < 1 || samples_.size() != static_cast<std::size_t>(width * height)) {
            throw error{ "image sample count does not match its dimensions" };
        }
    }

    [[nodiscard]] std::int64_t width() const noexcept { return width_; }
    [[nodiscard]] std::int64_t height() const noexcept { return height_; }
    [[nodiscard]] const std::vector<std::uint8_t> &samples() const noexcept { return samples_; }

    [[nodiscard]] bool contains(vec2 c) const noexcept { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }

    [[nodiscard]] std::uint8_t at(vec2 c) const { return samples_[index(c)]; }
    void set(vec2 c, std::uint8_t v) { samples_[index(c)] = v; }

    /// Sample by raster position (column, row from the top).
    [[nodiscard]] std::uint8_t raster(std::int64_t col, std::int64_t row) const {
        return samples_[static_cast<std::size_t>(row * width_ + col)];
    }

    [[nodiscard]] std::int64_t sum() const {
        std::int64_t s = 0;
        for (const auto v : samples_) {
            s += v;
        }
        return s;
    }

    friend bool operator==(const image8 &, const image8 &) = default;

  private:
    [[nodiscard]] std::size_t index(vec2 c) const {
        if (!contains(c)) {
            throw error{ "pixel " + to_string(c) + " outside the image" };
        }
        return static_cast<std::size_t>((height_ - 1 - c.y) * width_ + c.x);
    }

    std::int64_t width_{ 0 };
    std::int64_t height_{ 0 };
    std::vector<std::uint8_t> samples_;
};

/// Image plus an integer overlay; values outside 0..255 are reported, not clamped.
inline std::vector<std::int64_t> as_values(const image8 &img) {
    return { img.samples().begin(), img.samples().end() };
}

struct mojette_projection {
    direction dir;
    std::int64_t t_min{ 0 };
    std::vector<std::int64_t> bins;

    [[nodiscard]] std::int64_t sum() const {
        std::int64_t s = 0;
        for (const auto b : bins) {
            s += b;
        }
        return s;
    }

    friend bool operator==(const mojette_projection &, const mojette_projection &) = default;
};

/// Bin range of direction d over a width x height frame with origin at (0, 0).
inline std::pair<std::int64_t, std::int64_t> mojette_range(direction d, std::int64_t width, std::int64_t height) {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    for (const vec2 c : { vec2{ width - 1, 0 }, vec2{ 0, height - 1 }, vec2{ width - 1, height - 1 } }) {
        lo = std::min(lo, d.line_of(c));
        hi = std::max(hi, d.line_of(c));
    }
    return { lo, hi };
}

/// Mojette projection of a frame given as raster values (row 0 = top).
inline mojette_projection mojette(std::span<const std::int64_t> raster, std::int64_t width, std::int64_t height, direction d) {
    const auto [lo, hi] = mojette_range(d, width, height);
    mojette_projection m{ d, lo, std::vector<std::int64_t>(static_cast<std::size_t>(hi - lo + 1), 0) };
    for (std::int64_t row = 0; row < height; ++row) {
        const std::int64_t y = height - 1 - row;
        for (std::int64_t x = 0; x < width; ++x) {
            m.bins[static_cast<std::size_t>(d.line_of({ x, y }) - lo)] += raster[static_cast<std::size_t>(row * width + x)];
        }
    }
    return m;
}

/// Bin t = sum of pixels with q*x - p*y = t; (w-1)|q| + (h-1)|p| + 1 bins.
inline mojette_projection mojette(const image8 &img, direction d) {
    const auto v = as_values(img);
    return mojette(v, img.width(), img.height(), d);
}

/// Mojette projection of a grid over the frame [0,width) x [0,height).
inline mojette_projection mojette(const signed_grid &g, direction d, std::int64_t width, std::int64_t height) {
    const auto [lo, hi] = mojette_range(d, width, height);
    mojette_projection m{ d, lo, std::vector<std::int64_t>(static_cast<std::size_t>(hi - lo + 1), 0) };
    for (const auto &[p, v] : g) {
        if (p.x < 0 || p.y < 0 || p.x >= width || p.y >= height) {
            throw error{ "grid cell " + to_string(p) + " outside the projection frame" };
        }
        m.bins[static_cast<std::size_t>(d.line_of(p) - lo)] += v;
    }
    return m;
}

/// Mojette projection of a grid over its own bounding box.
inline mojette_projection mojette(const signed_grid &g, direction d) {
    const auto box = g.bbox();
    if (!box) {
        return { d, 0, { 0 } };
    }
    const signed_grid moved = shift(g, -box->min);
    auto m = mojette(moved, d, box->width(), box->height());
    m.t_min += d.line_of(box->min);
    return m;
}

// ---------------------------------------------------------------------------
// finite Radon transform

inline bool is_prime(std::int64_t p) {
    if (p < 2) {
        return false;
    }
    for (std::int64_t k = 2; k * k <= p; ++k) {
        if (p % k == 0) {
            return false;
        }
    }
    return true;
}

/// p + 1 rows of length p: row m < p sums y = m x + t (mod p), row p sums columns.
struct frt_sinogram {
    std::int64_t p{ 0 };
    std::vector<std::vector<std::int64_t>> rows;

    friend bool operator==(const frt_sinogram &, const frt_sinogram &) = default;
};

inline frt_sinogram frt(std::span<const std::int64_t> raster, std::int64_t width, std::int64_t height, std::int64_t p) {
    if (!is_prime(p)) {
        throw error{ "FRT size " + std::to_string(p) + " is not prime" };
    }
    if (width != p || height != p) {
        throw error{ "FRT needs a " + std::to_string(p) + "x" + std::to_string(p) + " image" };
    }
    frt_sinogram s{ p, std::vector<std::vector<std::int64_t>>(static_cast<std::size_t>(p + 1), std::vector<std::int64_t>(static_cast<std::size_t>(p), 0)) };
    for (std::int64_t row = 0; row < p; ++row) {
        const std::int64_t y = p - 1 - row;
        for (std::int64_t x = 0; x < p; ++x) {
            const std::int64_t v = raster[static_cast<std::size_t>(row * p + x)];
            if (v == 0) {
                continue;
            }
            for (std::int64_t m = 0; m < p; ++m) {
                const std::int64_t t = ((y - m * x) % p + p) % p;
                s.rows[static_cast<std::size_t>(m)][static_cast<std::size_t>(t)] += v;
            }
            s.rows[static_cast<std::size_t>(p)][static_cast<std::size_t>(x)] += v;
        }
    }
    return s;
}

inline frt_sinogram frt(const image8 &img, std::int64_t p) {
    const auto v = as_values(img);
    return frt(v, img.width(), img.height(), p);
}

/// FRT of a grid placed in the p x p frame (cells must lie inside it).
inline frt_sinogram frt(const signed_grid &g, std::int64_t p) {
    if (!is_prime(p)) {
        throw error{ "FRT size " + std::to_string(p) + " is not prime" };
    }
    std::vector<std::int64_t> raster(static_cast<std::size_t>(p * p), 0);
    for (const auto &[c, v] : g) {
        if (c.x < 0 || c.y < 0 || c.x >= p || c.y >= p) {
            throw error{ "grid cell " + to_string(c) + " outside the FRT frame" };
        }
        raster[static_cast<std::size_t>((p - 1 - c.y) * p + c.x)] += v;
    }
    return frt(raster, p, p, p);
}

namespace detail {

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return (a % m + m) % m; }

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1 != 0) {
        const std::int64_t q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) {
        throw error{ "no modular inverse" };
    }
    return mod(x, m);
}

}  // namespace detail

/**
 * @brief FRT row whose wrapped lines are unions of the lattice lines of @p d.
 *
 * m = q * p^-1 (mod prime) when p != 0 (mod prime); the vertical family maps
 * to the column-sum row, index prime.
 */
inline std::int64_t direction_to_frt_row(direction d, std::int64_t prime) {
    if (!is_prime(prime)) {
        throw error{ "FRT size " + std::to_string(prime) + " is not prime" };
    }
    if (std::llabs(d.p()) >= prime || std::llabs(d.q()) >= prime) {
        throw error{ "direction " + to_string(d) + " too long for FRT size " + std::to_string(prime) };
    }
    if (detail::mod(d.p(), prime) == 0) {
        return prime;
    }
    return detail::mod(d.q() * detail::mod_inverse(d.p(), prime), prime);
}

// ---------------------------------------------------------------------------
// Katz criterion

enum class katz_verdict { unique, ghost_fits };

enum class katz_mode {
    standard,  ///< unique unless the ghost box fits in both dimensions
    literal,   ///< unique only when both absolute sums reach the image size
};

inline katz_verdict katz_unique(std::span<const direction> dirs, std::int64_t nx, std::int64_t ny, katz_mode mode = katz_mode::standard) {
    std::int64_t sp = 0;
    std::int64_t sq = 0;
    for (const direction d : dirs) {
        sp += std::llabs(d.p());
        sq += std::llabs(d.q());
    }
    if (mode == katz_mode::literal) {
        return (sp >= nx && sq >= ny) ? katz_verdict::unique : katz_verdict::ghost_fits;
    }
    return (sp < nx && sq < ny) ? katz_verdict::ghost_fits : katz_verdict::unique;
}

// ---------------------------------------------------------------------------
// comparisons

/// Per direction, max over bins of |a - b|. Direction lists must match.
inline std::vector<std::pair<direction, std::int64_t>> projection_max_abs_diff(std::span<const mojette_projection> a,
                                                                                 std::span<const mojette_projection> b) {
    if (a.size() != b.size()) {
        throw error{ "projection sets differ in size" };
    }
    std::vector<std::pair<direction, std::int64_t>> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].dir != b[i].dir || a[i].t_min != b[i].t_min || a[i].bins.size() != b[i].bins.size()) {
            throw error{ "projection sets differ at direction " + to_string(a[i].dir) };
        }
        std::int64_t m = 0;
        for (std::size_t k = 0; k < a[i].bins.size(); ++k) {
            m = std::max<std::int64_t>(m, std::llabs(a[i].bins[k] - b[i].bins[k]));
        }
        out.emplace_back(a[i].dir, m);
    }
    return out;
}

/// Per FRT row, max over bins of |a - b|.
inline std::vector<std::int64_t> projection_max_abs_diff(const frt_sinogram &a, const frt_sinogram &b) {
    if (a.p != b.p || a.rows.size() != b.rows.size()) {
        throw error{ "FRT sinograms have different sizes" };
    }
    std::vector<std::int64_t> out;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        std::int64_t m = 0;
        for (std::size_t k = 0; k < a.rows[r].size(); ++k) {
            m = std::max<std::int64_t>(m, std::llabs(a.rows[r][k] - b.rows[r][k]));
        }
        out.push_back(m);
    }
    return out;
}

/**
 * @brief Canonical co-prime directions in order of |p| + |q|, then angle.
 *
 * Within one L1 norm the order runs counter-clockwise from just above -90
 * degrees to +90 degrees.
 */
inline std::vector<direction> farey_directions(std::int64_t l1) {
    std::vector<direction> out;
    // canonical half-plane: p > 0, or p == 0 with q > 0
    for (std::int64_t p = 0; p <= l1; ++p) {
        const std::int64_t q = l1 - p;
        std::vector<std::int64_t> qs{ q };
        if (p > 0 && q > 0) {
            qs.push_back(-q);
        }
        for (const std::int64_t qq : qs) {
            if (std::gcd(p, qq) == 1) {
                out.emplace_back(p, qq);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](direction a, direction b) { return cross(a.vec(), b.vec()) > 0; });
    return out;
}

/**
 * @brief Greedy Katz-sufficient direction set containing @p must_include.
 *
 * Starts from the canonicalized must_include list and appends unused
 * directions in farey_directions order until sum |p| >= nx and sum |q| >= ny.
 */
inline std::vector<direction> sufficient_angle_set(std::int64_t nx, std::int64_t ny, std::span<const direction> must_include) {
    std::vector<direction> set = canonical_unique(must_include);
    std::int64_t sp = 0;
    std::int64_t sq = 0;
    for (const direction d : set) {
        sp += std::llabs(d.p());
        sq += std::llabs(d.q());
    }
    for (std::int64_t l1 = 1; sp < nx || sq < ny; ++l1) {
        for (const direction d : farey_directions(l1)) {
            if (sp >= nx && sq >= ny) {
                break;
            }
            if (std::find(set.begin(), set.end(), d) != set.end()) {
                continue;
            }
            set.push_back(d);
            sp += std::llabs(d.p());
            sq += std::llabs(d.q());
        }
    }
    return set;
}

// ---------------------------------------------------------------------------
// CSV export

/// `p,q,t_min,bins...` per direction.
inline void write_csv(std::ostream &os, std::span<const mojette_projection> set) {
    for (const auto &m : set) {
        os << m.dir.p() << ',' << m.dir.q() << ',' << m.t_min;
        for (const auto b : m.bins) {
            os << ',' << b;
        }
        os << '\n';
    }
}

/// `m,bins...` per FRT row.
inline void write_csv(std::ostream &os, const frt_sinogram &s) {
    for (std::size_t r = 0; r < s.rows.size(); ++r) {
        os << r;
        for (const auto b : s.rows[r]) {
            os << ',' << b;
        }
        os << '\n';
    }
}

}  // namespace ghostmark
