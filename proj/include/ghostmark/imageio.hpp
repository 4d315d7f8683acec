/**
 * @file
 * @brief PGM reading/writing, ghost text files and figure-style rendering.
 */

#pragma once

#include "ghostmark/lattice.hpp"
#include "ghostmark/projections.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace ghostmark {

namespace detail {

/// Next whitespace-delimited header token, skipping `#` comments.
inline std::string pgm_token(std::istream &in) {
    std::string tok;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') {
                c = in.get();
            }
        } else if (std::isspace(c) != 0) {
            if (!tok.empty()) {
                return tok;
            }
        } else {
            tok.push_back(static_cast<char>(c));
        }
        c = in.get();
    }
    if (tok.empty()) {
        throw error{ "malformed PGM: truncated header" };
    }
    return tok;
}

inline std::int64_t pgm_number(std::istream &in, const char *what) {
    const std::string tok = pgm_token(in);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9) {
        throw error{ std::string{ "malformed PGM: bad " } + what + " '" + tok + "'" };
    }
    return std::stoll(tok);
}

}  // namespace detail

/// Reads a binary (P5) or ASCII (P2) PGM with maxval 255.
inline image8 read_pgm(std::istream &in) {
    const std::string magic = detail::pgm_token(in);
    if (magic != "P5" && magic != "P2") {
        throw error{ "malformed PGM: magic '" + magic + "' is neither P5 nor P2" };
    }
    const std::int64_t w = detail::pgm_number(in, "width");
    const std::int64_t h = detail::pgm_number(in, "height");
    const std::int64_t maxval = detail::pgm_number(in, "maxval");
    if (w < 1 || h < 1) {
        throw error{ "malformed PGM: empty image" };
    }
    if (maxval != 255) {
        throw error{ "unsupported PGM maxval " + std::to_string(maxval) + " (need 255)" };
    }
    std::vector<std::uint8_t> samples(static_cast<std::size_t>(w * h));
    if (magic == "P5") {
        // pgm_token consumed exactly one whitespace byte after maxval
        in.read(reinterpret_cast<char *>(samples.data()), static_cast<std::streamsize>(samples.size()));
        if (in.gcount() != static_cast<std::streamsize>(samples.size())) {
            throw error{ "malformed PGM: truncated pixel data" };
        }
    } else {
        for (auto &s : samples) {
            const std::int64_t v = detail::pgm_number(in, "sample");
            if (v > 255) {
                throw error{ "malformed PGM: sample " + std::to_string(v) + " exceeds maxval" };
            }
            s = static_cast<std::uint8_t>(v);
        }
    }
    return { w, h, std::move(samples) };
}

inline image8 read_pgm(const std::filesystem::path &path) {
    std::ifstream in{ path, std::ios::binary };
    if (!in) {
        throw error{ "cannot open " + path.string() };
    }
    return read_pgm(in);
}

/// Canonical binary PGM: `P5 <w> <h> 255\n` followed by the raster.
inline void write_pgm(std::ostream &os, const image8 &img) {
    os << "P5 " << img.width() << ' ' << img.height() << " 255\n";
    os.write(reinterpret_cast<const char *>(img.samples().data()), static_cast<std::streamsize>(img.samples().size()));
}

/// ASCII PGM, one raster row per line.
inline void write_pgm_ascii(std::ostream &os, const image8 &img) {
    os << "P2 " << img.width() << ' ' << img.height() << " 255\n";
    for (std::int64_t row = 0; row < img.height(); ++row) {
        for (std::int64_t col = 0; col < img.width(); ++col) {
            os << (col == 0 ? "" : " ") << static_cast<int>(img.raster(col, row));
        }
        os << '\n';
    }
}

inline void write_pgm(const std::filesystem::path &path, const image8 &img) {
    std::ofstream os{ path, std::ios::binary };
    if (!os) {
        throw error{ "cannot write " + path.string() };
    }
    write_pgm(os, img);
}

// ---------------------------------------------------------------------------
// rendering

struct render_style {
    std::int64_t scale{ 1 };
    bool flip_y{ true };
    std::uint8_t positive{ 255 };
    std::uint8_t negative{ 0 };
    std::uint8_t zero{ 128 };
};

/**
 * @brief Draws a {-1, 0, +1} grid with a one-pixel grey margin around its bbox.
 *
 * With flip_y the top image row shows the largest y (the image then reads
 * like a plot); without it row 0 is the smallest y.
 */
inline image8 render_ghost(const signed_grid &g, const render_style &style = {}) {
    if (style.scale < 1) {
        throw error{ "render scale must be >= 1" };
    }
    const rect box = g.bbox().value_or(rect{ { 0, 0 }, { -1, -1 } });
    const std::int64_t w = (box.width() + 2) * style.scale;
    const std::int64_t h = (box.height() + 2) * style.scale;
    std::vector<std::uint8_t> raster(static_cast<std::size_t>(w * h), style.zero);
    for (const auto &[c, v] : g) {
        if (v < -1 || v > 1) {
            throw error{ "cannot render value " + std::to_string(v) + " at " + to_string(c) };
        }
        const std::int64_t col = c.x - box.min.x + 1;
        const std::int64_t row = style.flip_y ? box.max.y - c.y + 1 : c.y - box.min.y + 1;
        const std::uint8_t shade = v > 0 ? style.positive : style.negative;
        for (std::int64_t dy = 0; dy < style.scale; ++dy) {
            for (std::int64_t dx = 0; dx < style.scale; ++dx) {
                raster[static_cast<std::size_t>((row * style.scale + dy) * w + col * style.scale + dx)] = shade;
            }
        }
    }
    return { w, h, std::move(raster) };
}

// ---------------------------------------------------------------------------
// ghost text format

/// `ghost v1 <ncells>` then one `x y value` line per nonzero cell, sorted by (y, x).
inline void write_ghost(std::ostream &os, const signed_grid &g) {
    os << "ghost v1 " << g.size() << '\n';
    for (const auto &[c, v] : g) {
        os << c.x << ' ' << c.y << ' ' << v << '\n';
    }
}

inline void write_ghost(const std::filesystem::path &path, const signed_grid &g) {
    std::ofstream os{ path };
    if (!os) {
        throw error{ "cannot write " + path.string() };
    }
    write_ghost(os, g);
}

inline signed_grid read_ghost(std::istream &in) {
    std::string line;
    std::size_t lineno = 0;
    auto next = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            const auto first = line.find_first_not_of(" \t\r");
            if (first != std::string::npos && line[first] != '#') {
                return true;
            }
        }
        return false;
    };
    if (!next()) {
        throw error{ "ghost file is empty" };
    }
    std::istringstream hs{ line };
    std::string tag, version;
    std::int64_t count = -1;
    if (!(hs >> tag >> version >> count) || tag != "ghost" || version != "v1" || count < 0) {
        throw error{ "ghost file: bad header '" + line + "'" };
    }
    signed_grid g;
    while (next()) {
        std::istringstream ls{ line };
        std::int64_t x = 0, y = 0, v = 0;
        std::string rest;
        if (!(ls >> x >> y >> v) || (ls >> rest)) {
            throw error{ "ghost file line " + std::to_string(lineno) + ": expected 'x y value'" };
        }
        if (v == 0) {
            throw error{ "ghost file line " + std::to_string(lineno) + ": zero value" };
        }
        if (g.contains({ x, y })) {
            throw error{ "ghost file line " + std::to_string(lineno) + ": duplicate cell " + to_string(vec2{ x, y }) };
        }
        g.set({ x, y }, v);
    }
    if (static_cast<std::int64_t>(g.size()) != count) {
        throw error{ "ghost file declares " + std::to_string(count) + " cells but lists " + std::to_string(g.size()) };
    }
    return g;
}

inline signed_grid read_ghost(const std::filesystem::path &path) {
    std::ifstream in{ path };
    if (!in) {
        throw error{ "cannot open " + path.string() };
    }
    return read_ghost(in);
}

}  // namespace ghostmark
