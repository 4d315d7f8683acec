/**
 * @file
 * @brief Embedding ghosts into 8-bit images and verifying the result.
 *
 * A ghost added to an image leaves every projection along the ghost's
 * directions unchanged, while the projections along other directions shift.
 * The record keeps enough of both to tell an untouched watermarked image
 * from an edited one and from one that carries an additional forged ghost.
 */

#pragma once

#include "ghostmark/ghost_builder.hpp"
#include "ghostmark/imageio.hpp"
#include "ghostmark/inflation.hpp"
#include "ghostmark/lattice.hpp"
#include "ghostmark/projections.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ghostmark {

/// Embedding would push pixels outside 0..255.
class range_violation : public error {
  public:
    explicit range_violation(std::vector<vec2> pixels) : error{ describe(pixels) }, pixels_{ std::move(pixels) } {}

    [[nodiscard]] const std::vector<vec2> &pixels() const noexcept { return pixels_; }

  private:
    static std::string describe(const std::vector<vec2> &px) {
        std::string s = std::to_string(px.size()) + " pixel(s) leave 0..255:";
        for (std::size_t i = 0; i < px.size() && i < 16; ++i) {
            s += ' ' + to_string(px[i]);
        }
        if (px.size() > 16) {
            s += " ...";
        }
        return s;
    }

    std::vector<vec2> pixels_;
};

enum class transform_kind { mt, frt };

/// One projection: a Mojette direction or an FRT row.
struct channel {
    transform_kind kind{ transform_kind::mt };
    direction dir{ 1, 0 };
    std::int64_t row{ 0 };

    static channel mt(direction d) { return { transform_kind::mt, d.canonical(), 0 }; }
    static channel frt(std::int64_t r) { return { transform_kind::frt, { 1, 0 }, r }; }

    [[nodiscard]] std::string label() const {
        return kind == transform_kind::mt ? std::to_string(dir.p()) + "," + std::to_string(dir.q()) : "row " + std::to_string(row);
    }

    friend bool operator==(const channel &a, const channel &b) {
        return a.kind == b.kind && (a.kind == transform_kind::mt ? a.dir == b.dir : a.row == b.row);
    }
};

struct channel_stats {
    channel ch;
    std::int64_t max_abs{ 0 };
    std::int64_t min_abs{ 0 };
    std::uint64_t digest{ 0 };

    friend bool operator==(const channel_stats &, const channel_stats &) = default;
};

/// Computes projections of one integer raster, caching the FRT.
class projector {
  public:
    projector(std::vector<std::int64_t> raster, std::int64_t width, std::int64_t height) :
        raster_{ std::move(raster) }, width_{ width }, height_{ height } {}

    explicit projector(const image8 &img) : projector{ as_values(img), img.width(), img.height() } {}

    [[nodiscard]] std::vector<std::int64_t> bins(const channel &c) {
        if (c.kind == transform_kind::mt) {
            return mojette(raster_, width_, height_, c.dir).bins;
        }
        if (!frt_) {
            frt_ = ghostmark::frt(raster_, width_, height_, width_);
        }
        return frt_->rows.at(static_cast<std::size_t>(c.row));
    }

    [[nodiscard]] channel_stats stats(const channel &c) {
        const auto b = bins(c);
        channel_stats s{ c, 0, std::numeric_limits<std::int64_t>::max(), 0xcbf29ce484222325ULL };
        for (const auto v : b) {
            const std::int64_t a = v < 0 ? -v : v;
            s.max_abs = std::max(s.max_abs, a);
            s.min_abs = std::min(s.min_abs, a);
            auto u = static_cast<std::uint64_t>(v);
            for (int k = 0; k < 8; ++k) {
                s.digest = (s.digest ^ (u & 0xffU)) * 0x100000001b3ULL;
                u >>= 8;
            }
        }
        return s;
    }

  private:
    std::vector<std::int64_t> raster_;
    std::int64_t width_;
    std::int64_t height_;
    std::optional<frt_sinogram> frt_;
};

/**
 * @brief Everything a verifier needs besides the image.
 *
 *  - ghost_bins: full projections of the watermarked image along the ghost
 *    channels (identical to the original's)
 *  - recorded: extrema of the original image along the ghost channels
 *  - rotated: extrema of the original image along the 90-degree rotated channels
 *  - check: extrema and digest of the watermarked image along every other
 *    channel of the verification set
 */
struct watermark_record {
    transform_kind transform{ transform_kind::mt };
    std::int64_t width{ 0 };
    std::int64_t height{ 0 };
    vec2 placement;
    std::vector<direction> ghost_directions;
    /// Ghost source: an inflation script, a recipe manifest, or ghost text.
    std::string source;
    std::vector<std::pair<channel, std::vector<std::int64_t>>> ghost_bins;
    std::vector<channel_stats> recorded;
    std::vector<channel_stats> rotated;
    std::vector<channel_stats> check;

    [[nodiscard]] std::int64_t prime() const { return transform == transform_kind::frt ? width : 0; }
};

enum class verdict { authentic, tampered, re_marked };

inline std::string_view verdict_name(verdict v) noexcept {
    switch (v) {
        case verdict::authentic: return "authentic";
        case verdict::tampered: return "tampered";
        case verdict::re_marked: return "re-marked";
    }
    return "?";
}

struct verification_report {
    std::vector<std::pair<channel, std::int64_t>> ghost_angle_diffs;
    std::vector<std::pair<channel, std::int64_t>> other_angle_diffs;
    bool extrema_match{ true };
    verdict result{ verdict::authentic };
};

// ---------------------------------------------------------------------------

/// Canonical directions (|p| < width, |q| < height) along which @p g has only zero line sums.
inline std::vector<direction> detect_ghost_directions(const signed_grid &g) {
    std::vector<direction> out;
    const auto box = g.bbox();
    if (!box) {
        return out;
    }
    for (std::int64_t p = 0; p < box->width(); ++p) {
        for (std::int64_t q = -(box->height() - 1); q < box->height(); ++q) {
            if ((p == 0 && q <= 0) || std::gcd(p, q) != 1) {
                continue;
            }
            const direction d{ p, q };
            if (is_ghost_for(g, d)) {
                out.push_back(d);
            }
        }
    }
    return out;
}

/// Rebuilds a ghost from record source text.
inline signed_grid replay_source(const std::string &source) {
    std::istringstream in{ source };
    std::string first;
    in >> first;
    in.seekg(0);
    if (first == "inflation") {
        return run_script(parse_script(in)).ghost;
    }
    if (first == "recipe") {
        std::string line;
        std::getline(in, line);
        return build_ghost(parse_manifest(line));
    }
    if (first == "ghost") {
        return read_ghost(in);
    }
    throw error{ "unrecognised ghost source '" + first + "'" };
}

/// Zero directions declared by a script or manifest source; empty for raw ghost text.
inline std::vector<direction> source_directions(const std::string &source) {
    std::istringstream in{ source };
    std::string first;
    in >> first;
    in.seekg(0);
    if (first == "inflation") {
        return canonical_unique(parse_script(in).base.zero_directions());
    }
    if (first == "recipe") {
        std::string line;
        std::getline(in, line);
        return canonical_unique(parse_manifest(line).zero_directions());
    }
    return {};
}

/// Pixels where img + shift(ghost, offset) leaves 0..255; throws if the ghost leaves the frame.
inline std::vector<vec2> range_conflicts(const image8 &img, const signed_grid &ghost, vec2 offset) {
    std::vector<vec2> bad;
    for (const auto &[c, v] : ghost) {
        const vec2 p = c + offset;
        if (!img.contains(p)) {
            throw error{ "ghost cell " + to_string(c) + " at offset " + to_string(offset) + " falls outside the " +
                         std::to_string(img.width()) + "x" + std::to_string(img.height()) + " image" };
        }
        const std::int64_t s = img.at(p) + v;
        if (s < 0 || s > 255) {
            bad.push_back(p);
        }
    }
    return bad;
}

/// Pixelwise img + shift(ghost, offset), failing on any out-of-range pixel.
inline image8 add_ghost(const image8 &img, const signed_grid &ghost, vec2 offset) {
    const auto bad = range_conflicts(img, ghost, offset);
    if (!bad.empty()) {
        throw range_violation{ bad };
    }
    image8 out = img;
    for (const auto &[c, v] : ghost) {
        out.set(c + offset, static_cast<std::uint8_t>(img.at(c + offset) + v));
    }
    return out;
}

/// Integer raster of img - k * shift(ghost, offset), without range limits.
inline std::vector<std::int64_t> subtract_ghost(const image8 &img, const signed_grid &ghost, vec2 offset) {
    auto raster = as_values(img);
    for (const auto &[c, v] : ghost) {
        const vec2 p = c + offset;
        if (!img.contains(p)) {
            throw error{ "replayed ghost leaves the image at " + to_string(p) };
        }
        raster[static_cast<std::size_t>((img.height() - 1 - p.y) * img.width() + p.x)] -= v;
    }
    return raster;
}

struct embed_options {
    transform_kind transform{ transform_kind::mt };
    /// Zero directions of the ghost; derived from the source or detected when empty.
    std::vector<direction> ghost_directions;
    /// Verification directions for MT; defaults to sufficient_angle_set(w, h, ghost directions).
    std::vector<direction> check_directions;
    /// Text the verifier replays to rebuild the ghost; defaults to the ghost itself.
    std::string source;
};

struct embed_result {
    image8 image;
    watermark_record record;
};

namespace detail {

inline channel to_channel(direction d, transform_kind t, std::int64_t prime) {
    return t == transform_kind::mt ? channel::mt(d) : channel::frt(direction_to_frt_row(d, prime));
}

inline void push_unique(std::vector<channel> &v, const channel &c) {
    if (std::find(v.begin(), v.end(), c) == v.end()) {
        v.push_back(c);
    }
}

}  // namespace detail

/// Adds the ghost at @p offset and records the verification statistics.
inline embed_result embed(const image8 &img, const signed_grid &ghost, vec2 offset, embed_options opt = {}) {
    if (ghost.empty()) {
        throw error{ "cannot embed an empty ghost" };
    }
    if (opt.source.empty()) {
        std::ostringstream os;
        write_ghost(os, ghost);
        opt.source = os.str();
    }
    if (opt.ghost_directions.empty()) {
        opt.ghost_directions = source_directions(opt.source);
    }
    if (opt.ghost_directions.empty()) {
        opt.ghost_directions = detect_ghost_directions(ghost);
    }
    opt.ghost_directions = canonical_unique(opt.ghost_directions);
    if (!is_ghost_for(ghost, opt.ghost_directions)) {
        throw error{ "the grid is not a ghost for the declared directions" };
    }
    if (opt.transform == transform_kind::frt && (img.width() != img.height() || !is_prime(img.width()))) {
        throw error{ "FRT watermarking needs a square image of prime size" };
    }

    embed_result res{ add_ghost(img, ghost, offset), {} };
    watermark_record &rec = res.record;
    rec.transform = opt.transform;
    rec.width = img.width();
    rec.height = img.height();
    rec.placement = offset;
    rec.ghost_directions = opt.ghost_directions;
    rec.source = opt.source;

    const std::int64_t prime = opt.transform == transform_kind::frt ? img.width() : 0;
    std::vector<channel> ghost_ch;
    std::vector<channel> rot_ch;
    for (const direction d : rec.ghost_directions) {
        detail::push_unique(ghost_ch, detail::to_channel(d, opt.transform, prime));
        detail::push_unique(rot_ch, detail::to_channel(d.rotated(), opt.transform, prime));
    }
    std::vector<channel> check_ch;
    if (opt.transform == transform_kind::mt) {
        const auto dirs = opt.check_directions.empty() ? sufficient_angle_set(img.width(), img.height(), rec.ghost_directions)
                                                       : canonical_unique(opt.check_directions);
        for (const direction d : dirs) {
            check_ch.push_back(channel::mt(d));
        }
    } else {
        for (std::int64_t r = 0; r <= prime; ++r) {
            check_ch.push_back(channel::frt(r));
        }
    }
    std::erase_if(check_ch, [&](const channel &c) { return std::find(ghost_ch.begin(), ghost_ch.end(), c) != ghost_ch.end(); });

    projector original{ img };
    projector marked{ res.image };
    // only extrema are kept for the original; the digest is for check channels
    const auto extrema = [&](const channel &c) {
        channel_stats s = original.stats(c);
        s.digest = 0;
        return s;
    };
    for (const channel &c : ghost_ch) {
        rec.ghost_bins.emplace_back(c, marked.bins(c));
        rec.recorded.push_back(extrema(c));
    }
    for (const channel &c : rot_ch) {
        rec.rotated.push_back(extrema(c));
    }
    for (const channel &c : check_ch) {
        rec.check.push_back(marked.stats(c));
    }
    return res;
}

/**
 * @brief Recomputes the recorded statistics on @p img.
 *
 * Any change along a ghost channel means the image was edited. If those are
 * intact but other statistics moved, or removing the declared ghost does not
 * restore the original's extrema, the image carries a different watermark.
 */
inline verification_report verify(const image8 &img, const watermark_record &rec, const signed_grid &ghost) {
    if (img.width() != rec.width || img.height() != rec.height) {
        throw error{ "image is " + std::to_string(img.width()) + "x" + std::to_string(img.height()) + " but the record expects " +
                     std::to_string(rec.width) + "x" + std::to_string(rec.height) };
    }
    verification_report rep;
    projector test{ img };
    bool ghost_ok = true;
    for (const auto &[c, bins] : rec.ghost_bins) {
        const auto now = test.bins(c);
        std::int64_t m = 0;
        if (now.size() != bins.size()) {
            throw error{ "record bins for " + c.label() + " do not match the frame" };
        }
        for (std::size_t i = 0; i < now.size(); ++i) {
            m = std::max<std::int64_t>(m, std::llabs(now[i] - bins[i]));
        }
        ghost_ok = ghost_ok && m == 0;
        rep.ghost_angle_diffs.emplace_back(c, m);
    }
    auto extrema_diff = [](const channel_stats &a, const channel_stats &b) {
        return std::max<std::int64_t>(std::llabs(a.max_abs - b.max_abs), std::llabs(a.min_abs - b.min_abs));
    };
    for (const channel_stats &s : rec.check) {
        const channel_stats now = test.stats(s.ch);
        rep.other_angle_diffs.emplace_back(s.ch, extrema_diff(now, s));
        if (!(now == s)) {
            rep.extrema_match = false;
        }
    }
    projector restored{ subtract_ghost(img, ghost, rec.placement), img.width(), img.height() };
    for (const auto *group : { &rec.recorded, &rec.rotated }) {
        for (const channel_stats &s : *group) {
            const channel_stats now = restored.stats(s.ch);
            if (now.max_abs != s.max_abs || now.min_abs != s.min_abs) {
                rep.extrema_match = false;
            }
        }
    }
    rep.result = !ghost_ok ? verdict::tampered : (rep.extrema_match ? verdict::authentic : verdict::re_marked);
    return rep;
}

/// verify() with the ghost rebuilt from the record's source.
inline verification_report verify(const image8 &img, const watermark_record &rec) {
    return verify(img, rec, replay_source(rec.source));
}

/**
 * @brief Offset for embedding @p ghost that avoids saturated pixels and sensitive areas.
 *
 * Offsets are scanned with the ghost bbox moving left to right, then bottom to
 * top. Among offsets without range conflicts the one with the least mask
 * weight under the ghost wins; the first such offset in scan order breaks ties.
 */
inline vec2 plan_placement(const image8 &img, const signed_grid &ghost, const std::optional<image8> &mask = std::nullopt) {
    const auto box = ghost.bbox();
    if (!box) {
        throw error{ "cannot place an empty ghost" };
    }
    if (mask && (mask->width() != img.width() || mask->height() != img.height())) {
        throw error{ "mask and image sizes differ" };
    }
    std::optional<vec2> best;
    std::int64_t best_weight = 0;
    for (std::int64_t oy = -box->min.y; oy + box->max.y < img.height(); ++oy) {
        for (std::int64_t ox = -box->min.x; ox + box->max.x < img.width(); ++ox) {
            const vec2 off{ ox, oy };
            std::int64_t weight = 0;
            bool ok = true;
            for (const auto &[c, v] : ghost) {
                const vec2 p = c + off;
                const std::int64_t s = img.at(p) + v;
                if (s < 0 || s > 255) {
                    ok = false;
                    break;
                }
                if (mask) {
                    weight += mask->at(p);
                }
            }
            if (ok && (!best || weight < best_weight)) {
                best = off;
                best_weight = weight;
            }
        }
    }
    if (!best) {
        throw error{ "no offset places the ghost inside the image without range conflicts" };
    }
    return *best;
}

// ---------------------------------------------------------------------------
// .wmr text format

namespace detail {

inline std::string transform_token(transform_kind t) { return t == transform_kind::mt ? "mt" : "frt"; }

inline void write_channel(std::ostream &os, const channel &c) {
    if (c.kind == transform_kind::mt) {
        os << c.dir.p() << ' ' << c.dir.q();
    } else {
        os << "row " << c.row;
    }
}

inline channel read_channel(std::istream &is, transform_kind t) {
    if (t == transform_kind::mt) {
        std::int64_t p = 0, q = 0;
        if (!(is >> p >> q)) {
            throw error{ "record: expected a direction" };
        }
        return channel::mt({ p, q });
    }
    std::string word;
    std::int64_t r = 0;
    if (!(is >> word >> r) || word != "row") {
        throw error{ "record: expected 'row m'" };
    }
    return channel::frt(r);
}

}  // namespace detail

/**
 * @brief Line-oriented sidecar record.
 *
 * ```
 * wmr v1
 * transform mt|frt
 * frame W H
 * placement X Y
 * ghost-direction p q
 * source <line>                       (one per line of the ghost source)
 * projection <channel> b0 b1 ...      (ghost channels, full bins)
 * extrema <channel> max min           (ghost channels, original image)
 * rotated <channel> max min           (rotated channels, original image)
 * check <channel> max min digest      (other channels, watermarked image)
 * ```
 * A channel is `p q` for Mojette records and `row m` for FRT records.
 */
inline void write_record(std::ostream &os, const watermark_record &r) {
    os << "wmr v1\ntransform " << detail::transform_token(r.transform) << "\nframe " << r.width << ' ' << r.height << "\nplacement "
       << r.placement.x << ' ' << r.placement.y << '\n';
    for (const direction d : r.ghost_directions) {
        os << "ghost-direction " << d.p() << ' ' << d.q() << '\n';
    }
    std::istringstream src{ r.source };
    std::string line;
    while (std::getline(src, line)) {
        os << "source " << line << '\n';
    }
    for (const auto &[c, bins] : r.ghost_bins) {
        os << "projection ";
        detail::write_channel(os, c);
        for (const auto b : bins) {
            os << ' ' << b;
        }
        os << '\n';
    }
    const auto stats = [&](const char *tag, const std::vector<channel_stats> &v, bool digest) {
        for (const auto &s : v) {
            os << tag << ' ';
            detail::write_channel(os, s.ch);
            os << ' ' << s.max_abs << ' ' << s.min_abs;
            if (digest) {
                os << ' ' << s.digest;
            }
            os << '\n';
        }
    };
    stats("extrema", r.recorded, false);
    stats("rotated", r.rotated, false);
    stats("check", r.check, true);
}

inline watermark_record read_record(std::istream &in) {
    watermark_record r;
    std::string line;
    if (!std::getline(in, line) || line != "wmr v1") {
        throw error{ "record: missing 'wmr v1' header" };
    }
    bool have_frame = false;
    bool have_transform = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls{ line };
        std::string tag;
        ls >> tag;
        if (tag == "source") {
            r.source += line.size() > 7 ? line.substr(7) : std::string{};
            r.source += '\n';
            continue;
        }
        if (tag == "transform") {
            std::string t;
            ls >> t;
            if (t != "mt" && t != "frt") {
                throw error{ "record: unknown transform '" + t + "'" };
            }
            r.transform = t == "mt" ? transform_kind::mt : transform_kind::frt;
            have_transform = true;
        } else if (tag == "frame") {
            if (!(ls >> r.width >> r.height)) {
                throw error{ "record: bad frame line" };
            }
            have_frame = true;
        } else if (tag == "placement") {
            if (!(ls >> r.placement.x >> r.placement.y)) {
                throw error{ "record: bad placement line" };
            }
        } else if (tag == "ghost-direction") {
            std::int64_t p = 0, q = 0;
            if (!(ls >> p >> q)) {
                throw error{ "record: bad ghost-direction line" };
            }
            r.ghost_directions.emplace_back(p, q);
        } else if (tag == "projection") {
            const channel c = detail::read_channel(ls, r.transform);
            std::vector<std::int64_t> bins;
            std::int64_t b = 0;
            while (ls >> b) {
                bins.push_back(b);
            }
            r.ghost_bins.emplace_back(c, std::move(bins));
        } else if (tag == "extrema" || tag == "rotated" || tag == "check") {
            channel_stats s{ detail::read_channel(ls, r.transform) };
            if (!(ls >> s.max_abs >> s.min_abs)) {
                throw error{ "record: bad " + tag + " line" };
            }
            if (tag == "check" && !(ls >> s.digest)) {
                throw error{ "record: check line without digest" };
            }
            (tag == "extrema" ? r.recorded : tag == "rotated" ? r.rotated : r.check).push_back(s);
        } else {
            throw error{ "record: unknown line '" + tag + "'" };
        }
        if (!have_transform && tag != "transform") {
            throw error{ "record: transform must precede other entries" };
        }
    }
    if (!have_frame) {
        throw error{ "record: missing frame" };
    }
    return r;
}

}  // namespace ghostmark
