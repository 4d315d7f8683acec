// Command-line front end: generate -> analyze -> inflate -> project -> embed -> verify -> render.

#include "ghostmark/boundary.hpp"
#include "ghostmark/constructions.hpp"
#include "ghostmark/figures.hpp"
#include "ghostmark/ghost_builder.hpp"
#include "ghostmark/imageio.hpp"
#include "ghostmark/inflation.hpp"
#include "ghostmark/projections.hpp"
#include "ghostmark/watermark.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace ghostmark;

namespace {

struct globals {
    std::uint64_t seed = 1;
    std::string out_dir = ".";
};

std::string read_text(const fs::path &p) {
    std::ifstream in{ p };
    if (!in) {
        throw error{ "cannot open " + p.string() };
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path output_path(const globals &g, const std::string &name) {
    const fs::path p{ name };
    if (p.is_absolute() || p.has_parent_path()) {
        return p;
    }
    fs::create_directories(g.out_dir);
    return fs::path{ g.out_dir } / p;
}

void write_text(const fs::path &p, const std::string &text) {
    std::ofstream os{ p, std::ios::binary };
    if (!os) {
        throw error{ "cannot write " + p.string() };
    }
    os << text;
}

std::string box_of(const signed_grid &g) {
    const auto b = g.bbox();
    return b ? std::to_string(b->width()) + "x" + std::to_string(b->height()) : "0x0";
}

std::vector<direction> read_directions(const fs::path &p) {
    std::istringstream in{ read_text(p) };
    std::vector<direction> dirs;
    std::string line;
    while (std::getline(in, line)) {
        for (char &c : line) {
            if (c == ',') {
                c = ' ';
            }
        }
        std::istringstream ls{ line };
        std::int64_t a = 0, b = 0;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!(ls >> a >> b)) {
            throw error{ "direction file line '" + line + "' is not 'p q'" };
        }
        dirs.emplace_back(a, b);
    }
    return dirs;
}

vec2 parse_offset(const std::string &s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
        throw error{ "offset must be X,Y" };
    }
    return { std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1)) };
}

std::string catalog_text() {
    std::string s = "Figure ids for `reproduce`:\n";
    for (const auto &f : figure_catalog) {
        s += "  " + std::string{ f.id } + std::string(8 - f.id.size(), ' ') + std::string{ f.summary } + "\n";
    }
    return s;
}

// ---------------------------------------------------------------------------

struct generate_args {
    std::string fam = "a";
    std::size_t n = 0;
    std::string recursions;
    bool boundary = false;
    std::string manifest;
    std::string name;
};

int run_generate(const globals &g, const generate_args &a) {
    ghost_recipe r;
    if (!a.manifest.empty()) {
        std::istringstream in{ read_text(a.manifest) };
        std::string line;
        std::getline(in, line);
        r = parse_manifest(line);
    } else {
        if (a.n < (a.boundary ? 2U : 1U)) {
            throw error{ "--n must be at least " + std::string{ a.boundary ? "2 with --boundary" : "1" } };
        }
        const std::size_t steps = a.boundary ? a.n - 1 : a.n;
        r = a.recursions.empty() ? family_recipe(parse_family(a.fam), steps, a.boundary)
                                 : family_recipe(parse_family(a.fam), steps, parse_recursions(a.recursions), a.boundary);
    }
    const signed_grid ghost = build_ghost(r);
    const std::string stem = a.name.empty() ? (r.fam ? std::string{ "ghost_" } + (a.boundary ? "V" : "U") + std::to_string(r.zero_directions().size()) : "ghost") : a.name;
    write_ghost(output_path(g, stem + ".txt"), ghost);
    write_text(output_path(g, stem + ".manifest"), to_manifest(r) + "\n");

    const std::size_t n = r.zero_directions().size();
    std::cout << "cells=" << ghost.size() << " box=" << box_of(ghost);
    bool ok = is_ghost_for(ghost, r.zero_directions());
    if (r.boundary) {
        const std::int64_t area = enclosed_area(ghost, *r.boundary);
        std::cout << " P=" << ghost.size() << " A=" << area;
        if (r.fam && recursion_string(r.recursion_choices).find('+') == std::string::npos) {
            const std::int64_t predicted = predicted_perimeter(n);
            std::cout << " P_predicted=" << predicted << " A_predicted=" << predicted_area(n);
            ok = ok && predicted == static_cast<std::int64_t>(ghost.size()) && predicted_area(n) == area;
        }
    }
    std::cout << " zero_dirs=" << n << "\n";
    if (!ok) {
        std::cerr << "error\tgenerate\tpost-condition failed\n";
        return 2;
    }
    return 0;
}

struct analyze_args {
    std::string fam = "a";
    std::size_t n = 0;
    std::string ghost;
    bool header = false;
};

int run_analyze(const analyze_args &a) {
    const family f = parse_family(a.fam);
    if (a.n < 3) {
        throw error{ "--n must be at least 3" };
    }
    const signed_grid v = a.ghost.empty() ? boundary_ghost(f, a.n) : read_ghost(fs::path{ a.ghost });
    const auto adj = segment_lengths(v, family_shifts(f, a.n, shift_set::adjacency));
    const auto alt = segment_lengths(v, family_shifts(f, a.n, shift_set::alternate));
    const auto c = connectivity(v);
    if (a.header) {
        std::cout << "family\tn\tP\tA\ts1\ts2\ts3\ts1'\ts2'\ts3'\tfour_connected\teight_connected\tsimply_connected\tmax_gap_sq\talternating\n";
    }
    std::cout << family_tag(f) << '\t' << a.n << '\t' << perimeter_count(v) << '\t' << enclosed_area(v, boundary_direction(f));
    for (const auto s : adj) {
        std::cout << '\t' << s;
    }
    for (const auto s : alt) {
        std::cout << '\t' << s;
    }
    std::cout << '\t' << c.four_connected << '\t' << c.eight_connected << '\t' << c.simply_connected << '\t' << c.max_gap_sq << '\t'
              << (c.alternating ? (*c.alternating ? "1" : "0") : "-") << '\n';
    return 0;
}

struct inflate_args {
    std::string script;
    std::string fam = "b";
    std::size_t n = 12;
    std::size_t tiles = 0;
    std::string name = "inflated";
};

int run_inflate(const globals &g, const inflate_args &a) {
    inflation_script script;
    if (!a.script.empty()) {
        std::istringstream in{ read_text(a.script) };
        script = parse_script(in);
    } else {
        if (a.tiles == 0) {
            throw error{ "give --script or --tiles for a random walk" };
        }
        script = random_walk_inflate(parse_family(a.fam), a.n, a.tiles, g.seed).script;
    }
    const script_result r = run_script(script);
    write_ghost(output_path(g, a.name + ".txt"), r.ghost);
    write_text(output_path(g, a.name + ".script"), to_text(script));
    const auto &last = r.trace.back();
    std::cout << "steps=" << script.steps.size() << " cells=" << r.ghost.size() << " area=" << (last.area ? std::to_string(*last.area) : "-")
              << " box=" << box_of(r.ghost) << "\n";
    return is_ghost_for(r.ghost, script.base.zero_directions()) ? 0 : 2;
}

struct project_args {
    std::string image;
    std::string mt;
    bool frt = false;
    std::string out;
};

int run_project(const globals &g, const project_args &a) {
    const image8 img = read_pgm(fs::path{ a.image });
    std::ostringstream os;
    if (a.frt) {
        write_csv(os, frt(img, img.width()));
    } else {
        if (a.mt.empty()) {
            throw error{ "give --mt dirs-file or --frt" };
        }
        std::vector<mojette_projection> set;
        for (const direction d : read_directions(a.mt)) {
            set.push_back(mojette(img, d));
        }
        write_csv(os, set);
    }
    if (a.out.empty()) {
        std::cout << os.str();
    } else {
        write_text(output_path(g, a.out), os.str());
    }
    return 0;
}

struct embed_args {
    std::string image;
    std::string ghost;
    std::string offset = "auto";
    std::string out = "marked.pgm";
    std::string record = "marked.wmr";
    std::string source;
    std::string transform = "mt";
    std::string mask;
};

int run_embed(const globals &g, const embed_args &a) {
    const image8 img = read_pgm(fs::path{ a.image });
    const signed_grid ghost = read_ghost(fs::path{ a.ghost });
    embed_options opt;
    if (a.transform != "mt" && a.transform != "frt") {
        throw error{ "--transform must be mt or frt" };
    }
    opt.transform = a.transform == "mt" ? transform_kind::mt : transform_kind::frt;
    if (!a.source.empty()) {
        opt.source = read_text(a.source);
        if (!(replay_source(opt.source) == ghost)) {
            throw error{ "--source does not rebuild the ghost in --ghost" };
        }
    }
    std::optional<image8> mask;
    if (!a.mask.empty()) {
        mask = read_pgm(fs::path{ a.mask });
    }
    const vec2 offset = a.offset == "auto" ? plan_placement(img, ghost, mask) : parse_offset(a.offset);
    const embed_result res = embed(img, ghost, offset, opt);
    write_pgm(output_path(g, a.out), res.image);
    std::ostringstream rec;
    write_record(rec, res.record);
    write_text(output_path(g, a.record), rec.str());
    std::cout << "offset=" << offset.x << ',' << offset.y << " ghost_dirs=" << res.record.ghost_directions.size()
              << " check_channels=" << res.record.check.size() << "\n";
    return 0;
}

struct verify_args {
    std::string image;
    std::string record;
    std::string report;
};

int run_verify(const globals &g, const verify_args &a) {
    const image8 img = read_pgm(fs::path{ a.image });
    std::istringstream in{ read_text(a.record) };
    const watermark_record rec = read_record(in);
    const verification_report rep = verify(img, rec);
    std::ostringstream os;
    os << "kind\tchannel\tmax_abs_diff\n";
    for (const auto &[c, d] : rep.ghost_angle_diffs) {
        os << "ghost\t" << c.label() << '\t' << d << '\n';
    }
    for (const auto &[c, d] : rep.other_angle_diffs) {
        os << "other\t" << c.label() << '\t' << d << '\n';
    }
    os << "extrema_match\t-\t" << (rep.extrema_match ? 1 : 0) << '\n';
    os << "verdict\t-\t" << verdict_name(rep.result) << '\n';
    if (!a.report.empty()) {
        write_text(output_path(g, a.report), os.str());
    }
    std::cout << "verdict=" << verdict_name(rep.result) << "\n";
    return rep.result == verdict::authentic ? 0 : 3;
}

struct render_args {
    std::string ghost;
    std::string out = "ghost.pgm";
    std::int64_t scale = 1;
    bool no_flip = false;
};

int run_render(const globals &g, const render_args &a) {
    render_style style;
    style.scale = a.scale;
    style.flip_y = !a.no_flip;
    const image8 img = render_ghost(read_ghost(fs::path{ a.ghost }), style);
    write_pgm(output_path(g, a.out), img);
    std::cout << "image=" << img.width() << "x" << img.height() << "\n";
    return 0;
}

int run_table5(const globals &g, const std::string &out) {
    std::ostringstream os;
    write_segment_table(os, segment_table());
    if (out.empty()) {
        std::cout << os.str();
    } else {
        write_text(output_path(g, out), os.str());
    }
    return 0;
}

struct reproduce_args {
    std::string id;
    std::string image;
    std::int64_t scale = 4;
    std::size_t tiles = 10;
};

int run_reproduce(const globals &g, const reproduce_args &a) {
    figure_options opt;
    opt.seed = g.seed;
    opt.scale = a.scale;
    opt.walk_tiles = a.tiles;
    if (!a.image.empty()) {
        opt.host = read_pgm(fs::path{ a.image });
    }
    const figure_output f = reproduce_figure(a.id, opt);
    for (const auto &im : f.images) {
        write_pgm(output_path(g, im.name + ".pgm"), im.image);
    }
    if (!f.tsv.empty()) {
        write_text(output_path(g, f.id + ".tsv"), f.tsv);
    }
    write_text(output_path(g, f.id + ".stats"), f.id + "\t" + f.stats + "\n");
    std::cout << f.id << '\t' << f.stats << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{ "Ghost construction, inflation and projection watermarking" };
    app.footer(catalog_text());
    app.require_subcommand(1);
    globals g;
    app.add_option("--seed", g.seed, "Seed for random-walk inflation and synthetic images")->capture_default_str();
    app.add_option("--out-dir", g.out_dir, "Directory for output files")->capture_default_str();

    generate_args ga;
    auto *gen = app.add_subcommand("generate", "Build a family ghost U_n (or V_n with --boundary) and its manifest");
    gen->add_option("--family", ga.fam, "a, a', b or b'")->capture_default_str();
    gen->add_option("--n", ga.n, "Number of zero directions");
    gen->add_option("--recursions", ga.recursions, "Recursion signs, e.g. '-+--'");
    gen->add_flag("--boundary", ga.boundary, "Append the family's boundary direction");
    gen->add_option("--manifest", ga.manifest, "Build from a recipe manifest file instead");
    gen->add_option("--name", ga.name, "Output file stem");

    analyze_args aa;
    auto *ana = app.add_subcommand("analyze", "Perimeter, area, segments and connectivity of V_n as one TSV line");
    ana->add_option("--family", aa.fam)->capture_default_str();
    ana->add_option("--n", aa.n, "Boundary ghost index")->required();
    ana->add_option("--ghost", aa.ghost, "Analyse this ghost file instead of the generated V_n");
    ana->add_flag("--header", aa.header, "Print a header line");

    inflate_args ia;
    auto *inf = app.add_subcommand("inflate", "Replay an inflation script or run a seeded random walk");
    inf->add_option("--script", ia.script, "Inflation script to replay");
    inf->add_option("--family", ia.fam, "Random walk family")->capture_default_str();
    inf->add_option("--n", ia.n, "Random walk ghost index")->capture_default_str();
    inf->add_option("--tiles", ia.tiles, "Random walk tile count");
    inf->add_option("--name", ia.name, "Output file stem")->capture_default_str();

    project_args pa;
    auto *proj = app.add_subcommand("project", "Mojette or FRT projections of a PGM as CSV");
    proj->add_option("image", pa.image, "Input PGM")->required();
    auto *mt = proj->add_option("--mt", pa.mt, "File of directions, one 'p q' per line");
    auto *frt_flag = proj->add_flag("--frt", pa.frt, "Finite Radon transform of a prime-sized image");
    mt->excludes(frt_flag);
    proj->add_option("--out", pa.out, "CSV output (stdout if omitted)");

    embed_args ea;
    auto *emb = app.add_subcommand("embed", "Add a ghost to an image and write the verification record");
    emb->add_option("--image", ea.image)->required();
    emb->add_option("--ghost", ea.ghost)->required();
    emb->add_option("--offset", ea.offset, "X,Y or 'auto'")->capture_default_str();
    emb->add_option("--out", ea.out)->capture_default_str();
    emb->add_option("--record", ea.record)->capture_default_str();
    emb->add_option("--source", ea.source, "Inflation script or manifest that rebuilds the ghost");
    emb->add_option("--transform", ea.transform, "mt or frt")->capture_default_str();
    emb->add_option("--mask", ea.mask, "PGM weighting sensitive pixels for --offset auto");

    verify_args va;
    auto *ver = app.add_subcommand("verify", "Check a watermarked image against its record (exit 3 unless authentic)");
    ver->add_option("--image", va.image)->required();
    ver->add_option("--record", va.record)->required();
    ver->add_option("--report", va.report, "TSV report");

    render_args ra;
    auto *ren = app.add_subcommand("render", "Draw a ghost file as a PGM (white +1, black -1, grey 0)");
    ren->add_option("--ghost", ra.ghost)->required();
    ren->add_option("--out", ra.out)->capture_default_str();
    ren->add_option("--scale", ra.scale)->capture_default_str()->check(CLI::PositiveNumber);
    ren->add_flag("--no-flip", ra.no_flip, "Keep y growing downward");

    std::string t5_out;
    auto *t5 = app.add_subcommand("table5", "Segment lengths, perimeter and area of V_3^a .. V_8^a as TSV");
    t5->add_option("--out", t5_out, "Output file (stdout if omitted)");

    reproduce_args rp;
    auto *rep = app.add_subcommand("reproduce", "Regenerate a figure: images, stats line and tables");
    rep->add_option("figure", rp.id, "Figure id (see list below)")->required();
    rep->add_option("--image", rp.image, "131x131 host PGM for fig12/fig13");
    rep->add_option("--scale", rp.scale, "Pixel magnification of rendered ghosts")->capture_default_str()->check(CLI::PositiveNumber);
    rep->add_option("--tiles", rp.tiles, "Tiles for fig10")->capture_default_str();
    rep->footer(catalog_text());

    CLI11_PARSE(app, argc, argv);

    const std::string which = app.get_subcommands().front()->get_name();
    try {
        if (which == "generate") {
            return run_generate(g, ga);
        }
        if (which == "analyze") {
            return run_analyze(aa);
        }
        if (which == "inflate") {
            return run_inflate(g, ia);
        }
        if (which == "project") {
            return run_project(g, pa);
        }
        if (which == "embed") {
            return run_embed(g, ea);
        }
        if (which == "verify") {
            return run_verify(g, va);
        }
        if (which == "render") {
            return run_render(g, ra);
        }
        if (which == "table5") {
            return run_table5(g, t5_out);
        }
        return run_reproduce(g, rp);
    } catch (const std::exception &e) {
        std::cerr << "error\t" << which << '\t' << e.what() << '\n';
        return 1;
    }
}
