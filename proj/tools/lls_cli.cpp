/**
 * @file lls_cli.cpp
 * @brief Command-line driver for the level lines shortening pipeline.
 *
 * Exit codes: 0 success, 2 format/parameter problems, 3 geometry failures,
 * 4 numerical failures, 5 step-budget timeouts.
 */

#include <lls.h>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace {

struct ImageDeleter {
    void operator()(lls_image* p) const { lls_image_free(p); }
};
struct ConfigDeleter {
    void operator()(lls_config* p) const { lls_config_free(p); }
};
struct LinesDeleter {
    void operator()(lls_lines* p) const { lls_lines_free(p); }
};

using ImagePtr = std::unique_ptr<lls_image, ImageDeleter>;
using ConfigPtr = std::unique_ptr<lls_config, ConfigDeleter>;
using LinesPtr = std::unique_ptr<lls_lines, LinesDeleter>;

[[noreturn]] void die(lls_status s) {
    std::fprintf(stderr, "error: %s\n", lls_last_error());
    std::exit(int(s));
}

void check(lls_status s) {
    if (s != LLS_OK)
        die(s);
}

struct CommonOpts {
    std::string input;
    double time = 0.0;
    std::string scheme = "cs";
    double quant = 1.0;
    double offset = 0.5;
    double precision = 0.1;
    std::string border = "fixed";
    bool no_pad = false;
    double split = -1.0;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_time) {
    cmd->add_option("input", o.input, "input image (PGM P2/P5 or LLSF)")
        ->required();
    if (with_time)
        cmd->add_option("-t,--time", o.time, "evolution time (scale)")
            ->check(CLI::NonNegativeNumber);
    cmd->add_option("--scheme", o.scheme, "flow: cs (curve shortening) or as (affine)")
        ->check(CLI::IsMember({"cs", "as"}));
    cmd->add_option("-q,--quant", o.quant, "level quantization step")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--offset", o.offset, "level offset");
    cmd->add_option("--precision", o.precision, "vertex spacing in pixels")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--border", o.border, "domain boundary handling")
        ->check(CLI::IsMember({"fixed", "evolve"}));
    cmd->add_flag("--no-pad", o.no_pad, "skip the one-sample zero frame");
    cmd->add_option("--threads", o.threads, "worker threads (1 = reference)")
        ->check(CLI::PositiveNumber);
}

ConfigPtr make_config(const CommonOpts& o) {
    ConfigPtr cfg(lls_config_new());
    check(lls_config_set_time(cfg.get(), o.time));
    check(lls_config_set_scheme(cfg.get(), o.scheme.c_str()));
    check(lls_config_set_quant(cfg.get(), o.quant));
    check(lls_config_set_offset(cfg.get(), o.offset));
    check(lls_config_set_precision(cfg.get(), o.precision));
    check(lls_config_set_border(cfg.get(), o.border.c_str()));
    check(lls_config_set_pad(cfg.get(), o.no_pad ? 0 : 1));
    check(lls_config_set_split(cfg.get(), o.split));
    check(lls_config_set_threads(cfg.get(), o.threads));
    return cfg;
}

ImagePtr load(const std::string& path) {
    lls_image* raw = nullptr;
    check(lls_image_load(path.c_str(), &raw));
    return ImagePtr(raw);
}

std::vector<int64_t> parse_lut(const std::string& spec, const lls_image* img) {
    // Range of integer values the table must cover.
    double hi = 0;
    for (int y = 0; y < lls_image_height(img); ++y)
        for (int x = 0; x < lls_image_width(img); ++x)
            hi = std::max(hi, lls_image_get(img, x, y));
    const int64_t n = int64_t(hi) + 1;

    std::vector<int64_t> lut;
    if (spec.rfind("gain:", 0) == 0) {
        int64_t a = std::stoll(spec.substr(5));
        for (int64_t v = 0; v < n; ++v)
            lut.push_back(a * v);
    } else if (spec.rfind("shift:", 0) == 0) {
        int64_t b = std::stoll(spec.substr(6));
        for (int64_t v = 0; v < n; ++v)
            lut.push_back(v + b);
    } else if (spec.rfind("file:", 0) == 0) {
        std::ifstream in(spec.substr(5));
        int64_t v;
        while (in >> v)
            lut.push_back(v);
    } else {
        std::fprintf(stderr, "error: lut spec must be gain:A, shift:B or file:PATH\n");
        std::exit(2);
    }
    return lut;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Level lines shortening: evolve all level lines of an image "
                 "by curve/affine shortening and repaint it"};
    app.require_subcommand(1);

    // run ---------------------------------------------------------------
    CommonOpts run_opts;
    std::string out_image, out_float, out_svg_before, out_svg_after;
    std::string out_curvature, out_tree, out_oracle, out_report, out_trace;
    bool tree_vertices = false;
    auto* run = app.add_subcommand("run", "full pipeline");
    add_common(run, run_opts, true);
    run->add_option("--split", run_opts.split,
                    "semigroup test: run LLS(time-s) after LLS(s)");
    run->add_option("-o,--output", out_image, "evolved image (PGM)");
    run->add_option("--float-output", out_float, "evolved image (LLSF)");
    run->add_option("--svg-before", out_svg_before, "initial level lines (SVG)");
    run->add_option("--svg-after", out_svg_after, "evolved level lines (SVG)");
    run->add_option("--curvature-map", out_curvature, "curvature map (SVG)");
    run->add_option("--tree-json", out_tree, "inclusion tree (JSON)");
    run->add_flag("--tree-vertices", tree_vertices, "include vertices in the tree JSON");
    run->add_option("--oracle-diff", out_oracle,
                    "diff report against the finite-difference solver (JSON)");
    run->add_option("--report", out_report, "run report (JSON; timings vary)");
    run->add_option("--trace", out_trace, "per-curve evolution trace (CSV)");

    // extract -------------------------------------------------------------
    CommonOpts ex_opts;
    std::string ex_svg, ex_json, ex_curv;
    bool ex_vertices = false;
    auto* extract = app.add_subcommand("extract", "level lines only, no evolution");
    add_common(extract, ex_opts, false);
    extract->add_option("--svg", ex_svg, "level lines (SVG)");
    extract->add_option("--json", ex_json, "inclusion tree (JSON)");
    extract->add_option("--curvature-map", ex_curv, "curvature map (SVG)");
    extract->add_flag("--vertices", ex_vertices, "include vertices in the JSON");

    // oracle --------------------------------------------------------------
    CommonOpts fd_opts;
    double fd_dt = 0.1, fd_eps = 1e-4;
    std::string fd_out;
    auto* oracle = app.add_subcommand(
        "oracle", "finite-difference curvature motion on the pixel grid");
    add_common(oracle, fd_opts, true);
    oracle->add_option("--dt", fd_dt, "time step (CFL: at most 0.25)");
    oracle->add_option("--eps", fd_eps, "gradient regularizer");
    oracle->add_option("-o,--output", fd_out, "evolved image (PGM)")->required();

    // contrast-test ---------------------------------------------------------
    CommonOpts ct_opts;
    std::string ct_lut = "gain:2", ct_report;
    auto* contrast = app.add_subcommand(
        "contrast-test", "compare LLS(lut(u)) against lut(LLS(u))");
    add_common(contrast, ct_opts, true);
    contrast->add_option("--lut", ct_lut, "gain:A, shift:B or file:PATH");
    contrast->add_option("--report", ct_report, "write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        ImagePtr img = load(run_opts.input);
        ConfigPtr cfg = make_config(run_opts);
        auto set_out = [&](const char* key, const std::string& path) {
            if (!path.empty())
                check(lls_config_set_output(cfg.get(), key, path.c_str()));
        };
        set_out("image", out_image);
        set_out("float_image", out_float);
        set_out("svg_before", out_svg_before);
        set_out("svg_after", out_svg_after);
        set_out("curvature_map", out_curvature);
        set_out(tree_vertices ? "tree_json_vertices" : "tree_json", out_tree);
        set_out("oracle_diff", out_oracle);
        set_out("report", out_report);
        set_out("trace_csv", out_trace);
        lls_image* out = nullptr;
        check(lls_run(img.get(), cfg.get(), &out));
        ImagePtr guard(out);
        std::printf("done: %dx%d\n", lls_image_width(out), lls_image_height(out));
    } else if (extract->parsed()) {
        ImagePtr img = load(ex_opts.input);
        lls_lines* raw = nullptr;
        check(lls_extract(img.get(), ex_opts.quant, ex_opts.offset,
                          ex_opts.precision, ex_opts.no_pad ? 0 : 1, &raw));
        LinesPtr lines(raw);
        if (!ex_svg.empty())
            check(lls_lines_write_svg(lines.get(), ex_svg.c_str(), 0));
        if (!ex_curv.empty())
            check(lls_lines_write_svg(lines.get(), ex_curv.c_str(), 1));
        if (!ex_json.empty())
            check(lls_lines_write_json(lines.get(), ex_json.c_str(),
                                       ex_vertices ? 1 : 0));
        std::printf("%d level lines\n", lls_lines_count(lines.get()));
    } else if (oracle->parsed()) {
        ImagePtr img = load(fd_opts.input);
        lls_image* out = nullptr;
        check(lls_fd_evolve(img.get(), fd_dt, fd_eps, fd_opts.time,
                            fd_opts.scheme.c_str(), &out));
        ImagePtr guard(out);
        check(lls_image_write_pgm(out, fd_out.c_str(), 255));
    } else if (contrast->parsed()) {
        ImagePtr img = load(ct_opts.input);
        ConfigPtr cfg = make_config(ct_opts);
        std::vector<int64_t> lut = parse_lut(ct_lut, img.get());
        char* json = nullptr;
        check(lls_contrast_test(img.get(), cfg.get(), lut.data(), int(lut.size()),
                                &json));
        std::printf("%s\n", json);
        if (!ct_report.empty()) {
            std::ofstream out(ct_report);
            out << json << "\n";
        }
        lls_string_free(json);
    }
    return 0;
}
