#include "lls.h"

#include "core/errors.h"
#include "core/pipeline.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

using namespace lls;

struct lls_image {
    ImageGrid grid;
};

struct lls_config {
    PipelineConfig cfg;
};

struct lls_lines {
    EvolvedTree tree;
    double delta = 0.1;
};

namespace {

thread_local std::string g_last_error;

lls_status fail(const std::exception& e) {
    g_last_error = e.what();
    if (auto* err = dynamic_cast<const Error*>(&e))
        return lls_status(int(err->code()));
    return LLS_ERROR;
}

template <class F>
lls_status guarded(F&& f) {
    try {
        f();
        return LLS_OK;
    } catch (const std::exception& e) {
        return fail(e);
    } catch (...) {
        g_last_error = "unknown error";
        return LLS_ERROR;
    }
}

lls_status parse_scheme(const char* s, Scheme& out) {
    std::string v = s ? s : "";
    if (v == "cs")
        out = Scheme::cs;
    else if (v == "as")
        out = Scheme::as;
    else {
        g_last_error = "scheme must be \"cs\" or \"as\"";
        return LLS_ERROR_FORMAT;
    }
    return LLS_OK;
}

} // namespace

extern "C" {

const char* lls_version(void) { return "1.0.0"; }

const char* lls_last_error(void) { return g_last_error.c_str(); }

lls_status lls_image_load(const char* path, lls_image** out) {
    if (!path || !out) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    return guarded([&] { *out = new lls_image{load_image(path)}; });
}

lls_status lls_image_create(int width, int height, const double* samples,
                            lls_image** out) {
    if (!samples || !out) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    return guarded([&] {
        std::vector<double> data(samples, samples + size_t(width) * height);
        *out = new lls_image{ImageGrid(width, height, std::move(data))};
    });
}

void lls_image_free(lls_image* img) { delete img; }

int lls_image_width(const lls_image* img) { return img ? img->grid.width() : 0; }
int lls_image_height(const lls_image* img) { return img ? img->grid.height() : 0; }

double lls_image_get(const lls_image* img, int x, int y) {
    return img->grid.at(x, y);
}

lls_status lls_image_eval(const lls_image* img, double x, double y, double* out) {
    if (!img || !out) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    return guarded([&] { *out = bilinear_eval(img->grid, x, y); });
}

lls_status lls_image_write_pgm(const lls_image* img, const char* path, int maxval) {
    if (!img || !path) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    return guarded([&] { write_pgm(img->grid, path, maxval); });
}

lls_status lls_image_write_float(const lls_image* img, const char* path) {
    if (!img || !path) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    return guarded([&] { write_float_raster(img->grid, path); });
}

lls_config* lls_config_new(void) { return new lls_config{}; }
void lls_config_free(lls_config* cfg) { delete cfg; }

lls_status lls_config_set_time(lls_config* cfg, double t) {
    if (t < 0) {
        g_last_error = "time must be nonnegative";
        return LLS_ERROR_FORMAT;
    }
    cfg->cfg.time = t;
    return LLS_OK;
}

lls_status lls_config_set_scheme(lls_config* cfg, const char* scheme) {
    return parse_scheme(scheme, cfg->cfg.scheme);
}

lls_status lls_config_set_quant(lls_config* cfg, double q) {
    if (q <= 0) {
        g_last_error = "quantization step must be positive";
        return LLS_ERROR_FORMAT;
    }
    cfg->cfg.quant = q;
    return LLS_OK;
}

lls_status lls_config_set_offset(lls_config* cfg, double offset) {
    cfg->cfg.offset = offset;
    return LLS_OK;
}

lls_status lls_config_set_precision(lls_config* cfg, double delta) {
    if (delta <= 0) {
        g_last_error = "precision must be positive";
        return LLS_ERROR_FORMAT;
    }
    cfg->cfg.precision = delta;
    return LLS_OK;
}

lls_status lls_config_set_border(lls_config* cfg, const char* mode) {
    std::string v = mode ? mode : "";
    if (v == "fixed")
        cfg->cfg.border = BorderMode::fixed;
    else if (v == "evolve")
        cfg->cfg.border = BorderMode::evolve;
    else {
        g_last_error = "border must be \"fixed\" or \"evolve\"";
        return LLS_ERROR_FORMAT;
    }
    return LLS_OK;
}

lls_status lls_config_set_pad(lls_config* cfg, int pad) {
    cfg->cfg.pad = pad != 0;
    return LLS_OK;
}

lls_status lls_config_set_split(lls_config* cfg, double s) {
    if (s < 0)
        cfg->cfg.split.reset();
    else
        cfg->cfg.split = s;
    return LLS_OK;
}

lls_status lls_config_set_threads(lls_config* cfg, int threads) {
    if (threads < 1) {
        g_last_error = "threads must be at least 1";
        return LLS_ERROR_FORMAT;
    }
    cfg->cfg.threads = threads;
    return LLS_OK;
}

lls_status lls_config_set_output(lls_config* cfg, const char* key,
                                 const char* path) {
    if (!cfg || !key || !path) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    std::string k = key;
    PipelineOutputs& o = cfg->cfg.outputs;
    if (k == "image")
        o.image = path;
    else if (k == "float_image")
        o.float_image = path;
    else if (k == "svg_before")
        o.svg_before = path;
    else if (k == "svg_after")
        o.svg_after = path;
    else if (k == "curvature_map")
        o.curvature_map = path;
    else if (k == "tree_json")
        o.tree_json = path;
    else if (k == "tree_json_vertices") {
        o.tree_json = path;
        o.tree_vertices = true;
    } else if (k == "oracle_diff")
        o.oracle_diff = path;
    else if (k == "report")
        o.report = path;
    else if (k == "trace_csv")
        o.trace_csv = path;
    else {
        g_last_error = "unknown output key: " + k;
        return LLS_ERROR_FORMAT;
    }
    return LLS_OK;
}

lls_status lls_run(const lls_image* input, const lls_config* cfg, lls_image** out) {
    if (!input || !cfg || !out) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    return guarded([&] {
        *out = new lls_image{run_pipeline(input->grid, cfg->cfg).image};
    });
}

lls_status lls_contrast_test(const lls_image* input, const lls_config* cfg,
                             const int64_t* lut, int lut_size, char** report_json) {
    if (!input || !cfg || !lut || !report_json) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    return guarded([&] {
        std::vector<long long> table(lut, lut + lut_size);
        std::string json =
            run_contrast_test(input->grid, cfg->cfg, table).to_json();
        *report_json = (char*)std::malloc(json.size() + 1);
        std::memcpy(*report_json, json.c_str(), json.size() + 1);
    });
}

void lls_string_free(char* s) { std::free(s); }

lls_status lls_fd_evolve(const lls_image* input, double dt, double eps_reg,
                         double t_end, const char* scheme, lls_image** out) {
    if (!input || !out) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    FdParams params;
    params.dt = dt;
    params.eps_reg = eps_reg;
    params.t_end = t_end;
    if (lls_status s = parse_scheme(scheme, params.power); s != LLS_OK)
        return s;
    return guarded([&] {
        *out = new lls_image{fd_evolve(input->grid, params)};
    });
}

lls_status lls_extract(const lls_image* input, double quant, double offset,
                       double precision, int pad, lls_lines** out) {
    if (!input || !out) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    return guarded([&] {
        ImageGrid work = pad ? pad_zero(input->grid) : input->grid;
        std::vector<double> levels = quantized_levels(work, quant, offset);
        std::vector<double> nominal = levels;
        for (double& v : nominal)
            v = offset + std::round((v - offset) / quant) * quant;
        auto lines = extract_family(work, levels, precision, 1, &nominal);
        assign_inner_values(lines, nominal, quant);
        InclusionTree tree(std::move(lines));
        *out = new lls_lines{as_evolved(tree), precision};
    });
}

void lls_lines_free(lls_lines* lines) { delete lines; }

int lls_lines_count(const lls_lines* lines) {
    return lines ? int(lines->tree.lines.size()) : 0;
}

double lls_lines_level(const lls_lines* lines, int idx) {
    return lines->tree.lines[size_t(idx)].level;
}

int lls_lines_parent(const lls_lines* lines, int idx) {
    return lines->tree.parent[size_t(idx)];
}

int lls_lines_vertex_count(const lls_lines* lines, int idx) {
    return int(lines->tree.lines[size_t(idx)].polygon.size());
}

lls_status lls_lines_vertices(const lls_lines* lines, int idx, double* xy,
                              int capacity) {
    if (!lines || !xy) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    const auto& v = lines->tree.lines[size_t(idx)].polygon.vertices();
    if (capacity < int(2 * v.size())) {
        g_last_error = "vertex buffer too small";
        return LLS_ERROR_FORMAT;
    }
    for (size_t i = 0; i < v.size(); ++i) {
        xy[2 * i] = v[i].x;
        xy[2 * i + 1] = v[i].y;
    }
    return LLS_OK;
}

lls_status lls_lines_evolve(lls_lines* lines, double t, const char* scheme,
                            double precision) {
    if (!lines) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    FlowParams fp;
    if (lls_status s = parse_scheme(scheme, fp.scheme); s != LLS_OK)
        return s;
    fp.delta = precision > 0 ? precision : lines->delta;
    return guarded([&] {
        // Rebuild an inclusion tree around the current family, evolve, splice.
        InclusionTree tree(lines->tree.lines);
        std::vector<Polygon> polys;
        polys.reserve(tree.size());
        for (const auto& ll : tree.lines())
            polys.push_back(ll.polygon);
        auto evolved = evolve_family(polys, t, fp);
        lines->tree = splice_evolved(tree, evolved);
    });
}

lls_status lls_lines_rasterize(const lls_lines* lines, int width, int height,
                               double background, lls_image** out) {
    if (!lines || !out) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    return guarded([&] {
        *out = new lls_image{rasterize(lines->tree, width, height, background)};
    });
}

lls_status lls_lines_write_svg(const lls_lines* lines, const char* path,
                               int curvature_colors) {
    if (!lines || !path) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    return guarded([&] {
        double w = 0, h = 0;
        for (const auto& ll : lines->tree.lines) {
            w = std::max(w, ll.polygon.bbox().xmax);
            h = std::max(h, ll.polygon.bbox().ymax);
        }
        if (curvature_colors)
            write_svg_curvature(path, lines->tree.lines, w, h);
        else
            write_svg_lines(path, lines->tree.lines, w, h);
    });
}

lls_status lls_lines_write_json(const lls_lines* lines, const char* path,
                                int with_vertices) {
    if (!lines || !path) {
        g_last_error = "null argument";
        return LLS_ERROR_FORMAT;
    }
    return guarded([&] {
        write_tree_json(path, lines->tree, with_vertices != 0);
    });
}

} // extern "C"
