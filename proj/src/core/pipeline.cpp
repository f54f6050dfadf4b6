#include "pipeline.h"

#include "errors.h"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace lls {

namespace {

class StageClock {
public:
    explicit StageClock(RunReport& report) : report_(report) {}
    template <class F>
    auto time(const std::string& name, F&& f) -> decltype(f()) {
        auto start = std::chrono::steady_clock::now();
        try {
            auto result = f();
            stop(name, start);
            return result;
        } catch (const Error& e) {
            stop(name, start);
            throw Error(e.code(), name + ": " + e.what());
        }
    }

private:
    void stop(const std::string& name,
              std::chrono::steady_clock::time_point start) {
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        report_.stages.push_back({name, ms});
    }
    RunReport& report_;
};

Polygon domain_frame(const ImageGrid& g, double delta) {
    std::vector<Point> verts;
    const double x0 = g.min_x(), y0 = g.min_y(), x1 = g.max_x(), y1 = g.max_y();
    auto walk_edge = [&](Point a, Point b) {
        int n = std::max(1, int(std::ceil(dist(a, b) / delta)));
        for (int i = 0; i < n; ++i)
            verts.push_back(a + (b - a) * (double(i) / n));
    };
    walk_edge({x0, y0}, {x0, y1});
    walk_edge({x0, y1}, {x1, y1});
    walk_edge({x1, y1}, {x1, y0});
    walk_edge({x1, y0}, {x0, y0});
    return Polygon(std::move(verts));
}

struct LegResult {
    ImageGrid image;
    InclusionTree initial;
    EvolvedTree evolved;
};

/// One extraction-evolution-reconstruction pass over `img`.
LegResult run_leg(const ImageGrid& img, const PipelineConfig& config, double t,
                  RunReport& report, StageClock& clock) {
    ImageGrid work = config.pad ? pad_zero(img, config.base_value) : img;

    std::vector<double> nominal, geometric;
    auto critical = critical_levels(work);
    if (config.levels) {
        nominal = *config.levels;
        std::sort(nominal.begin(), nominal.end());
        geometric = nominal;
        // Same nudge rule as quantized_levels, against this image's criticals
        // and samples.
        std::vector<double> avoid = critical;
        avoid.insert(avoid.end(), work.samples().begin(), work.samples().end());
        std::sort(avoid.begin(), avoid.end());
        for (double& level : geometric) {
            auto close = [&](double v) {
                auto it = std::lower_bound(avoid.begin(), avoid.end(), v);
                return (it != avoid.end() && *it - v < 1e-6) ||
                       (it != avoid.begin() && v - *(it - 1) < 1e-6);
            };
            int guard = 0;
            while (close(level)) {
                level += 1e-6;
                if (++guard > 100000)
                    throw ParamError("cannot nudge level off critical values");
            }
        }
    } else {
        nominal = clock.time("levels", [&] {
            return quantized_levels(work, config.quant, config.offset, critical);
        });
        geometric = nominal;
        // quantized_levels already nudged; recover the nominal slots.
        for (double& v : nominal)
            v = config.offset +
                std::round((v - config.offset) / config.quant) * config.quant;
    }
    report.levels_used = int(geometric.size());

    auto lines = clock.time("extract", [&] {
        return extract_family(work, geometric, config.precision, config.threads,
                              &nominal);
    });
    assign_inner_values(lines, nominal, config.quant);

    if (config.border == BorderMode::evolve) {
        // Theorem-faithful mode: the domain boundary itself is the zero level
        // curve and evolves with the family.
        LevelLine frame;
        frame.polygon = domain_frame(work, config.precision);
        frame.level = 0;
        frame.nominal_level = 0;
        frame.upper = true;
        frame.inner_value = 0;
        frame.id = int(lines.size());
        lines.push_back(std::move(frame));
    }
    report.lines_extracted += int(lines.size());

    auto tree = clock.time("tree", [&] { return InclusionTree(std::move(lines)); });

    std::vector<Polygon> polys;
    polys.reserve(tree.size());
    for (const auto& ll : tree.lines())
        polys.push_back(ll.polygon);
    FlowParams fp = config.flow_params();
    auto evolved = clock.time("evolve", [&] {
        return evolve_family(polys, t, fp, config.threads);
    });

    LegResult leg{ImageGrid(2, 2), std::move(tree), {}};
    leg.evolved = clock.time("splice", [&] {
        return splice_evolved(leg.initial, evolved);
    });
    report.curves_collapsed += leg.evolved.collapsed;
    report.curves_alive = int(leg.evolved.lines.size());

    leg.image = clock.time("rasterize", [&] {
        return rasterize(leg.evolved, img.width(), img.height(),
                         config.base_value);
    });
    leg.image.set_maxval(img.maxval());

    if (!config.outputs.trace_csv.empty() && t > 0) {
        std::ofstream csv(config.outputs.trace_csv);
        if (!csv)
            throw FormatError(config.outputs.trace_csv + ": cannot open");
        csv << "curve,step,time,area,length,isoperimetric\n";
        for (size_t i = 0; i < polys.size(); ++i) {
            const int id = leg.initial.lines()[i].id;
            evolve_to(polys[i], t, fp,
                      [&](long step, double time, double area, double len) {
                          double iso = area != 0 ? len * len /
                                                       (4 * std::numbers::pi *
                                                        std::abs(area))
                                                 : 0;
                          csv << id << ',' << step << ',' << time << ',' << area
                              << ',' << len << ',' << iso << '\n';
                      });
        }
    }
    return leg;
}

nlohmann::json stages_json(const std::vector<StageTiming>& stages) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : stages)
        out.push_back({{"name", s.name}, {"ms", s.ms}});
    return out;
}

} // namespace

std::string RunReport::to_json() const {
    nlohmann::json j{{"levels_used", levels_used},
                     {"lines_extracted", lines_extracted},
                     {"curves_collapsed", curves_collapsed},
                     {"curves_alive", curves_alive},
                     {"lipschitz_before", lipschitz_before},
                     {"lipschitz_after", lipschitz_after},
                     {"stages", stages_json(stages)}};
    if (oracle_sup_diff >= 0) {
        j["oracle_sup_diff"] = oracle_sup_diff;
        j["oracle_sup_diff_interior"] = oracle_sup_diff_interior;
    }
    return j.dump(1);
}

std::string ContrastReport::to_json() const {
    nlohmann::json j{{"sup_diff", sup_diff}, {"mean_abs_diff", mean_abs_diff}};
    return j.dump(1);
}

PipelineResult run_pipeline(const ImageGrid& input, const PipelineConfig& config) {
    if (config.time < 0)
        throw ParamError("evolution time must be nonnegative");
    if (config.quant <= 0 || config.precision <= 0)
        throw ParamError("quantization step and precision must be positive");
    if (config.split && (*config.split < 0 || *config.split > config.time))
        throw ParamError("split time must lie in [0, time]");

    RunReport report;
    StageClock clock(report);

    PipelineResult result{ImageGrid(2, 2), {}};
    const double w = input.width() - 1, h = input.height() - 1;

    auto emit_after = [&](const EvolvedTree& evolved) {
        if (!config.outputs.svg_after.empty())
            write_svg_lines(config.outputs.svg_after, evolved.lines, w, h);
        if (!config.outputs.curvature_map.empty())
            write_svg_curvature(config.outputs.curvature_map, evolved.lines, w, h);
        if (!config.outputs.tree_json.empty())
            write_tree_json(config.outputs.tree_json, evolved,
                            config.outputs.tree_vertices);
    };

    if (config.split) {
        LegResult first = run_leg(input, config, *config.split, report, clock);
        if (!config.outputs.svg_before.empty())
            write_svg_lines(config.outputs.svg_before, first.initial.lines(), w, h);
        LegResult second = run_leg(first.image, config,
                                   config.time - *config.split, report, clock);
        report.lipschitz_before = lipschitz_estimate(as_evolved(first.initial));
        report.lipschitz_after = lipschitz_estimate(second.evolved);
        result.image = std::move(second.image);
        emit_after(second.evolved);
    } else {
        LegResult leg = run_leg(input, config, config.time, report, clock);
        report.lipschitz_before = lipschitz_estimate(as_evolved(leg.initial));
        report.lipschitz_after = lipschitz_estimate(leg.evolved);
        result.image = std::move(leg.image);
        if (!config.outputs.svg_before.empty())
            write_svg_lines(config.outputs.svg_before, leg.initial.lines(), w, h);
        emit_after(leg.evolved);
    }

    if (!config.outputs.oracle_diff.empty()) {
        FdParams fd;
        fd.t_end = config.time;
        fd.power = config.scheme;
        fd.dt = 0.1;
        ImageGrid ref = clock.time("oracle", [&] { return fd_evolve(input, fd); });
        double sup = 0, sup_in = 0;
        for (int j = 0; j < input.height(); ++j)
            for (int i = 0; i < input.width(); ++i) {
                double d = std::abs(result.image.at(i, j) - ref.at(i, j));
                sup = std::max(sup, d);
                if (i >= 3 && j >= 3 && i < input.width() - 3 &&
                    j < input.height() - 3)
                    sup_in = std::max(sup_in, d);
            }
        report.oracle_sup_diff = sup;
        report.oracle_sup_diff_interior = sup_in;
        nlohmann::json j{{"sup_diff", sup},
                         {"sup_diff_interior", sup_in},
                         {"fd_dt", fd.dt},
                         {"fd_eps_reg", fd.eps_reg},
                         {"t", config.time}};
        std::ofstream out(config.outputs.oracle_diff);
        if (!out)
            throw FormatError(config.outputs.oracle_diff + ": cannot open");
        out << j.dump(1) << "\n";
    }

    if (!config.outputs.image.empty())
        write_pgm(result.image, config.outputs.image, result.image.maxval());
    if (!config.outputs.float_image.empty())
        write_float_raster(result.image, config.outputs.float_image);
    if (!config.outputs.report.empty()) {
        std::ofstream out(config.outputs.report);
        if (!out)
            throw FormatError(config.outputs.report + ": cannot open");
        out << report.to_json() << "\n";
    }
    result.report = std::move(report);
    return result;
}

ContrastReport run_contrast_test(const ImageGrid& input, const PipelineConfig& config,
                                 const std::vector<long long>& lut) {
    if (lut.size() < 2)
        throw ParamError("lut needs at least two entries");
    for (size_t i = 0; i + 1 < lut.size(); ++i)
        if (lut[i + 1] <= lut[i])
            throw ParamError("lut must be strictly increasing");

    auto [lo, hi] = input.value_range();
    if (lo < 0 || hi > double(lut.size() - 1))
        throw ParamError("lut does not cover the input value range");
    for (double v : input.samples())
        if (v != std::floor(v))
            throw ParamError("contrast test requires integer-valued input");

    // Piecewise-linear extension of the integer table.
    auto lut_lin = [&](double v) {
        v = std::clamp(v, 0.0, double(lut.size() - 1));
        size_t k = size_t(std::floor(v));
        if (k + 1 >= lut.size())
            return double(lut.back());
        double f = v - double(k);
        return double(lut[k]) + f * double(lut[k + 1] - lut[k]);
    };

    // Route A: evolve u, then change contrast.
    PipelineConfig base = config;
    base.outputs = {};
    base.split.reset();
    ImageGrid out_a = run_pipeline(input, base).image;
    for (double& v : out_a.samples())
        v = lut_lin(v);

    // Route B: change contrast, evolve at the mapped levels. The base level
    // (padding frame and background) maps along with the extraction levels.
    ImageGrid mapped = input;
    for (double& v : mapped.samples())
        v = double(lut[size_t(std::llround(v))]);
    std::vector<double> base_levels =
        quantized_levels(base.pad ? pad_zero(input, base.base_value) : input,
                         base.quant, base.offset);
    std::vector<double> mapped_levels;
    mapped_levels.reserve(base_levels.size());
    for (double v : base_levels)
        mapped_levels.push_back(lut_lin(
            base.offset + std::round((v - base.offset) / base.quant) * base.quant));
    PipelineConfig cfg_b = base;
    cfg_b.levels = mapped_levels;
    cfg_b.base_value = lut_lin(base.base_value);
    ImageGrid out_b = run_pipeline(mapped, cfg_b).image;

    ContrastReport rep;
    double total = 0;
    for (size_t i = 0; i < out_a.samples().size(); ++i) {
        double d = std::abs(out_a.samples()[i] - out_b.samples()[i]);
        rep.sup_diff = std::max(rep.sup_diff, d);
        total += d;
    }
    rep.mean_abs_diff = total / double(out_a.samples().size());
    return rep;
}

} // namespace lls
