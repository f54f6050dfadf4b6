#pragma once

#include "fd.h"
#include "raster.h"
#include "svg.h"

#include <optional>
#include <string>

namespace lls {

enum class BorderMode { fixed, evolve };

/// Where to write the run's artifacts; empty paths are skipped.
struct PipelineOutputs {
    std::string image;         // PGM
    std::string float_image;   // LLSF raster
    std::string svg_before;    // initial level lines
    std::string svg_after;     // evolved level lines
    std::string curvature_map; // evolved lines colored by curvature
    std::string tree_json;     // evolved hierarchy
    std::string oracle_diff;   // JSON diff report against the FD solver
    std::string report;        // machine-readable run report (JSON)
    std::string trace_csv;     // per-curve step trajectories
    bool tree_vertices = false;
};

struct PipelineConfig {
    double time = 0.0;
    Scheme scheme = Scheme::cs;
    double quant = 1.0;
    double offset = 0.5;
    double precision = 0.1; // vertex spacing delta, pixels
    BorderMode border = BorderMode::fixed;
    bool pad = true;                 // base-value frame before extraction
    double base_value = 0;           // boundary/background level (0 per the
                                     // zero-boundary convention; contrast
                                     // changes map it along with the levels)
    std::optional<double> split;     // run LLS(t-s) after LLS(s)
    int threads = 1;
    double dt_safety = 0.25;
    double collapse_area = -1;       // <0: precision^2
    long max_steps = 1000000;
    std::optional<std::vector<double>> levels; // explicit nominal levels
    PipelineOutputs outputs;

    FlowParams flow_params() const {
        FlowParams fp;
        fp.scheme = scheme;
        fp.delta = precision;
        fp.dt_safety = dt_safety;
        fp.collapse_area = collapse_area;
        fp.max_steps = max_steps;
        return fp;
    }
};

struct StageTiming {
    std::string name;
    double ms = 0;
};

struct RunReport {
    std::vector<StageTiming> stages;
    int levels_used = 0;
    int lines_extracted = 0;
    int curves_collapsed = 0;
    int curves_alive = 0;
    double lipschitz_before = 0;
    double lipschitz_after = 0;
    double oracle_sup_diff = -1;      // -1 when the oracle was not run
    double oracle_sup_diff_interior = -1; // 3-pixel border band excluded
    std::string to_json() const;
};

struct PipelineResult {
    ImageGrid image;
    RunReport report;
};

/// The full chain: (pad) -> quantized levels -> per-level extraction ->
/// inclusion tree -> independent evolution to config.time -> splice out the
/// collapsed lines -> paint. With config.split = s, the chain runs twice,
/// to s and then to time - s, re-extracting from the intermediate image.
PipelineResult run_pipeline(const ImageGrid& input, const PipelineConfig& config);

/// Contrast-invariance check: evolve lut(u) extracted at the lut-mapped
/// levels, against lut applied to the evolution of u. The lut is a strictly
/// increasing integer table over the input's value range, extended piecewise
/// linearly between integers.
struct ContrastReport {
    double sup_diff = 0;
    double mean_abs_diff = 0;
    std::string to_json() const;
};
ContrastReport run_contrast_test(const ImageGrid& input, const PipelineConfig& config,
                                 const std::vector<long long>& lut);

} // namespace lls
