#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lls {

/// Rectangular grid of image samples with bilinear interpolation semantics.
///
/// Sample (i,j), 0 <= i < width, 0 <= j < height, sits at plane coordinates
/// (origin_x+i, origin_y+j). The surface is bilinear inside each dual pixel
/// (the unit square between four adjacent samples). A zero frame added by
/// pad_zero() keeps the original samples at their coordinates by shifting the
/// origin, so curve geometry is directly comparable before and after padding.
class ImageGrid {
public:
    ImageGrid(int width, int height, double fill = 0.0,
              int origin_x = 0, int origin_y = 0);
    ImageGrid(int width, int height, std::vector<double> samples,
              int origin_x = 0, int origin_y = 0);

    int width() const { return width_; }
    int height() const { return height_; }
    int origin_x() const { return origin_x_; }
    int origin_y() const { return origin_y_; }

    double at(int i, int j) const { return samples_[index(i, j)]; }
    double& at(int i, int j) { return samples_[index(i, j)]; }

    const std::vector<double>& samples() const { return samples_; }
    std::vector<double>& samples() { return samples_; }

    /// (min, max) over all samples.
    std::pair<double, double> value_range() const;

    /// Plane-coordinate bounds of the interpolated domain.
    double min_x() const { return origin_x_; }
    double min_y() const { return origin_y_; }
    double max_x() const { return origin_x_ + width_ - 1; }
    double max_y() const { return origin_y_ + height_ - 1; }
    bool contains(double x, double y) const;

    /// Maxval of the source raster (writer default); 255 unless loaded
    /// from a deeper PGM.
    int maxval() const { return maxval_; }
    void set_maxval(int m) { maxval_ = m; }

private:
    size_t index(int i, int j) const { return size_t(j) * width_ + i; }

    int width_, height_;
    int origin_x_, origin_y_;
    int maxval_ = 255;
    std::vector<double> samples_;
};

/// Surround the grid with a one-sample frame of the given value. The origin
/// shifts by (-1,-1) so existing samples keep their plane coordinates.
ImageGrid pad_zero(const ImageGrid& g, double value = 0.0);

/// Value of the bilinear surface at plane point (x,y).
/// Throws ParamError outside the domain.
double bilinear_eval(const ImageGrid& g, double x, double y);

enum class DualPixelKind { planar, saddle, flat };

/// Classification of one dual pixel; saddle fields are local coordinates in
/// the open unit square and are meaningful only when kind == saddle.
struct DualPixelAnalysis {
    DualPixelKind kind = DualPixelKind::planar;
    double saddle_level = 0.0;
    double saddle_x = 0.0;
    double saddle_y = 0.0;
};

/// Analyze the bilinear patch with corner values u00=(0,0), u10=(1,0),
/// u01=(0,1), u11=(1,1). The patch has a saddle iff the twist term
/// d = u00+u11-u10-u01 is nonzero and the stationary point falls strictly
/// inside the square; the saddle level is then (u00*u11 - u10*u01)/d.
DualPixelAnalysis saddle_analysis(double u00, double u10, double u01, double u11);

/// All critical levels of the bilinear surface: saddle levels, values of flat
/// dual pixels, and sample values on strict local extremum plateaus of the
/// sample lattice (4-connected equal-value zones all of whose neighbors are
/// strictly below, or strictly above). Sorted, deduplicated within 1e-9.
std::vector<double> critical_levels(const ImageGrid& g);

/// The contrast change f_eps that flattens every critical level: identity up
/// to lambda_1-eps, constant lambda_k-k*eps on [lambda_k-eps, lambda_k+eps],
/// t-k*eps between plateaus, t-n*eps above. 1-Lipschitz and nondecreasing.
/// Requires 0 < eps < half the smallest gap between consecutive criticals.
double very_simple_map(double t, double epsilon, const std::vector<double>& critical);

/// very_simple_map applied pointwise; sup distance to the input is at most
/// critical.size() * epsilon.
std::vector<double> approx_very_simple(const std::vector<double>& values, double epsilon,
                                       const std::vector<double>& critical);

// --- raster I/O ------------------------------------------------------------

/// Read a PGM file (P2 or P5, maxval <= 65535). Samples are kept exactly as
/// stored, no rescaling. Format problems raise FormatError with the byte
/// offset of the offending data.
ImageGrid read_pgm(const std::string& path);

/// Write as PGM (binary P5, or ASCII P2). Values are rounded to nearest
/// integer and clamped to [0, maxval].
void write_pgm(const ImageGrid& g, const std::string& path, int maxval = 255,
               bool ascii = false);

/// Lossless float raster: 8-byte header "LLSF" + width + height (16-bit LE
/// each), then little-endian float32 samples, row major.
ImageGrid read_float_raster(const std::string& path);
void write_float_raster(const ImageGrid& g, const std::string& path);

/// Dispatch on the file magic ("P2"/"P5" or "LLSF").
ImageGrid load_image(const std::string& path);

} // namespace lls
