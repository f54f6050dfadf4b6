#include "image.h"

#include "errors.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace lls {

ImageGrid::ImageGrid(int width, int height, double fill, int origin_x, int origin_y)
    : width_(width), height_(height), origin_x_(origin_x), origin_y_(origin_y),
      samples_(size_t(width) * height, fill) {
    if (width < 2 || height < 2)
        throw ParamError("ImageGrid needs at least 2x2 samples");
}

ImageGrid::ImageGrid(int width, int height, std::vector<double> samples,
                     int origin_x, int origin_y)
    : width_(width), height_(height), origin_x_(origin_x), origin_y_(origin_y),
      samples_(std::move(samples)) {
    if (width < 2 || height < 2)
        throw ParamError("ImageGrid needs at least 2x2 samples");
    if (samples_.size() != size_t(width) * height)
        throw ParamError("sample count does not match width*height");
    for (double v : samples_)
        if (!std::isfinite(v))
            throw ParamError("ImageGrid samples must be finite");
}

std::pair<double, double> ImageGrid::value_range() const {
    auto [lo, hi] = std::minmax_element(samples_.begin(), samples_.end());
    return {*lo, *hi};
}

bool ImageGrid::contains(double x, double y) const {
    return x >= min_x() && x <= max_x() && y >= min_y() && y <= max_y();
}

ImageGrid pad_zero(const ImageGrid& g, double value) {
    ImageGrid out(g.width() + 2, g.height() + 2, value,
                  g.origin_x() - 1, g.origin_y() - 1);
    for (int j = 0; j < g.height(); ++j)
        for (int i = 0; i < g.width(); ++i)
            out.at(i + 1, j + 1) = g.at(i, j);
    out.set_maxval(g.maxval());
    return out;
}

double bilinear_eval(const ImageGrid& g, double x, double y) {
    if (!g.contains(x, y)) {
        std::ostringstream os;
        os << "point (" << x << "," << y << ") outside image domain ["
           << g.min_x() << "," << g.max_x() << "]x[" << g.min_y() << ","
           << g.max_y() << "]";
        throw ParamError(os.str());
    }
    double lx = x - g.origin_x(), ly = y - g.origin_y();
    int i = std::min(int(std::floor(lx)), g.width() - 2);
    int j = std::min(int(std::floor(ly)), g.height() - 2);
    double fx = lx - i, fy = ly - j;
    double u00 = g.at(i, j), u10 = g.at(i + 1, j);
    double u01 = g.at(i, j + 1), u11 = g.at(i + 1, j + 1);
    return u00 * (1 - fx) * (1 - fy) + u10 * fx * (1 - fy) +
           u01 * (1 - fx) * fy + u11 * fx * fy;
}

DualPixelAnalysis saddle_analysis(double u00, double u10, double u01, double u11) {
    DualPixelAnalysis r;
    if (u00 == u10 && u00 == u01 && u00 == u11) {
        r.kind = DualPixelKind::flat;
        return r;
    }
    double d = u00 + u11 - u10 - u01;
    if (d == 0)
        return r; // bilinear term vanishes: the patch is planar in each variable
    double xs = (u00 - u01) / d;
    double ys = (u00 - u10) / d;
    if (xs > 0 && xs < 1 && ys > 0 && ys < 1) {
        r.kind = DualPixelKind::saddle;
        r.saddle_level = (u00 * u11 - u10 * u01) / d;
        r.saddle_x = xs;
        r.saddle_y = ys;
    }
    return r;
}

namespace {

/// Push-and-dedup helper: sort, then merge values closer than tol.
std::vector<double> sorted_dedup(std::vector<double> v, double tol) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || x - out.back() > tol)
            out.push_back(x);
    return out;
}

} // namespace

std::vector<double> critical_levels(const ImageGrid& g) {
    const int w = g.width(), h = g.height();
    std::vector<double> levels;

    // Saddle and flat dual pixels.
    for (int j = 0; j + 1 < h; ++j)
        for (int i = 0; i + 1 < w; ++i) {
            DualPixelAnalysis a = saddle_analysis(g.at(i, j), g.at(i + 1, j),
                                                  g.at(i, j + 1), g.at(i + 1, j + 1));
            if (a.kind == DualPixelKind::saddle)
                levels.push_back(a.saddle_level);
            else if (a.kind == DualPixelKind::flat)
                levels.push_back(g.at(i, j));
        }

    // Strict local extremum plateaus of the sample lattice: flood equal-value
    // 4-connected zones and look at the values adjacent to each zone. Iso-sets
    // at these levels degenerate to points or thick sets, so they are critical.
    std::vector<int> zone(size_t(w) * h, -1);
    std::vector<int> stack;
    int nzones = 0;
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) {
            size_t s = size_t(j) * w + i;
            if (zone[s] >= 0)
                continue;
            const double v = g.at(i, j);
            bool above = false, below = false; // neighbor values relative to v
            stack.assign(1, int(s));
            zone[s] = nzones;
            while (!stack.empty()) {
                int cur = stack.back();
                stack.pop_back();
                int ci = cur % w, cj = cur / w;
                const int ni[4] = {ci - 1, ci + 1, ci, ci};
                const int nj[4] = {cj, cj, cj - 1, cj + 1};
                for (int k = 0; k < 4; ++k) {
                    if (ni[k] < 0 || ni[k] >= w || nj[k] < 0 || nj[k] >= h)
                        continue;
                    double nv = g.at(ni[k], nj[k]);
                    if (nv == v) {
                        size_t ns = size_t(nj[k]) * w + ni[k];
                        if (zone[ns] < 0) {
                            zone[ns] = nzones;
                            stack.push_back(int(ns));
                        }
                    } else if (nv > v) {
                        above = true;
                    } else {
                        below = true;
                    }
                }
            }
            ++nzones;
            if (!above || !below) // max zone, min zone, or the whole grid
                levels.push_back(v);
        }

    return sorted_dedup(std::move(levels), 1e-9);
}

double very_simple_map(double t, double epsilon, const std::vector<double>& critical) {
    const size_t n = critical.size();
    if (n == 0)
        return t;
    if (t <= critical[0] - epsilon)
        return t;
    for (size_t k = 0; k < n; ++k) {
        if (t <= critical[k] + epsilon)
            return critical[k] - double(k + 1) * epsilon; // plateau branch
        if (k + 1 < n && t <= critical[k + 1] - epsilon)
            return t - double(k + 1) * epsilon;
    }
    return t - double(n) * epsilon;
}

std::vector<double> approx_very_simple(const std::vector<double>& values, double epsilon,
                                       const std::vector<double>& critical) {
    if (epsilon <= 0)
        throw ParamError("epsilon must be positive");
    for (size_t k = 0; k + 1 < critical.size(); ++k) {
        double gap = critical[k + 1] - critical[k];
        if (2 * epsilon >= gap) {
            std::ostringstream os;
            os << "epsilon " << epsilon << " too large for critical pair ("
               << critical[k] << ", " << critical[k + 1] << "), gap " << gap;
            throw ParamError(os.str());
        }
    }
    std::vector<double> out(values.size());
    for (size_t i = 0; i < values.size(); ++i)
        out[i] = very_simple_map(values[i], epsilon, critical);
    return out;
}

// --- PGM -------------------------------------------------------------------

namespace {

struct ByteReader {
    std::string data;
    size_t pos = 0;
    std::string path;

    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << path << ": " << what << " at byte offset " << pos;
        throw FormatError(os.str());
    }
    bool eof() const { return pos >= data.size(); }
    int peek() const { return eof() ? -1 : (unsigned char)data[pos]; }
    int get() { return eof() ? -1 : (unsigned char)data[pos++]; }

    /// Skip PNM whitespace and '#' comments.
    void skip_space() {
        while (!eof()) {
            int c = peek();
            if (c == '#') {
                while (!eof() && get() != '\n') {}
            } else if (std::isspace(c)) {
                ++pos;
            } else {
                break;
            }
        }
    }
    long next_int() {
        skip_space();
        if (eof() || !std::isdigit(peek()))
            fail("expected integer");
        long v = 0;
        while (!eof() && std::isdigit(peek())) {
            v = v * 10 + (get() - '0');
            if (v > 1000000000L)
                fail("integer out of range");
        }
        return v;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError(path + ": cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

ImageGrid read_pgm(const std::string& path) {
    ByteReader r{slurp(path), 0, path};
    if (r.data.size() < 2)
        r.fail("truncated header");
    char m0 = r.data[0], m1 = r.data[1];
    if (m0 != 'P' || (m1 != '2' && m1 != '5')) {
        std::ostringstream os;
        os << path << ": unsupported magic \"" << m0 << m1
           << "\" at byte offset 0 (need P2 or P5)";
        throw FormatError(os.str());
    }
    const bool binary = (m1 == '5');
    r.pos = 2;
    long w = r.next_int();
    long h = r.next_int();
    long maxval = r.next_int();
    if (w < 2 || h < 2)
        r.fail("image smaller than 2x2");
    if (maxval <= 0 || maxval > 65535)
        r.fail("unsupported maxval (must be in 1..65535)");

    std::vector<double> samples(size_t(w) * h);
    if (binary) {
        // Exactly one whitespace byte separates the header from the raster.
        if (r.eof() || !std::isspace(r.peek()))
            r.fail("expected whitespace before raster");
        ++r.pos;
        const int bytes = maxval > 255 ? 2 : 1;
        if (r.data.size() - r.pos < samples.size() * bytes)
            r.fail("truncated raster");
        for (size_t i = 0; i < samples.size(); ++i) {
            if (bytes == 1) {
                samples[i] = (unsigned char)r.data[r.pos++];
            } else { // 16-bit samples are big-endian per the PNM spec
                unsigned hi = (unsigned char)r.data[r.pos++];
                unsigned lo = (unsigned char)r.data[r.pos++];
                samples[i] = double(hi << 8 | lo);
            }
            if (samples[i] > maxval) {
                --r.pos;
                r.fail("sample exceeds maxval");
            }
        }
    } else {
        for (size_t i = 0; i < samples.size(); ++i) {
            long v = r.next_int();
            if (v > maxval)
                r.fail("sample exceeds maxval");
            samples[i] = double(v);
        }
    }
    ImageGrid g(int(w), int(h), std::move(samples));
    g.set_maxval(int(maxval));
    return g;
}

void write_pgm(const ImageGrid& g, const std::string& path, int maxval, bool ascii) {
    if (maxval <= 0 || maxval > 65535)
        throw ParamError("maxval must be in 1..65535");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError(path + ": cannot open for writing");
    out << (ascii ? "P2" : "P5") << "\n"
        << g.width() << " " << g.height() << "\n"
        << maxval << "\n";
    for (int j = 0; j < g.height(); ++j) {
        for (int i = 0; i < g.width(); ++i) {
            long v = std::lround(g.at(i, j));
            v = std::clamp(v, 0L, long(maxval));
            if (ascii) {
                out << v << (i + 1 < g.width() ? ' ' : '\n');
            } else if (maxval > 255) {
                out.put(char(v >> 8));
                out.put(char(v & 0xff));
            } else {
                out.put(char(v));
            }
        }
    }
    if (!out)
        throw FormatError(path + ": write failed");
}

ImageGrid read_float_raster(const std::string& path) {
    std::string data = slurp(path);
    if (data.size() < 8 || data.compare(0, 4, "LLSF") != 0)
        throw FormatError(path + ": missing LLSF magic at byte offset 0");
    auto u16 = [&](size_t off) {
        return unsigned((unsigned char)data[off]) |
               unsigned((unsigned char)data[off + 1]) << 8;
    };
    const int w = int(u16(4)), h = int(u16(6));
    if (w < 2 || h < 2)
        throw FormatError(path + ": bad dimensions at byte offset 4");
    if (data.size() != 8 + size_t(w) * h * 4)
        throw FormatError(path + ": truncated raster at byte offset 8");
    std::vector<double> samples(size_t(w) * h);
    for (size_t i = 0; i < samples.size(); ++i) {
        uint32_t bits = 0;
        for (int b = 3; b >= 0; --b)
            bits = bits << 8 | (unsigned char)data[8 + i * 4 + b];
        float f;
        static_assert(sizeof f == 4);
        std::memcpy(&f, &bits, 4);
        samples[i] = f;
    }
    return ImageGrid(w, h, std::move(samples));
}

void write_float_raster(const ImageGrid& g, const std::string& path) {
    if (g.width() > 65535 || g.height() > 65535)
        throw ParamError("LLSF rasters are limited to 65535x65535");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError(path + ": cannot open for writing");
    out.write("LLSF", 4);
    auto put16 = [&](unsigned v) {
        out.put(char(v & 0xff));
        out.put(char(v >> 8));
    };
    put16(unsigned(g.width()));
    put16(unsigned(g.height()));
    for (double v : g.samples()) {
        float f = float(v);
        uint32_t bits;
        std::memcpy(&bits, &f, 4);
        for (int b = 0; b < 4; ++b)
            out.put(char(bits >> (8 * b) & 0xff));
    }
    if (!out)
        throw FormatError(path + ": write failed");
}

ImageGrid load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError(path + ": cannot open file");
    char magic[4] = {};
    in.read(magic, 4);
    if (magic[0] == 'P')
        return read_pgm(path);
    if (std::string(magic, 4) == "LLSF")
        return read_float_raster(path);
    std::ostringstream os;
    os << path << ": unsupported magic \"" << magic[0] << magic[1]
       << "\" at byte offset 0";
    throw FormatError(os.str());
}

} // namespace lls
