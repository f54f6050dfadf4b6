#include "fd.h"

#include "errors.h"

#include <algorithm>
#include <cmath>

namespace lls {

namespace {

/// Neumann boundary: reflect the out-of-range index.
inline int reflect(int i, int n) {
    if (i < 0)
        return -i;
    if (i >= n)
        return 2 * n - 2 - i;
    return i;
}

} // namespace

ImageGrid fd_evolve(const ImageGrid& g, const FdParams& params) {
    if (params.dt <= 0 || params.dt > 0.25)
        throw ParamError("fd_evolve: dt must satisfy the CFL bound 0 < dt <= 0.25");
    if (params.t_end < 0)
        throw ParamError("fd_evolve: t_end must be nonnegative");

    const int w = g.width(), h = g.height();
    std::vector<double> u = g.samples();
    std::vector<double> nx(u.size()), ny(u.size()), gmag(u.size());
    const double eps2 = params.eps_reg * params.eps_reg;

    auto at = [&](const std::vector<double>& f, int i, int j) {
        return f[size_t(reflect(j, h)) * w + reflect(i, w)];
    };

    double elapsed = 0;
    while (elapsed < params.t_end) {
        double dt = std::min(params.dt, params.t_end - elapsed);
        for (int j = 0; j < h; ++j)
            for (int i = 0; i < w; ++i) {
                double px = (at(u, i + 1, j) - at(u, i - 1, j)) / 2;
                double py = (at(u, i, j + 1) - at(u, i, j - 1)) / 2;
                double wn = std::sqrt(px * px + py * py + eps2);
                size_t s = size_t(j) * w + i;
                nx[s] = px / wn;
                ny[s] = py / wn;
                gmag[s] = std::sqrt(px * px + py * py);
            }
        for (int j = 0; j < h; ++j)
            for (int i = 0; i < w; ++i) {
                double kappa = (at(nx, i + 1, j) - at(nx, i - 1, j)) / 2 +
                               (at(ny, i, j + 1) - at(ny, i, j - 1)) / 2;
                double speed = params.power == Scheme::cs
                                   ? kappa
                                   : std::cbrt(kappa); // sgn(k)|k|^{1/3}
                size_t s = size_t(j) * w + i;
                u[s] += dt * gmag[s] * speed;
            }
        elapsed += dt;
    }
    ImageGrid out(w, h, std::move(u), g.origin_x(), g.origin_y());
    out.set_maxval(g.maxval());
    return out;
}

RadialProfile::RadialProfile(std::vector<std::pair<double, double>> knots)
    : knots_(std::move(knots)) {
    if (knots_.size() < 2)
        throw ParamError("radial profile needs at least 2 knots");
    bool up = true, down = true;
    for (size_t i = 0; i + 1 < knots_.size(); ++i) {
        if (!(knots_[i + 1].first > knots_[i].first))
            throw ParamError("radial profile radii must be strictly increasing");
        if (knots_[i + 1].second > knots_[i].second)
            down = false;
        if (knots_[i + 1].second < knots_[i].second)
            up = false;
    }
    if (!up && !down)
        throw ParamError("radial profile must be monotone in radius");
    nonincreasing_ = down;
}

double RadialProfile::operator()(double r) const {
    if (r <= knots_.front().first)
        return knots_.front().second;
    if (r >= knots_.back().first)
        return knots_.back().second;
    auto it = std::lower_bound(knots_.begin(), knots_.end(), r,
                               [](const auto& k, double x) { return k.first < x; });
    const auto &hi = *it, &lo = *(it - 1);
    double t = (r - lo.first) / (hi.first - lo.first);
    return lo.second + t * (hi.second - lo.second);
}

ImageGrid make_radial(int width, int height, const RadialProfile& profile,
                      Point center) {
    ImageGrid out(width, height);
    for (int j = 0; j < height; ++j)
        for (int i = 0; i < width; ++i)
            out.at(i, j) = profile(dist({double(i), double(j)}, center));
    return out;
}

ImageGrid exact_radial_evolution(int width, int height, const RadialProfile& profile,
                                 Point center, double t, Scheme scheme) {
    ImageGrid out(width, height);
    for (int j = 0; j < height; ++j)
        for (int i = 0; i < width; ++i) {
            double r = dist({double(i), double(j)}, center);
            double shifted = scheme == Scheme::cs
                                 ? std::sqrt(r * r + 2 * t)
                                 : std::pow(std::pow(r, 4.0 / 3.0) + (4.0 / 3.0) * t,
                                            0.75);
            out.at(i, j) = profile(shifted);
        }
    return out;
}

} // namespace lls
