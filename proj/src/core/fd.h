#pragma once

#include "flow.h"
#include "image.h"

#include <vector>

namespace lls {

/// Explicit finite-difference solver for the curvature motions on the pixel
/// grid, the independent cross-check for the geometric chain.
struct FdParams {
    double dt = 0.1;
    double eps_reg = 1e-4; // regularizer inside the gradient norm
    double t_end = 0.0;
    Scheme power = Scheme::cs; // cs: u_t = |Du| k; as: u_t = |Du| k^{1/3}
};

/// Explicit time stepping of u_t = |Du| sgn(k)|k|^p with
/// k = div(Du / sqrt(|Du|^2 + eps^2)), central differences and Neumann
/// boundary. Requires dt <= 0.25 (CFL with h = 1).
ImageGrid fd_evolve(const ImageGrid& g, const FdParams& params);

/// Monotone radial profile as a piecewise-linear knot table (radii
/// ascending); values are clamped beyond the last knot.
class RadialProfile {
public:
    explicit RadialProfile(std::vector<std::pair<double, double>> knots);
    double operator()(double r) const;
    bool nonincreasing() const { return nonincreasing_; }

private:
    std::vector<std::pair<double, double>> knots_;
    bool nonincreasing_ = false;
};

/// Sample u(i,j) = profile(|(i,j) - center|).
ImageGrid make_radial(int width, int height, const RadialProfile& profile,
                      Point center);

/// Closed-form evolution of a radial image: the value at radius r after time
/// t is profile(sqrt(r^2 + 2t)) under curve shortening and
/// profile((r^{4/3} + (4/3) t)^{3/4}) under affine shortening.
ImageGrid exact_radial_evolution(int width, int height, const RadialProfile& profile,
                                 Point center, double t, Scheme scheme);

} // namespace lls
