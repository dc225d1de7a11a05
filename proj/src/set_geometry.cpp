#include "isosym/set_geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "isosym/gaussian_core.hpp"
#include "isosym/numerics.hpp"

namespace isosym {

GaussianSet GaussianSet::half_space(double r, int dim) {
    if (!std::isfinite(r) || dim < 1) throw std::invalid_argument("half_space: bad parameters");
    GaussianSet s;
    s.shape = Shape::half_space;
    s.dim = dim;
    s.r = r;
    return s;
}

GaussianSet GaussianSet::centered_ball(double radius, int dim) {
    if (!(radius > 0.0) || dim < 1) {
        throw std::invalid_argument("centered_ball: radius must be positive (R=0 is measure-zero)");
    }
    GaussianSet s;
    s.shape = Shape::centered_ball;
    s.dim = dim;
    s.radius = radius;
    return s;
}

GaussianSet GaussianSet::slab(double a, double b, int dim) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("slab: need a < b (a=b is measure-zero)");
    }
    GaussianSet s;
    s.shape = Shape::slab;
    s.dim = dim;
    s.a = a;
    s.b = b;
    return s;
}

std::string GaussianSet::describe() const {
    char buf[96];
    switch (shape) {
        case Shape::half_space:
            std::snprintf(buf, sizeof buf, "half_space(r=%g,n=%d)", r, dim);
            break;
        case Shape::centered_ball:
            std::snprintf(buf, sizeof buf, "ball(R=%g,n=%d)", radius, dim);
            break;
        case Shape::slab:
            std::snprintf(buf, sizeof buf, "slab(%g,%g,n=%d)", a, b, dim);
            break;
    }
    return buf;
}

MeasureResult measure(const GaussianSet& set, std::size_t mc_samples, std::uint64_t seed) {
    MeasureResult out;
    switch (set.shape) {
        case GaussianSet::Shape::half_space:
            out.value = gauss_cdf(set.r);
            return out;
        case GaussianSet::Shape::slab:
            out.value = gauss_cdf(set.b) - gauss_cdf(set.a);
            return out;
        case GaussianSet::Shape::centered_ball:
            break;
    }
    const double R = set.radius;
    if (set.dim == 1) {
        out.value = 2.0 * gauss_cdf(R) - 1.0;
        return out;
    }
    if (set.dim == 2) {
        out.value = 1.0 - std::exp(-0.5 * R * R);
        return out;
    }
    if (mc_samples < 1000) throw std::invalid_argument("measure: too few Monte Carlo samples");
    GaussianStream stream(seed);
    std::vector<double> pt(static_cast<std::size_t>(set.dim));
    const double r2 = R * R;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < mc_samples; ++i) {
        stream.fill_point(i, pt);
        double acc = 0.0;
        for (double x : pt) acc += x * x;
        if (acc < r2) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(mc_samples);
    out.value = p;
    out.std_error = std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(mc_samples));
    out.monte_carlo = true;
    return out;
}

double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: n must be >= 1");
    const double pi = std::acos(-1.0);
    return std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double perimeter(const GaussianSet& set) {
    const double pi = std::acos(-1.0);
    switch (set.shape) {
        case GaussianSet::Shape::half_space:
            return gauss_density(set.r);
        case GaussianSet::Shape::slab:
            return gauss_density(set.a) + gauss_density(set.b);
        case GaussianSet::Shape::centered_ball: {
            // surface area n w_n R^{n-1} times the density on the sphere
            const int n = set.dim;
            const double R = set.radius;
            return n * unit_ball_volume(n) * std::pow(R, n - 1) *
                   std::pow(2.0 * pi, -0.5 * n) * std::exp(-0.5 * R * R);
        }
    }
    throw std::logic_error("perimeter: unreachable");
}

IsoMargin iso_margin(const GaussianSet& set, std::size_t mc_samples, std::uint64_t seed) {
    const MeasureResult m = measure(set, mc_samples, seed);
    if (!(m.value > 0.0 && m.value < 1.0)) {
        throw std::invalid_argument("iso_margin: set must have measure in (0,1)");
    }
    IsoMargin out;
    out.margin = perimeter(set) - iso_profile(m.value);
    if (m.monte_carlo) {
        // |dI/dt| = |Phi^{-1}(t)|, first-order propagation of the MC error
        out.confidence_radius = 3.0 * m.std_error * std::abs(gauss_quantile(m.value));
    }
    return out;
}

}  // namespace isosym
