#pragma once

/**
 * @file set_geometry.hpp
 * @brief Gaussian measure and perimeter of half-spaces, centered balls and
 *        slabs, and the isoperimetric margin Per(A) - I(gamma_n(A)).
 */

#include <cstdint>
#include <string>

namespace isosym {

struct GaussianSet {
    enum class Shape { half_space, centered_ball, slab };
    Shape shape;
    int dim = 1;
    double r = 0.0;  ///< half-space boundary x1 < r
    double radius = 0.0;
    double a = 0.0, b = 0.0;  ///< slab a < x1 < b

    static GaussianSet half_space(double r, int dim = 1);
    static GaussianSet centered_ball(double radius, int dim);
    static GaussianSet slab(double a, double b, int dim = 1);

    std::string describe() const;
};

struct MeasureResult {
    double value = 0.0;
    double std_error = 0.0;  ///< zero for closed-form shapes
    bool monte_carlo = false;
};

/// Gaussian measure; closed form except centered balls with dim >= 3, which
/// are estimated by Monte Carlo with a reported standard error.
MeasureResult measure(const GaussianSet& set, std::size_t mc_samples = 1000000,
                      std::uint64_t seed = 2026);

/// Gaussian perimeter (boundary integral of the density), closed form.
double perimeter(const GaussianSet& set);

struct IsoMargin {
    double margin = 0.0;             ///< Per(A) - I(measure)
    double confidence_radius = 0.0;  ///< 3 sigma propagated from the measure
};

/// Isoperimetric margin; exactly zero on half-spaces, positive elsewhere.
IsoMargin iso_margin(const GaussianSet& set, std::size_t mc_samples = 1000000,
                     std::uint64_t seed = 2026);

/// Volume of the n-dimensional unit ball, pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);

}  // namespace isosym
