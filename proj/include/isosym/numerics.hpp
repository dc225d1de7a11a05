#pragma once

/**
 * @file numerics.hpp
 * @brief Quadrature and sampling utilities shared by the verifiers.
 */

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace isosym {

/// Gauss-Hermite rule rescaled to the standard Gaussian weight:
/// integral of h against gamma_1 ~ sum w_i h(x_i), sum w_i == 1.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Build an n-point rule (Newton on the orthonormal recurrence).
GaussHermiteRule gauss_hermite(std::size_t n);

/// Adaptive Simpson on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

/// Counter-based uniform / Gaussian stream: every variate is a pure function
/// of (seed, index), so batches can be partitioned across workers and merged
/// deterministically.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : seed_(seed) {}

    /// Uniform in (0,1), never returning an exact endpoint.
    double uniform(std::uint64_t index) const;

    /// Standard normal via the inverse CDF.
    double normal(std::uint64_t index) const;

    /// Fill a point: coordinates j of sample i use indices i*dim + j.
    void fill_point(std::uint64_t sample_index, std::span<double> out) const;

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
};

/// Two-sample Kolmogorov-Smirnov distance between sorted-descending sample sets.
double ks_distance(std::span<const double> sorted_desc_a, std::span<const double> sorted_desc_b);

/// One-sample KS distance of a sorted-descending sample against an analytic
/// distribution function lambda(v) = measure{|f| > v} (nonincreasing in v).
double ks_distance_analytic(std::span<const double> sorted_desc,
                            const std::function<double(double)>& lambda_of_value);

}  // namespace isosym
