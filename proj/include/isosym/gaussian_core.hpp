#pragma once

/**
 * @file gaussian_core.hpp
 * @brief One-dimensional Gaussian special functions and the isoperimetric
 *        profile. Pure functions of value inputs, safe for concurrent use.
 */

namespace isosym {

/// Standard normal density (2*pi)^{-1/2} exp(-x^2/2). Throws on non-finite x.
double gauss_density(double x);

/// log of gauss_density; safe deep in the tails where the density underflows.
double log_gauss_density(double x);

/// Standard normal CDF. Evaluated through erfc so the extreme tails keep
/// relative accuracy. Throws on non-finite r.
double gauss_cdf(double r);

/// Upper tail 1 - gauss_cdf(r), without cancellation for large r.
double gauss_tail(double r);

/// Inverse standard normal CDF on (0, 1). Rational initial approximation
/// refined by two Newton steps, round-trip accurate to well under 1e-10.
/// Throws for t outside (0,1) and for t < 1e-300 (tail underflow).
double gauss_quantile(double t);

/// Gaussian isoperimetric profile I(t) = gauss_density(gauss_quantile(t)),
/// extended by continuity with I(0) = I(1) = 0. Throws for t outside [0,1].
double iso_profile(double t);

/// I(t) / (t * sqrt(2 log(1/t))) for t in (0, 1/2); tends to 1 as t -> 0.
double iso_profile_ratio(double t);

/// One evaluation of the profile, value paired with its mass coordinate.
struct ProfilePoint {
    double t;      ///< mass in (0,1)
    double value;  ///< I(t)
};

/// Evaluate the profile at t, range-checked for mass coordinates.
ProfilePoint profile_point(double t);

}  // namespace isosym
