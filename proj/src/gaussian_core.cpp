#include "isosym/gaussian_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace isosym {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684;
constexpr double kSqrt2 = 1.4142135623730950488016887242096980786;
constexpr double kLogSqrt2Pi = 0.9189385332046727417803297364056176398;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + ": non-finite input");
    }
}

// Rational initial guess for the normal quantile (Acklam's approximation,
// |relative error| < 1.2e-9 over (0,1)), sharpened below by Newton.
double quantile_seed(double t) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    constexpr double t_low = 0.02425;
    if (t < t_low) {
        const double q = std::sqrt(-2.0 * std::log(t));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (t <= 1.0 - t_low) {
        const double q = t - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log(1.0 - t));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double gauss_density(double x) {
    require_finite(x, "gauss_density");
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double log_gauss_density(double x) {
    require_finite(x, "log_gauss_density");
    return -0.5 * x * x - kLogSqrt2Pi;
}

double gauss_cdf(double r) {
    require_finite(r, "gauss_cdf");
    return 0.5 * std::erfc(-r / kSqrt2);
}

double gauss_tail(double r) {
    require_finite(r, "gauss_tail");
    return 0.5 * std::erfc(r / kSqrt2);
}

double gauss_quantile(double t) {
    if (!(t > 0.0 && t < 1.0)) {
        throw std::invalid_argument("gauss_quantile: t must lie in (0,1)");
    }
    if (t < 1e-300 || 1.0 - t < 1e-300) {
        throw std::invalid_argument("gauss_quantile: t too close to {0,1} (tail underflow)");
    }
    double x = quantile_seed(t);
    // Two Newton steps with the density as derivative. The residual is formed
    // from the near tail (erfc side) so it keeps relative accuracy.
    for (int i = 0; i < 2; ++i) {
        const double density = gauss_density(x);
        if (density <= 0.0) break;
        double step;
        if (t < 0.5) {
            step = (gauss_cdf(x) - t) / density;
        } else {
            step = ((1.0 - t) - gauss_tail(x)) / density;
        }
        x -= step;
    }
    return x;
}

double iso_profile(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("iso_profile: t must lie in [0,1]");
    }
    const double s = std::min(t, 1.0 - t);  // I(t) = I(1-t)
    if (s < 1e-300) return 0.0;
    // Work in log space: exp(log phi(q)) survives q^2/2 up to ~700.
    const double q = gauss_quantile(s);
    return std::exp(log_gauss_density(q));
}

double iso_profile_ratio(double t) {
    if (!(t > 0.0 && t < 0.5)) {
        throw std::invalid_argument("iso_profile_ratio: t must lie in (0,1/2)");
    }
    const double q = gauss_quantile(t);
    // I(t)/(t sqrt(2 log 1/t)) evaluated as exp of a log-space difference so
    // neither factor underflows before the quotient forms.
    const double log_num = log_gauss_density(q);
    const double log_den = std::log(t) + 0.5 * std::log(2.0 * std::log(1.0 / t));
    return std::exp(log_num - log_den);
}

ProfilePoint profile_point(double t) {
    if (!(t > 0.0 && t < 1.0)) {
        throw std::invalid_argument("profile_point: t must lie in (0,1)");
    }
    return ProfilePoint{t, iso_profile(t)};
}

}  // namespace isosym
