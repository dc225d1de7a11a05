#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "isosym/gaussian_core.hpp"
#include "isosym/numerics.hpp"

using namespace isosym;

namespace {

// Quadrature-based CDF, independent of the erfc route used by the library:
// Phi(r) = 1/2 + int_0^r phi, adaptive Simpson. Good to ~1e-15 on [-8, 8].
double cdf_oracle(double r) {
    if (r == 0.0) return 0.5;
    const double body = adaptive_simpson(
        [](double x) { return 0.3989422804014327 * std::exp(-0.5 * x * x); }, 0.0,
        std::abs(r), 1e-16);
    return r > 0.0 ? 0.5 + body : 0.5 - body;
}

}  // namespace

TEST_CASE("density: pinned values and evenness") {
    CHECK(gauss_density(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    // reference: arbitrary-precision evaluation of (2pi)^{-1/2} e^{-1/2}
    CHECK(gauss_density(1.0) == doctest::Approx(0.2419707245191433).epsilon(1e-14));
    for (double x : {0.3, 1.7, 4.2, 7.9}) {
        CHECK(gauss_density(x) == gauss_density(-x));
        CHECK(gauss_density(x) > 0.0);
    }
    CHECK_THROWS_AS(gauss_density(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(gauss_density(INFINITY), std::invalid_argument);
}

TEST_CASE("cdf: pinned values, reflection, quadrature oracle") {
    CHECK(gauss_cdf(0.0) == 0.5);
    CHECK(gauss_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-15));
    for (double r : {-6.0, -2.5, -0.3, 0.4, 1.1, 3.0, 6.0}) {
        CHECK(gauss_cdf(r) + gauss_cdf(-r) == doctest::Approx(1.0).epsilon(1e-15));
    }
    for (double r = -8.0; r <= 8.0; r += 0.5) {
        CHECK(std::abs(gauss_cdf(r) - cdf_oracle(r)) <= 1e-14);
    }
    SUBCASE("strictly increasing where representable") {
        double prev = gauss_cdf(-8.0);
        for (double r = -7.5; r <= 8.0; r += 0.5) {
            const double cur = gauss_cdf(r);
            CHECK(cur > prev);
            prev = cur;
        }
    }
    CHECK_THROWS_AS(gauss_cdf(std::nan("")), std::invalid_argument);
}

TEST_CASE("quantile: pinned values, round trips, rejection") {
    CHECK(gauss_quantile(0.5) == 0.0);
    CHECK(gauss_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-13));
    SUBCASE("round trip in r") {
        // The lower tail keeps full relative precision through erfc, so the
        // identity holds to 1e-10 there. Doubles near 1 are quantized to
        // ulp/2 = 5.6e-17, which alone moves the upper-tail quantile by up
        // to (ulp/2)/phi(6) ~ 9e-9; test the reflected form at that bound.
        for (int r = -6; r <= 0; ++r) {
            CHECK(std::abs(gauss_quantile(gauss_cdf(r)) - r) <= 1e-10);
        }
        for (int r = -6; r <= 6; ++r) {
            const double lower = -std::abs(static_cast<double>(r));
            const double recovered = gauss_quantile(gauss_cdf(lower));
            CHECK(std::abs((r <= 0 ? recovered : -recovered) - r) <= 1e-10);
        }
        for (int r = 1; r <= 6; ++r) {
            CHECK(std::abs(gauss_quantile(gauss_cdf(r)) - r) <=
                  1e-10 + 6e-17 / gauss_density(r));
        }
    }
    SUBCASE("round trip in t, deep into both tails") {
        for (double t : {1e-12, 1e-6, 1e-3, 0.2, 0.8, 1.0 - 1e-6, 1.0 - 1e-12}) {
            CHECK(gauss_cdf(gauss_quantile(t)) == doctest::Approx(t).epsilon(1e-10));
        }
    }
    SUBCASE("strictly increasing") {
        double prev = gauss_quantile(1e-10);
        for (double t : {1e-6, 1e-3, 0.1, 0.4, 0.7, 0.99, 1.0 - 1e-9}) {
            const double cur = gauss_quantile(t);
            CHECK(cur > prev);
            prev = cur;
        }
    }
    CHECK_THROWS_AS(gauss_quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_quantile(1.0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_quantile(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(gauss_quantile(1e-301), std::invalid_argument);
}

TEST_CASE("profile: maximum, symmetry, pinned interior value") {
    CHECK(iso_profile(0.5) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(iso_profile(0.0) == 0.0);
    CHECK(iso_profile(1.0) == 0.0);
    // reference: inverse-CDF oracle composed with the density formula
    CHECK(iso_profile(0.1) == doctest::Approx(0.1754983319324868).epsilon(1e-12));

    SUBCASE("symmetry over 10^4 grid points") {
        double worst = 0.0;
        for (int i = 1; i < 10000; ++i) {
            const double t = i / 10000.0;
            worst = std::max(worst, std::abs(iso_profile(t) - iso_profile(1.0 - t)));
        }
        CHECK(worst <= 1e-12);
    }

    SUBCASE("ODE I'' = -1/I by central differences") {
        const double h = 1e-4;
        for (double t = 0.05; t <= 0.95; t += 0.005) {
            const double second =
                (iso_profile(t + h) - 2.0 * iso_profile(t) + iso_profile(t - h)) / (h * h);
            const double inv = 1.0 / iso_profile(t);
            CHECK(std::abs(second + inv) <= 1e-4 * (1.0 + inv * inv));
        }
    }

    SUBCASE("I(s)/s decreasing and s/I(s) increasing") {
        double prev_ratio = iso_profile(1e-9) / 1e-9;
        double prev_inv = 1e-9 / iso_profile(1e-9);
        for (double s : {1e-6, 1e-4, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.999}) {
            const double ratio = iso_profile(s) / s;
            const double inv = s / iso_profile(s);
            CHECK(ratio < prev_ratio);
            CHECK(inv > prev_inv);
            prev_ratio = ratio;
            prev_inv = inv;
        }
    }

    SUBCASE("concavity on a grid") {
        for (double t = 0.02; t <= 0.97; t += 0.01) {
            const double mid = iso_profile(t + 0.005);
            CHECK(2.0 * mid >= iso_profile(t) + iso_profile(t + 0.01) - 1e-12);
        }
    }

    CHECK_THROWS_AS(iso_profile(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(iso_profile(1.01), std::invalid_argument);
}

TEST_CASE("profile ratio: frozen regression values and the t -> 0 ordering") {
    // reference values from an arbitrary-precision oracle
    CHECK(iso_profile_ratio(1e-3) == doctest::Approx(0.9058812388283813).epsilon(1e-9));
    CHECK(iso_profile_ratio(1e-6) == doctest::Approx(0.9413701556477794).epsilon(1e-9));
    CHECK(iso_profile_ratio(1e-9) == doctest::Approx(0.9562658751950503).epsilon(1e-9));
    CHECK(iso_profile_ratio(1e-12) == doctest::Approx(0.9646963414014149).epsilon(1e-9));

    CHECK(std::abs(iso_profile_ratio(1e-12) - 1.0) < std::abs(iso_profile_ratio(1e-6) - 1.0));

    SUBCASE("ratio stays below 1.05 over [1e-12, 0.4]") {
        double max_ratio = 0.0;
        for (double lt = std::log(1e-12); lt <= std::log(0.4); lt += 0.05) {
            max_ratio = std::max(max_ratio, iso_profile_ratio(std::exp(lt)));
        }
        CHECK(max_ratio < 1.05);
        CHECK(max_ratio == doctest::Approx(0.9646963414014149).epsilon(1e-6));
    }

    CHECK_THROWS_AS(iso_profile_ratio(0.5), std::invalid_argument);
    CHECK_THROWS_AS(iso_profile_ratio(0.0), std::invalid_argument);
}

TEST_CASE("profile point carries its mass coordinate") {
    const ProfilePoint p = profile_point(0.25);
    CHECK(p.t == 0.25);
    CHECK(p.value == iso_profile(0.25));
    CHECK(p.value <= 0.3989422804014327 + 1e-15);
    CHECK(std::abs(p.value - iso_profile(0.75)) <= 1e-12);
    CHECK_THROWS_AS(profile_point(0.0), std::invalid_argument);
}
