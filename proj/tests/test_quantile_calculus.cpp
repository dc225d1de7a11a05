#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "isosym/function_sampler.hpp"
#include "isosym/gaussian_core.hpp"
#include "isosym/numerics.hpp"
#include "isosym/quantile_calculus.hpp"

using namespace isosym;

namespace {

// uniform dyadic grid {0, 1/m, ..., 1}
std::vector<double> dyadic_knots(std::size_t m) { return uniform_knots(m); }

// indicator chi_(0,r) as a step function on a grid containing r
QuantileFunction indicator(double r, std::size_t m = 100) {
    std::vector<double> knots = uniform_knots(m);
    knots.push_back(r);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    std::vector<double> values(knots.size() - 1);
    for (std::size_t i = 1; i < knots.size(); ++i) values[i - 1] = knots[i] <= r ? 1.0 : 0.0;
    return QuantileFunction::step_fn(std::move(knots), std::move(values));
}

QuantileFunction constant_fn(double c, std::size_t m = 64) {
    return QuantileFunction::step_fn(uniform_knots(m), std::vector<double>(m, c));
}

// random nonincreasing nonnegative step functions for property checks
QuantileFunction random_monotone(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> msize(2, 60);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t m = msize(rng);
    std::vector<double> knots{0.0};
    double t = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        t += u(rng) + 1e-3;
        knots.push_back(t);
    }
    for (auto& k : knots) k /= knots.back();
    knots.back() = 1.0;
    std::vector<double> values(m);
    double v = 5.0 * u(rng) + 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        values[i] = v;
        v -= u(rng) * v;
    }
    return QuantileFunction::step_fn(std::move(knots), std::move(values));
}

}  // namespace

TEST_CASE("construction validates the grid") {
    CHECK_THROWS_AS(QuantileFunction::step_fn({0.0, 1.0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(QuantileFunction::step_fn({0.1, 1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(QuantileFunction::step_fn({0.0, 0.5, 0.5}, {1.0, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(QuantileFunction::step_fn({0.0, 0.5, 1.5}, {1.0, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(QuantileFunction::step_fn({0.0, 1.0}, {-0.25}), std::invalid_argument);
    const auto q = QuantileFunction::step_fn({0.0, 0.5, 1.0}, {1.0, 2.0});
    CHECK_FALSE(q.nonincreasing());
    CHECK_THROWS_AS(maximal_average(q), std::invalid_argument);
    CHECK_THROWS_AS(q(1.5), std::invalid_argument);
    CHECK_THROWS_AS(q(0.0), std::invalid_argument);
}

TEST_CASE("maximal average: indicator, constant, linear ramp") {
    SUBCASE("chi_(0,r): f**(t) = min(1, r/t)") {
        const double r = 0.37;
        const auto fss = maximal_average(indicator(r));
        for (std::size_t i = 0; i < fss.cells(); ++i) {
            const double t = fss.node(i);
            CHECK(fss.value(i) == doctest::Approx(std::min(1.0, r / t)).epsilon(1e-12));
        }
    }
    SUBCASE("constant stays the same constant exactly") {
        const auto fss = maximal_average(constant_fn(3.25));
        for (std::size_t i = 0; i < fss.cells(); ++i) CHECK(fss.value(i) == 3.25);
    }
    SUBCASE("1 - s on a dyadic grid: node-exact 1 - t/2") {
        const auto q = QuantileFunction::sample([](double s) { return 1.0 - s; },
                                                dyadic_knots(64));
        const auto fss = maximal_average(q);
        // cross-check one node by a fine Riemann sum of the closed form
        double riemann = 0.0;
        const double t_probe = fss.node(31);
        const int steps = 2000000;
        for (int k = 0; k < steps; ++k) {
            const double s = t_probe * (k + 0.5) / steps;
            riemann += (1.0 - s) * t_probe / steps;
        }
        CHECK(fss.value(31) == doctest::Approx(riemann / t_probe).epsilon(1e-9));
        for (std::size_t i = 0; i < fss.cells(); ++i) {
            CHECK(fss.value(i) == 1.0 - 0.5 * fss.node(i));
        }
    }
}

TEST_CASE("oscillation: exact zero on constants, indicator and ramp forms") {
    SUBCASE("constant") {
        const auto osc = oscillation(constant_fn(2.5));
        for (std::size_t i = 0; i < osc.cells(); ++i) CHECK(osc.value(i) == 0.0);
    }
    SUBCASE("chi_(0,r): r/t past r") {
        const double r = 0.25;
        const auto osc = oscillation(indicator(r));
        for (std::size_t i = 0; i < osc.cells(); ++i) {
            const double t = osc.node(i);
            if (t <= r) {
                CHECK(osc.value(i) == doctest::Approx(0.0).epsilon(1e-12));
            } else {
                CHECK(osc.value(i) == doctest::Approx(r / t).epsilon(1e-12));
            }
        }
    }
    SUBCASE("1 - s gives t/2") {
        const auto q = QuantileFunction::sample([](double s) { return 1.0 - s; },
                                                dyadic_knots(64));
        const auto osc = oscillation(q);
        for (std::size_t i = 0; i < osc.cells(); ++i) {
            CHECK(osc.value(i) == doctest::Approx(0.5 * osc.node(i)).epsilon(1e-14));
        }
    }
    SUBCASE("nonnegative on random monotone inputs") {
        std::mt19937_64 rng(7);
        for (int rep = 0; rep < 200; ++rep) {
            const auto q = random_monotone(rng);
            const auto osc = oscillation(q);
            const auto fss = maximal_average(q);
            for (std::size_t i = 0; i < osc.cells(); ++i) {
                CHECK(osc.value(i) >= 0.0);
                CHECK(fss.value(i) >= q.value(i));  // f** >= f*
                if (i > 0) CHECK(fss.value(i) <= fss.value(i - 1));
            }
        }
    }
}

TEST_CASE("neg_derivative: exact slopes, zero for constants, analytic cross-check") {
    SUBCASE("1 - s with window 1 is exactly 1") {
        const auto q = QuantileFunction::sample([](double s) { return 1.0 - s; },
                                                dyadic_knots(32));
        const auto d = neg_derivative(q, 1);
        for (std::size_t i = 0; i < d.cells(); ++i) {
            CHECK(d.value(i) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("constant gives zero") {
        const auto d = neg_derivative(constant_fn(1.0), 4);
        for (std::size_t i = 0; i < d.cells(); ++i) CHECK(d.value(i) == 0.0);
    }
    SUBCASE("rearrangement of |x1|: slope matches (1/2)/I(1-s/2) within 2%") {
        // closed form differentiated with the inverse-CDF oracle
        std::vector<double> knots{0.0};
        for (int i = 1; i <= 2000; ++i) knots.push_back(i / 2000.0);
        const auto q = QuantileFunction::sample(
            [](double s) { return gauss_quantile(1.0 - 0.5 * s); }, knots);
        const auto d = neg_derivative(q, 1);
        for (std::size_t i = 0; i < d.cells(); ++i) {
            const double mid = 0.5 * (d.knot(i) + d.knot(i + 1));
            if (mid < 0.05 || mid > 0.95) continue;
            const double analytic = 0.5 / iso_profile(1.0 - 0.5 * mid);
            CHECK(d.value(i) == doctest::Approx(analytic).epsilon(0.02));
        }
    }
    CHECK_THROWS_AS(neg_derivative(constant_fn(1.0, 8), 0), std::invalid_argument);
    CHECK_THROWS_AS(neg_derivative(constant_fn(1.0, 8), 8), std::invalid_argument);
}

TEST_CASE("truncation: clamps, reconstruction identity, range identity") {
    SUBCASE("t2 at the max clamps nothing below it") {
        const auto q = indicator(0.4);
        const auto tr = quantile_truncate(q, 0.0, q.max_value());
        for (std::size_t i = 0; i < q.cells(); ++i) CHECK(tr.value(i) == q.value(i));
    }
    SUBCASE("indicator with interior levels scales to t2 - t1") {
        const auto tr = quantile_truncate(indicator(0.4), 0.3, 0.8);
        for (std::size_t i = 0; i < tr.cells(); ++i) {
            const double expect = tr.node(i) <= 0.4 ? 0.5 : 0.0;
            CHECK(tr.value(i) == expect);
        }
    }
    SUBCASE("reconstruction identity, exact on dyadic levels") {
        // min(q, t2) == trunc + t1 on {q > t1}
        const double t1 = 0.25, t2 = 2.5;
        std::vector<double> values{5.0, 3.0, 2.75, 1.5, 0.125, 0.0};
        const auto q = QuantileFunction::step_fn(
            {0.0, 0.1, 0.3, 0.55, 0.7, 0.9, 1.0}, std::move(values));
        const auto tr = quantile_truncate(q, t1, t2);
        for (std::size_t i = 0; i < q.cells(); ++i) {
            if (q.value(i) > t1) {
                CHECK(tr.value(i) + t1 == std::min(q.value(i), t2));
            } else {
                CHECK(tr.value(i) == 0.0);
            }
        }
    }
    SUBCASE("bounded by t2 - t1 and monotone") {
        std::mt19937_64 rng(11);
        for (int rep = 0; rep < 100; ++rep) {
            const auto q = random_monotone(rng);
            const auto tr = quantile_truncate(q, 0.5, 2.0);
            CHECK(tr.nonincreasing());
            for (std::size_t i = 0; i < tr.cells(); ++i) CHECK(tr.value(i) <= 1.5);
        }
    }
    CHECK_THROWS_AS(quantile_truncate(indicator(0.3), 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(quantile_truncate(indicator(0.3), 0.5, 0.2), std::invalid_argument);
}

TEST_CASE("truncation agrees with rearranging the truncated function") {
    // two routes: truncate the rearrangement vs rearrange the truncation
    const TestFunction f = family_radial_bump(1.0, 2);
    const auto e = sample_rearrangement(f, 100000, 99);
    const auto route_a = quantile_truncate(e.f_star, 0.3, 0.8);
    const auto e_trunc = sample_rearrangement(truncate_function(f, 0.3, 0.8), 100000, 17);
    CHECK(ks_distance(route_a.values(), e_trunc.f_star.values()) <= 0.02);
}

TEST_CASE("hardy operators") {
    SUBCASE("P of a constant is the constant") {
        const auto p = hardy_P(constant_fn(2.0));
        for (std::size_t i = 0; i < p.cells(); ++i) {
            CHECK(p.value(i) == doctest::Approx(2.0).epsilon(1e-14));
        }
    }
    SUBCASE("P equals maximal_average on nonincreasing inputs to 1e-12") {
        std::mt19937_64 rng(3);
        for (int rep = 0; rep < 50; ++rep) {
            const auto q = random_monotone(rng);
            const auto a = hardy_P(q);
            const auto b = maximal_average(q);
            for (std::size_t i = 0; i < q.cells(); ++i) {
                CHECK(std::abs(a.value(i) - b.value(i)) <= 1e-12 * (1.0 + b.value(i)));
            }
        }
    }
    SUBCASE("P o P keeps nonincreasing inputs nonincreasing") {
        std::mt19937_64 rng(5);
        for (int rep = 0; rep < 50; ++rep) {
            const auto pp = hardy_P(hardy_P(random_monotone(rng)));
            for (std::size_t i = 1; i < pp.cells(); ++i) {
                CHECK(pp.value(i) <= pp.value(i - 1) * (1.0 + 1e-13) + 1e-15);
            }
        }
    }
    SUBCASE("Q of the constant 1 is log(1/t)") {
        const auto q = hardy_Q(constant_fn(1.0, 256));
        for (std::size_t i = 0; i < q.cells(); ++i) {
            CHECK(q.value(i) == doctest::Approx(std::log(1.0 / q.node(i))).epsilon(1e-12));
        }
    }
    SUBCASE("Qtilde of 1 at t = 0.01 against the frozen oracle") {
        // closed form 2 sqrt(u)(sqrt(u) - 1), u = 1 + log 100, cross-checked by
        // a 2e6-point midpoint Riemann sum
        std::vector<double> knots = log_uniform_knots(1e-4, 512);
        knots.push_back(0.01);
        std::sort(knots.begin(), knots.end());
        knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
        const std::size_t m = knots.size() - 1;
        const auto qt = hardy_Qtilde(
            QuantileFunction::step_fn(knots, std::vector<double>(m, 1.0)));
        double at = 0.0;
        for (std::size_t i = 0; i < qt.cells(); ++i) {
            if (qt.node(i) == 0.01) at = qt.value(i);
        }
        CHECK(at == doctest::Approx(6.475292247199375).epsilon(1e-9));

        double riemann = 0.0;
        const int steps = 2000000;
        for (int k = 0; k < steps; ++k) {
            const double s = 0.01 + (1.0 - 0.01) * (k + 0.5) / steps;
            riemann += (1.0 - 0.01) / steps / (s * std::sqrt(1.0 + std::log(1.0 / s)));
        }
        riemann *= std::sqrt(1.0 + std::log(100.0));
        CHECK(at == doctest::Approx(riemann).epsilon(1e-6));
    }
}

TEST_CASE("norms") {
    SUBCASE("Lp of the constant 1 is 1 for every p") {
        const auto one = constant_fn(1.0);
        for (double p : {1.0, 2.0, 4.0}) {
            CHECK(norm(one, NormTag::lp(p)) == doctest::Approx(1.0).epsilon(1e-13));
        }
        CHECK(norm(one, NormTag::linf()) == 1.0);
    }
    SUBCASE("LS norms vanish exactly on constants") {
        const auto c = constant_fn(4.0);
        CHECK(norm(c, NormTag::ls_lp(1.0)) == 0.0);
        CHECK(norm(c, NormTag::ls_lp(2.0)) == 0.0);
        CHECK(norm(c, NormTag::ls_linf()) == 0.0);
        CHECK(norm(c, NormTag::llog_half_inf_inf()) == 0.0);
    }
    SUBCASE("LS norms finite on a nontrivial rearrangement") {
        std::vector<double> knots{0.0};
        for (int i = 1; i <= 400; ++i) knots.push_back(i / 400.0);
        const auto q = QuantileFunction::sample(
            [](double s) { return gauss_quantile(1.0 - 0.5 * s); }, knots);
        for (const auto tag : {NormTag::ls_lp(2.0), NormTag::ls_linf(),
                               NormTag::llog_half_inf_inf()}) {
            const double v = norm(q, tag);
            CHECK(std::isfinite(v));
            CHECK(v > 0.0);
        }
    }
    SUBCASE("log-weight integral matches Gamma(p/2 + 1)") {
        // int_0^1 (log 1/s)^{p/2} ds = Gamma(p/2 + 1)
        const auto knots = log_uniform_knots(1e-6, 2048);
        const std::size_t m = knots.size() - 1;
        const auto one = QuantileFunction::step_fn(knots, std::vector<double>(m, 1.0));
        CHECK(norm(one, NormTag::lp_log_half(1.0)) ==
              doctest::Approx(0.8862269254527580).epsilon(2e-4));
        CHECK(norm(one, NormTag::lp_log_half(2.0)) ==
              doctest::Approx(1.0).epsilon(2e-4));
        CHECK(std::pow(norm(one, NormTag::lp_log_half(4.0)), 4.0) ==
              doctest::Approx(2.0).epsilon(2e-3));
    }
    SUBCASE("LlogHalfInfInf of an indicator against the grid-scan oracle") {
        // sup_{t>r} (r/t) sqrt(log 1/t); the weight decays, so the sup sits at
        // the first node past r and tends to sqrt(log 1/r)
        const double r = 0.1;
        std::vector<double> knots{0.0};
        for (int i = 1; i <= 4000; ++i) knots.push_back(i / 4000.0);
        knots.push_back(r + 1e-9);
        std::sort(knots.begin(), knots.end());
        knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
        std::vector<double> values(knots.size() - 1);
        for (std::size_t i = 1; i < knots.size(); ++i) values[i - 1] = knots[i] <= r ? 1.0 : 0.0;
        const auto chi = QuantileFunction::step_fn(knots, values);
        const double got = norm(chi, NormTag::llog_half_inf_inf());

        const auto osc = oscillation(chi);
        double scan = 0.0;
        for (std::size_t i = 0; i < osc.cells(); ++i) {
            scan = std::max(scan, osc.value(i) * std::sqrt(std::log(1.0 / osc.node(i))));
        }
        CHECK(got == doctest::Approx(scan).epsilon(1e-12));
        CHECK(got == doctest::Approx(1.5174271293851465).epsilon(1e-4));
    }
    SUBCASE("unsupported tags rejected") {
        CHECK_THROWS_AS(NormTag::lp(0.5), std::invalid_argument);
        CHECK_THROWS_AS(norm(QuantileFunction::step_fn({0.0, 0.5, 1.0}, {1.0, 2.0}),
                             NormTag::ls_linf()),
                        std::invalid_argument);
    }
}

TEST_CASE("csv serialization") {
    std::ostringstream os;
    indicator(0.5, 4).write_csv(os);
    const std::string text = os.str();
    CHECK(text.rfind("t,value\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') >= 4);
}

TEST_CASE("rebuild_linear block means stay monotone") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        const auto q = random_monotone(rng);
        const auto lin = q.rebuild_linear(std::max<std::size_t>(1, q.cells() / 5));
        CHECK(lin.interpolation() == Interp::linear);
        CHECK(lin.nonincreasing());
    }
}
