#include "isosym/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isosym/gaussian_core.hpp"

namespace isosym {

GaussHermiteRule gauss_hermite(std::size_t n) {
    if (n == 0 || n > 512) {
        throw std::invalid_argument("gauss_hermite: n must lie in [1, 512]");
    }
    // Roots of the physicists' Hermite polynomial H_n via Newton iteration on
    // the orthonormal recurrence, then rescaled to the Gaussian weight:
    // x_gauss = sqrt(2) x, w_gauss = w / sqrt(pi).
    const double pim4 = 0.7511255444649424828587;  // pi^{-1/4}
    const std::size_t m = (n + 1) / 2;
    std::vector<double> x(n), w(n);
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * x[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * x[1];
        } else {
            z = 2.0 * z - x[i - 2];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    GaussHermiteRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double sqrt2 = std::sqrt(2.0);
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::acos(-1.0));
    for (std::size_t i = 0; i < n; ++i) {
        // ascending nodes
        rule.nodes[i] = sqrt2 * x[n - 1 - i];
        rule.weights[i] = w[n - 1 - i] * inv_sqrt_pi;
    }
    return rule;
}

namespace {

double simpson_estimate(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_estimate(a, fa, m, fm, flm);
    const double right = simpson_estimate(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(b > a)) throw std::invalid_argument("adaptive_simpson: need b > a");
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson_estimate(a, fa, b, fb, fm);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

namespace {

// SplitMix64 output function over seed-offset counters.
inline std::uint64_t splitmix64(std::uint64_t state) {
    std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

double GaussianStream::uniform(std::uint64_t index) const {
    const std::uint64_t bits = splitmix64(seed_ ^ splitmix64(index));
    // 53 random bits, offset half a lattice step to stay inside (0,1)
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianStream::normal(std::uint64_t index) const {
    return gauss_quantile(uniform(index));
}

void GaussianStream::fill_point(std::uint64_t sample_index, std::span<double> out) const {
    const std::uint64_t base = sample_index * out.size();
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = normal(base + j);
    }
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_distance: empty sample");
    // walk both sorted-descending lists; compare exceedance fractions
    std::size_t i = 0, j = 0;
    double best = 0.0;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        const double v = std::max(a[i], b[j]);
        while (i < a.size() && a[i] >= v) ++i;
        while (j < b.size() && b[j] >= v) ++j;
        best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return best;
}

double ks_distance_analytic(std::span<const double> sorted_desc,
                            const std::function<double(double)>& lambda_of_value) {
    const double n = static_cast<double>(sorted_desc.size());
    double best = 0.0;
    for (std::size_t i = 0; i < sorted_desc.size(); ++i) {
        const double lam = lambda_of_value(sorted_desc[i]);
        // empirical exceedance jumps from i/n to (i+1)/n at this sample
        best = std::max(best, std::abs(lam - static_cast<double>(i) / n));
        best = std::max(best, std::abs(lam - static_cast<double>(i + 1) / n));
    }
    return best;
}

}  // namespace isosym
