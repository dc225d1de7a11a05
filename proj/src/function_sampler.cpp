#include "isosym/function_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "isosym/gaussian_core.hpp"
#include "isosym/numerics.hpp"

namespace isosym {

EmpiricalRearrangement sample_rearrangement(const TestFunction& f, std::size_t n_samples,
                                            std::uint64_t seed) {
    if (n_samples < 1000) {
        throw std::invalid_argument("sample_rearrangement: need at least 10^3 samples");
    }
    if (f.dim < 1 || !f.eval || !f.grad_norm) {
        throw std::invalid_argument("sample_rearrangement: malformed test function");
    }
    const std::size_t n = n_samples;
    GaussianStream stream(seed);
    std::vector<double> point(static_cast<std::size_t>(f.dim));
    std::vector<double> abs_f(n), grad(n), signed_f(n);
    for (std::size_t i = 0; i < n; ++i) {
        stream.fill_point(i, point);
        const double v = f.eval(point);
        signed_f[i] = v;
        abs_f[i] = std::abs(v);
        grad[i] = f.grad_norm(point);
        if (f.lipschitz_bound && grad[i] > *f.lipschitz_bound + 1e-9) {
            throw std::logic_error("sample_rearrangement: gradient exceeds declared bound");
        }
    }

    // |f|-descending order; plateaus keep sample order
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return abs_f[a] > abs_f[b]; });

    std::vector<double> f_sorted(n), grad_in_order(n);
    for (std::size_t i = 0; i < n; ++i) {
        f_sorted[i] = abs_f[order[i]];
        grad_in_order[i] = grad[order[i]];
    }

    std::vector<double> grad_sorted = grad;
    std::sort(grad_sorted.begin(), grad_sorted.end(), std::greater<>());
    EmpiricalRearrangement out{f.id,
                               n,
                               seed,
                               QuantileFunction::from_sorted_samples(f_sorted),
                               QuantileFunction::from_sorted_samples(grad_sorted),
                               grad_in_order,
                               {},
                               0.0,
                               0.0,
                               0.0,
                               0.0,
                               0.0,
                               0.0,
                               0.0,
                               {}};

    out.cumulative_gradient.resize(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc = acc + grad_in_order[i] * inv_n;  // plain recurrence, kept reproducible
        out.cumulative_gradient[i] = acc;
    }

    std::vector<double> med = signed_f;
    std::nth_element(med.begin(), med.begin() + n / 2, med.end());
    if (n % 2 == 1) {
        out.median_signed = med[n / 2];
    } else {
        const double hi = med[n / 2];
        const double lo = *std::max_element(med.begin(), med.begin() + n / 2);
        out.median_signed = 0.5 * (lo + hi);
    }

    double mg = 0.0, maxg = 0.0, maf = 0.0, mad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mg += grad[i];
        maxg = std::max(maxg, grad[i]);
        maf += abs_f[i];
        mad += std::abs(signed_f[i] - out.median_signed);
    }
    mg *= inv_n;
    maf *= inv_n;
    mad *= inv_n;
    double var = 0.0, var_dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        var += (grad[i] - mg) * (grad[i] - mg);
        const double d = std::abs(signed_f[i] - out.median_signed) - mad;
        var_dev += d * d;
    }
    out.mean_grad = mg;
    out.sd_grad = std::sqrt(var * inv_n);
    out.max_grad = maxg;
    out.mean_abs_f = maf;
    out.mad_about_median = mad;
    out.sd_abs_dev = std::sqrt(var_dev * inv_n);
    out.lipschitz = f.lipschitz_bound;
    return out;
}

TestFunction gaussian_symmetrization(const QuantileFunction& f_star,
                                     const std::string& source_id) {
    if (f_star.interpolation() != Interp::linear) {
        throw std::invalid_argument(
            "gaussian_symmetrization: step-only f* rejected for gradient evaluation; "
            "rebuild_linear first");
    }
    auto q = std::make_shared<const QuantileFunction>(f_star);
    TestFunction out;
    out.id = "sym(" + source_id + ")";
    out.dim = 1;
    out.eval = [q](std::span<const double> x) {
        const double t = std::min(gauss_cdf(x[0]), q->knot(q->cells()));
        return (*q)(t);
    };
    out.grad_norm = [q](std::span<const double> x) {
        const double t = gauss_cdf(x[0]);
        const double tmax = q->knot(q->cells());
        if (t >= tmax) return 0.0;
        // slope of the linear cell that contains t
        const auto& knots = q->knots();
        const auto it = std::upper_bound(knots.begin() + 1, knots.end(), t);
        const std::size_t cell = static_cast<std::size_t>(it - knots.begin());
        double va, vb, ta, tb;
        if (cell <= 1) {
            if (q->cells() < 2) return 0.0;
            ta = 0.0;
            va = q->value_at_zero();
            tb = q->knot(1);
            vb = q->value(0);
        } else {
            ta = q->knot(cell - 1);
            va = q->value(cell - 2);
            tb = q->knot(cell);
            vb = q->value(cell - 1);
        }
        const double slope = std::max(0.0, (va - vb) / (tb - ta));
        // I(Phi(x)) = gauss_density(x) by the inverse identity
        return slope * gauss_density(x[0]);
    };
    return out;
}

TestFunction truncate_function(const TestFunction& f, double t1, double t2) {
    if (!(t1 >= 0.0) || !(t2 > t1)) {
        throw std::invalid_argument("truncate_function: need 0 <= t1 < t2");
    }
    TestFunction out;
    out.id = f.id + "|trunc";
    out.dim = f.dim;
    auto base_eval = f.eval;
    auto base_grad = f.grad_norm;
    out.eval = [base_eval, t1, t2](std::span<const double> x) {
        const double v = std::abs(base_eval(x));
        return std::min(std::max(v - t1, 0.0), t2 - t1);
    };
    out.grad_norm = [base_eval, base_grad, t1, t2](std::span<const double> x) {
        const double v = std::abs(base_eval(x));
        return (v > t1 && v <= t2) ? base_grad(x) : 0.0;
    };
    if (f.lipschitz_bound) out.lipschitz_bound = f.lipschitz_bound;
    return out;
}

TestFunction constant_function(double c, int dim) {
    if (c < 0.0) throw std::invalid_argument("constant_function: c must be >= 0");
    TestFunction out;
    out.id = "F0";
    out.dim = dim;
    out.eval = [c](std::span<const double>) { return c; };
    out.grad_norm = [](std::span<const double>) { return 0.0; };
    out.lipschitz_bound = 0.0;
    out.analytic_rearrangement = [c](double) { return c; };
    return out;
}

TestFunction family_linear(double a, double b, int dim) {
    TestFunction out;
    out.id = "F1";
    out.dim = dim;
    out.eval = [a, b](std::span<const double> x) { return a * x[0] + b; };
    const double mag = std::abs(a);
    out.grad_norm = [mag](std::span<const double>) { return mag; };
    out.lipschitz_bound = mag;
    if (b == 0.0 && a != 0.0) {
        out.analytic_rearrangement = [mag](double s) {
            return mag * gauss_quantile(1.0 - 0.5 * s);
        };
    }
    return out;
}

TestFunction family_exponential(double a, int dim) {
    if (a <= 0.0) throw std::invalid_argument("family_exponential: need a > 0");
    TestFunction out;
    out.id = "F2";
    out.dim = dim;
    out.eval = [a](std::span<const double> x) { return std::exp(a * x[0]); };
    out.grad_norm = [a](std::span<const double> x) { return a * std::exp(a * x[0]); };
    out.analytic_rearrangement = [a](double s) { return std::exp(a * gauss_quantile(1.0 - s)); };
    return out;
}

TestFunction family_ramp(double r, double delta, int dim) {
    if (delta <= 0.0) throw std::invalid_argument("family_ramp: need delta > 0");
    TestFunction out;
    out.id = "F3";
    out.dim = dim;
    out.eval = [r, delta](std::span<const double> x) {
        return std::clamp((r + delta - x[0]) / delta, 0.0, 1.0);
    };
    out.grad_norm = [r, delta](std::span<const double> x) {
        return (x[0] > r && x[0] < r + delta) ? 1.0 / delta : 0.0;
    };
    out.lipschitz_bound = 1.0 / delta;
    out.analytic_rearrangement = [r, delta](double s) {
        const double lo = gauss_cdf(r);
        const double hi = gauss_cdf(r + delta);
        if (s <= lo) return 1.0;
        if (s >= hi) return 0.0;
        return 1.0 - (gauss_quantile(s) - r) / delta;
    };
    return out;
}

namespace {

double squared_norm(std::span<const double> x) {
    double acc = 0.0;
    for (double xi : x) acc += xi * xi;
    return acc;
}

}  // namespace

TestFunction family_radial_bump(double sigma, int dim) {
    if (sigma <= 0.0) throw std::invalid_argument("family_radial_bump: need sigma > 0");
    TestFunction out;
    out.id = "F4";
    out.dim = dim;
    const double s2 = sigma * sigma;
    out.eval = [s2](std::span<const double> x) { return std::exp(-0.5 * squared_norm(x) / s2); };
    out.grad_norm = [s2](std::span<const double> x) {
        const double r2 = squared_norm(x);
        return std::sqrt(r2) / s2 * std::exp(-0.5 * r2 / s2);
    };
    out.lipschitz_bound = std::exp(-0.5) / sigma;
    if (dim == 1) {
        out.analytic_rearrangement = [s2](double s) {
            const double u = gauss_quantile(0.5 * (1.0 + s));
            return std::exp(-0.5 * u * u / s2);
        };
    } else if (dim == 2) {
        out.analytic_rearrangement = [s2](double s) { return std::pow(1.0 - s, 1.0 / s2); };
    }
    return out;
}

TestFunction family_norm(int dim) {
    TestFunction out;
    out.id = "F5";
    out.dim = dim;
    out.eval = [](std::span<const double> x) { return std::sqrt(squared_norm(x)); };
    out.grad_norm = [](std::span<const double> x) {
        return squared_norm(x) > 0.0 ? 1.0 : 0.0;
    };
    out.lipschitz_bound = 1.0;
    if (dim == 1) {
        out.analytic_rearrangement = [](double s) { return gauss_quantile(1.0 - 0.5 * s); };
    } else if (dim == 2) {
        out.analytic_rearrangement = [](double s) { return std::sqrt(2.0 * std::log(1.0 / s)); };
    }
    return out;
}

TestFunction family_tensor_ramp(double delta, int dim) {
    if (delta <= 0.0) throw std::invalid_argument("family_tensor_ramp: need delta > 0");
    TestFunction out;
    out.id = "F6";
    out.dim = dim;
    auto ramp = [delta](double u) { return std::clamp((delta - u) / delta, 0.0, 1.0); };
    out.eval = [ramp](std::span<const double> x) {
        double prod = 1.0;
        for (double xi : x) prod *= ramp(xi);
        return prod;
    };
    out.grad_norm = [ramp, delta](std::span<const double> x) {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!(x[i] > 0.0 && x[i] < delta)) continue;
            double others = 1.0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (j != i) others *= ramp(x[j]);
            }
            acc += (others / delta) * (others / delta);
        }
        return std::sqrt(acc);
    };
    out.lipschitz_bound = std::sqrt(static_cast<double>(dim)) / delta;
    return out;
}

TestFunction family_random_bumps(int n_bumps, std::uint64_t family_seed, int dim) {
    if (n_bumps < 1) throw std::invalid_argument("family_random_bumps: need n_bumps >= 1");
    GaussianStream params(family_seed);
    struct Bump {
        double weight;
        double sigma;
        std::vector<double> center;
    };
    auto bumps = std::make_shared<std::vector<Bump>>();
    std::uint64_t ctr = 0;
    double lip = 0.0;
    for (int k = 0; k < n_bumps; ++k) {
        Bump b;
        b.weight = 0.5 + params.uniform(ctr++);             // in (0.5, 1.5)
        b.sigma = 0.7 + 0.6 * params.uniform(ctr++);        // in (0.7, 1.3)
        b.center.resize(static_cast<std::size_t>(dim));
        for (auto& c : b.center) c = 4.0 * params.uniform(ctr++) - 2.0;  // in (-2, 2)
        lip += b.weight * std::exp(-0.5) / b.sigma;
        bumps->push_back(std::move(b));
    }
    TestFunction out;
    out.id = "F7";
    out.dim = dim;
    out.eval = [bumps](std::span<const double> x) {
        double acc = 0.0;
        for (const auto& b : *bumps) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double d = x[j] - b.center[j];
                d2 += d * d;
            }
            acc += b.weight * std::exp(-0.5 * d2 / (b.sigma * b.sigma));
        }
        return acc;
    };
    out.grad_norm = [bumps](std::span<const double> x) {
        std::vector<double> g(x.size(), 0.0);
        for (const auto& b : *bumps) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double d = x[j] - b.center[j];
                d2 += d * d;
            }
            const double s2 = b.sigma * b.sigma;
            const double scale = b.weight * std::exp(-0.5 * d2 / s2) / s2;
            for (std::size_t j = 0; j < x.size(); ++j) {
                g[j] -= scale * (x[j] - b.center[j]);
            }
        }
        double acc = 0.0;
        for (double gj : g) acc += gj * gj;
        return std::sqrt(acc);
    };
    out.lipschitz_bound = lip;
    return out;
}

FamilyCatalog FamilyCatalog::with_defaults() {
    FamilyCatalog cat;
    cat.register_family({"F0", "constant c=1", [](int d) { return constant_function(1.0, d); }});
    cat.register_family({"F1", "linear a*x1, a=1", [](int d) { return family_linear(1.0, 0.0, d); }});
    cat.register_family(
        {"F2", "exponential exp(a*x1), a=0.5", [](int d) { return family_exponential(0.5, d); }});
    cat.register_family(
        {"F3", "half-space ramp r=0, delta=0.2", [](int d) { return family_ramp(0.0, 0.2, d); }});
    cat.register_family(
        {"F4", "radial bump sigma=1", [](int d) { return family_radial_bump(1.0, d); }});
    cat.register_family({"F5", "norm |x|", [](int d) { return family_norm(d); }});
    cat.register_family(
        {"F6", "tensor ramp delta=0.3", [](int d) { return family_tensor_ramp(0.3, d); }});
    cat.register_family({"F7", "three seeded bumps",
                         [](int d) { return family_random_bumps(3, 7202026, d); }});
    return cat;
}

void FamilyCatalog::register_family(Entry entry) {
    if (entry.id.empty() || !entry.make) {
        throw std::invalid_argument("FamilyCatalog: malformed entry");
    }
    if (entries_.count(entry.id)) {
        throw std::invalid_argument("FamilyCatalog: duplicate id " + entry.id);
    }
    entries_.emplace(entry.id, std::move(entry));
}

bool FamilyCatalog::contains(const std::string& id) const { return entries_.count(id) > 0; }

const FamilyCatalog::Entry& FamilyCatalog::find(const std::string& id) const {
    const auto it = entries_.find(id);
    if (it == entries_.end()) {
        throw std::invalid_argument("FamilyCatalog: unknown family id " + id);
    }
    return it->second;
}

std::vector<std::string> FamilyCatalog::ids() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [id, _] : entries_) out.push_back(id);
    return out;  // map iteration is already sorted
}

std::vector<TestFunction> family_catalog() {
    std::vector<TestFunction> out;
    const FamilyCatalog cat = FamilyCatalog::with_defaults();
    for (const auto& id : cat.ids()) out.push_back(cat.find(id).make(1));
    return out;
}

}  // namespace isosym
