#include "isosym/quantile_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "isosym/gaussian_core.hpp"

namespace isosym {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGLNode[8] = {
    -0.9602898564975362316836, -0.7966664774136267395916, -0.5255324099163289858177,
    -0.1834346424956498049395, 0.1834346424956498049395,  0.5255324099163289858177,
    0.7966664774136267395916,  0.9602898564975362316836};
constexpr double kGLWeight[8] = {
    0.1012285362903762591525, 0.2223810344533744705444, 0.3137066458778872873380,
    0.3626837833783619829652, 0.3626837833783619829652, 0.3137066458778872873380,
    0.2223810344533744705444, 0.1012285362903762591525};

template <typename F>
double gl8(double a, double b, F&& f) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int k = 0; k < 8; ++k) {
        acc += kGLWeight[k] * f(mid + half * kGLNode[k]);
    }
    return acc * half;
}

bool is_nonincreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[i - 1]) return false;
    }
    return true;
}

void validate_grid(const std::vector<double>& knots, const std::vector<double>& values) {
    if (knots.size() < 2 || values.size() + 1 != knots.size()) {
        throw std::invalid_argument("QuantileFunction: need knots.size() == values.size()+1 >= 2");
    }
    if (knots.front() != 0.0) {
        throw std::invalid_argument("QuantileFunction: first breakpoint must be 0");
    }
    if (knots.back() > 1.0) {
        throw std::invalid_argument("QuantileFunction: breakpoints must lie in (0,1]");
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i] > knots[i - 1])) {
            throw std::invalid_argument("QuantileFunction: breakpoints must increase strictly");
        }
    }
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("QuantileFunction: values must be finite and nonnegative");
        }
    }
}

void require_monotone(const QuantileFunction& q, const char* op) {
    if (!q.nonincreasing()) {
        throw std::invalid_argument(std::string(op) + ": input must be nonincreasing");
    }
}

}  // namespace

QuantileFunction::QuantileFunction(std::vector<double> knots, std::vector<double> values,
                                   Interp interp)
    : knots_(std::move(knots)), values_(std::move(values)), interp_(interp),
      monotone_(is_nonincreasing(values_)) {}

QuantileFunction QuantileFunction::step_fn(std::vector<double> knots,
                                           std::vector<double> values) {
    validate_grid(knots, values);
    return QuantileFunction(std::move(knots), std::move(values), Interp::step);
}

QuantileFunction QuantileFunction::linear_fn(std::vector<double> knots,
                                             std::vector<double> values) {
    validate_grid(knots, values);
    return QuantileFunction(std::move(knots), std::move(values), Interp::linear);
}

QuantileFunction QuantileFunction::from_sorted_samples(std::vector<double> descending) {
    const std::size_t n = descending.size();
    if (n == 0) throw std::invalid_argument("from_sorted_samples: empty sample");
    std::vector<double> knots(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        knots[i] = static_cast<double>(i) / static_cast<double>(n);
    }
    validate_grid(knots, descending);
    if (!is_nonincreasing(descending)) {
        throw std::invalid_argument("from_sorted_samples: values must be sorted descending");
    }
    return QuantileFunction(std::move(knots), std::move(descending), Interp::step);
}

QuantileFunction QuantileFunction::sample(const std::function<double(double)>& f,
                                          std::vector<double> knots) {
    std::vector<double> values(knots.size() - 1);
    for (std::size_t i = 1; i < knots.size(); ++i) {
        values[i - 1] = f(knots[i]);
    }
    validate_grid(knots, values);
    return QuantileFunction(std::move(knots), std::move(values), Interp::linear);
}

double QuantileFunction::value_at_zero() const {
    if (interp_ == Interp::step || values_.size() < 2) return values_.front();
    // extend the first segment's line back to t = 0
    const double t1 = knots_[1], t2 = knots_[2];
    const double slope = (values_[1] - values_[0]) / (t2 - t1);
    return std::max(0.0, values_[0] - slope * t1);
}

double QuantileFunction::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

double QuantileFunction::operator()(double t) const {
    if (!(t > 0.0 && t <= knots_.back())) {
        throw std::invalid_argument("QuantileFunction: evaluation point outside (0, t_M]");
    }
    // first cell index with knot >= t
    const auto it = std::lower_bound(knots_.begin() + 1, knots_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - knots_.begin());  // cell index in [1, M]
    if (interp_ == Interp::step) return values_[i - 1];
    const double tb = knots_[i], vb = values_[i - 1];
    double ta, va;
    if (i == 1) {
        if (values_.size() < 2) return values_[0];
        ta = 0.0;
        va = value_at_zero();
    } else {
        ta = knots_[i - 1];
        va = values_[i - 2];
    }
    const double w = (t - ta) / (tb - ta);
    return va + w * (vb - va);
}

double QuantileFunction::integral(double a, double b) const {
    if (!(a >= 0.0 && b >= a && b <= knots_.back() + 1e-15)) {
        throw std::invalid_argument("QuantileFunction::integral: bad interval");
    }
    b = std::min(b, knots_.back());
    double acc = 0.0;
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        const double lo = std::max(a, knots_[i - 1]);
        const double hi = std::min(b, knots_[i]);
        if (hi <= lo) continue;
        if (interp_ == Interp::step) {
            acc += values_[i - 1] * (hi - lo);
        } else {
            acc += 0.5 * (eval_on_cell(i, lo) + eval_on_cell(i, hi)) * (hi - lo);
        }
    }
    return acc;
}

double QuantileFunction::eval_on_cell(std::size_t cell, double t) const {
    const double tb = knots_[cell], vb = values_[cell - 1];
    double ta, va;
    if (cell == 1) {
        if (values_.size() < 2) return values_[0];
        ta = 0.0;
        va = value_at_zero();
    } else {
        ta = knots_[cell - 1];
        va = values_[cell - 2];
    }
    return va + (t - ta) / (tb - ta) * (vb - va);
}

QuantileFunction QuantileFunction::rebuild_linear(std::size_t window) const {
    if (interp_ == Interp::linear) return *this;
    if (window == 0 || window > cells()) {
        throw std::invalid_argument("rebuild_linear: window must lie in [1, cells]");
    }
    std::vector<double> knots{0.0};
    std::vector<double> nodes;
    for (std::size_t start = 0; start < cells(); start += window) {
        const std::size_t stop = std::min(start + window, cells());
        double mean = 0.0;
        for (std::size_t j = start; j < stop; ++j) mean += values_[j];
        mean /= static_cast<double>(stop - start);
        knots.push_back(0.5 * (knots_[start] + knots_[stop]));
        nodes.push_back(mean);
    }
    // keep the right edge so the support is preserved
    if (knots.back() < knots_.back()) {
        knots.push_back(knots_.back());
        nodes.push_back(values_.back());
    }
    return linear_fn(std::move(knots), std::move(nodes));
}

void QuantileFunction::write_csv(std::ostream& os) const {
    os << "t,value\n";
    char buf[80];
    for (std::size_t i = 0; i < values_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", knots_[i + 1], values_[i]);
        os << buf;
    }
}

NormTag NormTag::lp(double p) {
    if (p < 1.0) throw std::invalid_argument("NormTag: p must be >= 1");
    return NormTag{Kind::Lp, p};
}
NormTag NormTag::linf() { return NormTag{Kind::Linf, 0.0}; }
NormTag NormTag::ls_lp(double p) {
    if (p < 1.0) throw std::invalid_argument("NormTag: p must be >= 1");
    return NormTag{Kind::LS_Lp, p};
}
NormTag NormTag::ls_linf() { return NormTag{Kind::LS_Linf, 0.0}; }
NormTag NormTag::llog_half_inf_inf() { return NormTag{Kind::LlogHalfInfInf, 0.0}; }
NormTag NormTag::lp_log_half(double p) {
    if (p < 1.0) throw std::invalid_argument("NormTag: p must be >= 1");
    return NormTag{Kind::LpLogHalf, p};
}

namespace {

// Running average and oscillation share the shifted accumulation
// f**(t_i) = v_M + (1/t_i) sum_{j<=i} (v_j - v_M) |cell_j|, which makes
// constants cancel exactly instead of up to roundoff.
struct RunningDecomposition {
    std::vector<double> shifted_prefix;  // int_0^{t_i} (f - v_M)
    double base;                         // v_M
};

RunningDecomposition shifted_prefixes(const QuantileFunction& q) {
    const std::size_t m = q.cells();
    RunningDecomposition out;
    out.base = q.value(m - 1);
    out.shifted_prefix.resize(m);
    double acc = 0.0;
    if (q.interpolation() == Interp::step) {
        for (std::size_t i = 0; i < m; ++i) {
            acc += (q.value(i) - out.base) * (q.knot(i + 1) - q.knot(i));
            out.shifted_prefix[i] = acc;
        }
    } else {
        // trapezoid on each segment of the node representation, first cell
        // integrated against the extended line
        double prev_t = 0.0;
        double prev_v = q.value_at_zero();
        for (std::size_t i = 0; i < m; ++i) {
            const double t = q.node(i);
            const double v = q.value(i);
            acc += 0.5 * ((prev_v - out.base) + (v - out.base)) * (t - prev_t);
            out.shifted_prefix[i] = acc;
            prev_t = t;
            prev_v = v;
        }
    }
    return out;
}

QuantileFunction running_average(const QuantileFunction& q, bool clamp_above_input) {
    const auto dec = shifted_prefixes(q);
    const std::size_t m = q.cells();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        out[i] = dec.base + dec.shifted_prefix[i] / q.node(i);
        if (clamp_above_input) out[i] = std::max(out[i], q.value(i));
    }
    if (clamp_above_input) {
        for (std::size_t i = 1; i < m; ++i) out[i] = std::min(out[i], out[i - 1]);
    }
    return QuantileFunction::linear_fn(q.knots(), std::move(out));
}

}  // namespace

QuantileFunction maximal_average(const QuantileFunction& q) {
    require_monotone(q, "maximal_average");
    return running_average(q, true);
}

QuantileFunction oscillation(const QuantileFunction& q) {
    require_monotone(q, "oscillation");
    const auto dec = shifted_prefixes(q);
    const std::size_t m = q.cells();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double shifted_value = q.value(i) - dec.base;
        out[i] = std::max(0.0, dec.shifted_prefix[i] / q.node(i) - shifted_value);
    }
    return QuantileFunction::linear_fn(q.knots(), std::move(out));
}

QuantileFunction neg_derivative(const QuantileFunction& q, std::size_t window) {
    require_monotone(q, "neg_derivative");
    if (window == 0) throw std::invalid_argument("neg_derivative: window must be >= 1");
    if (window >= q.cells()) {
        throw std::invalid_argument("neg_derivative: window exceeds cell count");
    }
    // retained nodes t_1, t_{1+w}, ..., t_M; slope on each block
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < q.cells(); i += window) keep.push_back(i);
    if (keep.back() != q.cells() - 1) keep.push_back(q.cells() - 1);

    std::vector<double> knots{0.0, q.node(keep[0])};
    std::vector<double> slopes;
    std::vector<double> first;
    for (std::size_t k = 1; k < keep.size(); ++k) {
        const double dv = q.value(keep[k - 1]) - q.value(keep[k]);
        const double dt = q.node(keep[k]) - q.node(keep[k - 1]);
        knots.push_back(q.node(keep[k]));
        slopes.push_back(std::max(0.0, dv / dt));
    }
    // first cell (0, t_1]: continue the first block's slope
    first.push_back(slopes.empty() ? 0.0 : slopes.front());
    first.insert(first.end(), slopes.begin(), slopes.end());
    return QuantileFunction::step_fn(std::move(knots), std::move(first));
}

QuantileFunction quantile_truncate(const QuantileFunction& q, double t1, double t2) {
    if (!(t1 >= 0.0) || !(t2 > t1)) {
        throw std::invalid_argument("quantile_truncate: need 0 <= t1 < t2");
    }
    const double cap = t2 - t1;
    std::vector<double> out(q.cells());
    for (std::size_t i = 0; i < q.cells(); ++i) {
        out[i] = std::min(std::max(q.value(i) - t1, 0.0), cap);
    }
    return q.interpolation() == Interp::step
               ? QuantileFunction::step_fn(q.knots(), std::move(out))
               : QuantileFunction::linear_fn(q.knots(), std::move(out));
}

QuantileFunction hardy_P(const QuantileFunction& q) {
    return running_average(q, q.nonincreasing());
}

namespace {

// int_a^b f(s)/s ds on one cell, exact for the step and linear representations.
double cell_over_s(const QuantileFunction& q, std::size_t cell, double a, double b) {
    if (q.interpolation() == Interp::step) {
        return q.value(cell - 1) * std::log(b / a);
    }
    // f(s) = va + m (s - ta) => int f/s = m (b-a) + (va - m ta) log(b/a)
    const double tb = q.knot(cell), vb = q.value(cell - 1);
    const double ta = (cell == 1) ? 0.0 : q.knot(cell - 1);
    const double va = (cell == 1) ? q.value_at_zero()
                                  : q.value(cell - 2);
    const double m = (vb - va) / (tb - ta);
    return m * (b - a) + (va - m * ta) * std::log(b / a);
}

}  // namespace

QuantileFunction hardy_Q(const QuantileFunction& q) {
    const std::size_t m = q.cells();
    std::vector<double> out(m, 0.0);
    double acc = 0.0;  // int_{t_i}^{t_M} f/s, accumulated from the right
    out[m - 1] = 0.0;
    for (std::size_t i = m - 1; i >= 1; --i) {
        acc += cell_over_s(q, i + 1, q.knot(i), q.knot(i + 1));
        out[i - 1] = acc;
    }
    return QuantileFunction::linear_fn(q.knots(), std::move(out));
}

QuantileFunction hardy_Qtilde(const QuantileFunction& q) {
    const std::size_t m = q.cells();
    auto weight = [](double s) { return 1.0 / (s * std::sqrt(1.0 + std::log(1.0 / s))); };
    std::vector<double> inner(m, 0.0);
    double acc = 0.0;
    for (std::size_t i = m - 1; i >= 1; --i) {
        const double a = q.knot(i), b = q.knot(i + 1);
        if (q.interpolation() == Interp::step) {
            // exact: int_a^b ds/(s sqrt(1+log 1/s)) = 2(sqrt(1+log 1/a) - sqrt(1+log 1/b))
            const double ua = std::sqrt(1.0 + std::log(1.0 / a));
            const double ub = std::sqrt(1.0 + std::log(1.0 / b));
            acc += q.value(i) * 2.0 * (ua - ub);
        } else {
            acc += gl8(a, b, [&](double s) { return q(s) * weight(s); });
        }
        inner[i - 1] = acc;
    }
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        out[i] = std::sqrt(1.0 + std::log(1.0 / q.node(i))) * inner[i];
    }
    return QuantileFunction::linear_fn(q.knots(), std::move(out));
}

namespace {

// Exact int_a^b f^p over one cell of the representation.
double cell_power_integral(const QuantileFunction& q, std::size_t cell, double p) {
    const double a = q.knot(cell - 1), b = q.knot(cell);
    if (q.interpolation() == Interp::step) {
        return std::pow(q.value(cell - 1), p) * (b - a);
    }
    const double vb = q.value(cell - 1);
    const double va = (cell == 1) ? q.value_at_zero() : q.value(cell - 2);
    if (va == vb) return std::pow(va, p) * (b - a);
    // int of a linear ramp: (b-a) (vb^{p+1} - va^{p+1}) / ((p+1)(vb - va))
    const double num = std::pow(vb, p + 1.0) - std::pow(va, p + 1.0);
    return (b - a) * num / ((p + 1.0) * (vb - va));
}

// int_0^{t_M} g(t)^p w(t) dt with g the stored representation and w a smooth
// weight, 8-point Gauss-Legendre per cell.
template <typename W>
double weighted_power_integral(const QuantileFunction& g, double p, W&& w) {
    double acc = 0.0;
    for (std::size_t cell = 1; cell <= g.cells(); ++cell) {
        const double a = g.knot(cell - 1), b = g.knot(cell);
        acc += gl8(a, b, [&](double t) {
            const double v = std::max(0.0, g(t));
            return std::pow(v, p) * w(t);
        });
    }
    return acc;
}

double sup_over_nodes(const QuantileFunction& g, const std::function<double(double)>& w) {
    double best = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i) {
        best = std::max(best, g.value(i) * w(g.node(i)));
    }
    return best;
}

}  // namespace

double norm(const QuantileFunction& q, const NormTag& tag) {
    switch (tag.kind) {
        case NormTag::Kind::Lp: {
            double acc = 0.0;
            for (std::size_t cell = 1; cell <= q.cells(); ++cell) {
                acc += cell_power_integral(q, cell, tag.p);
            }
            return std::pow(acc, 1.0 / tag.p);
        }
        case NormTag::Kind::Linf:
            return q.max_value();
        case NormTag::Kind::LS_Lp: {
            require_monotone(q, "norm(LS_Lp)");
            const QuantileFunction osc = oscillation(q);
            const double integral = weighted_power_integral(
                osc, tag.p, [&](double t) { return std::pow(iso_profile(t) / t, tag.p); });
            return std::pow(integral, 1.0 / tag.p);
        }
        case NormTag::Kind::LS_Linf: {
            require_monotone(q, "norm(LS_Linf)");
            const QuantileFunction osc = oscillation(q);
            return sup_over_nodes(osc, [](double t) { return iso_profile(t) / t; });
        }
        case NormTag::Kind::LlogHalfInfInf: {
            require_monotone(q, "norm(LlogHalfInfInf)");
            const QuantileFunction osc = oscillation(q);
            return sup_over_nodes(osc, [](double t) { return std::sqrt(std::log(1.0 / t)); });
        }
        case NormTag::Kind::LpLogHalf: {
            const double integral = weighted_power_integral(q, tag.p, [&](double t) {
                return std::pow(std::log(1.0 / t), 0.5 * tag.p);
            });
            return std::pow(integral, 1.0 / tag.p);
        }
    }
    throw std::invalid_argument("norm: unsupported tag");
}

std::vector<double> log_uniform_knots(double t_min, std::size_t cells) {
    if (!(t_min > 0.0 && t_min < 1.0) || cells < 2) {
        throw std::invalid_argument("log_uniform_knots: need 0 < t_min < 1 and cells >= 2");
    }
    std::vector<double> knots(cells + 1);
    knots[0] = 0.0;
    const double log_min = std::log(t_min);
    for (std::size_t i = 0; i < cells; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(cells - 1);
        knots[i + 1] = std::exp(log_min * (1.0 - frac));
    }
    knots[cells] = 1.0;
    return knots;
}

std::vector<double> uniform_knots(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_knots: n must be positive");
    std::vector<double> knots(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        knots[i] = static_cast<double>(i) / static_cast<double>(n);
    }
    return knots;
}

}  // namespace isosym
