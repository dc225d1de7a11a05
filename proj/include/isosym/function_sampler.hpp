#pragma once

/**
 * @file function_sampler.hpp
 * @brief Analytic and seeded-random test function families on R^n, empirical
 *        rearrangements of f and |grad f| under the Gaussian measure, and the
 *        one-dimensional monotone symmetrization.
 */

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isosym/quantile_calculus.hpp"

namespace isosym {

/// An n-dimensional test function with gradient-norm evaluation.
struct TestFunction {
    std::string id;
    int dim = 1;
    std::function<double(std::span<const double>)> eval;
    std::function<double(std::span<const double>)> grad_norm;
    std::optional<double> lipschitz_bound;
    /// Closed-form rearrangement of |f| when known, as s -> f*(s).
    std::function<double(double)> analytic_rearrangement;
};

/// Monte Carlo rearrangement data for one (function, N, seed) draw.
struct EmpiricalRearrangement {
    std::string source;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;

    QuantileFunction f_star;     ///< step rearrangement of |f| on the uniform grid
    QuantileFunction grad_star;  ///< step rearrangement of |grad f|

    /// |grad f| reordered by |f| descending (the order f_star uses).
    std::vector<double> grad_by_f_order;
    /// G(i/N) built by the plain prefix recurrence over grad_by_f_order/N.
    std::vector<double> cumulative_gradient;

    double median_signed = 0.0;  ///< empirical median of the signed values
    double mean_grad = 0.0;
    double sd_grad = 0.0;
    double max_grad = 0.0;
    double mean_abs_f = 0.0;
    double mad_about_median = 0.0;  ///< mean |f - median_signed|
    double sd_abs_dev = 0.0;        ///< sample sd of |f - median_signed|
    std::optional<double> lipschitz;  ///< copied from the source function

    /// G at mass i/N with G(0) = 0.
    double cumulative_at(std::size_t i) const {
        return i == 0 ? 0.0 : cumulative_gradient[i - 1];
    }

    const std::optional<double>& lipschitz_bound() const { return lipschitz; }

    /// Declared Lipschitz bound when present, otherwise the sampled sup.
    double lipschitz_like() const { return lipschitz ? *lipschitz : max_grad; }
};

/// Draw N Gaussian points with the counter-based stream, evaluate |f| and
/// |grad f|, and build the empirical rearrangements. Requires N >= 1000.
EmpiricalRearrangement sample_rearrangement(const TestFunction& f, std::size_t n_samples,
                                            std::uint64_t seed);

/// Monotone 1-D substitute x -> f*(Phi(x)) with the chain-rule gradient
/// (-f*)'(Phi(x)) I(Phi(x)). Requires a piecewise-linear f*; rebuild step
/// representations with QuantileFunction::rebuild_linear first.
TestFunction gaussian_symmetrization(const QuantileFunction& f_star,
                                     const std::string& source_id = "fstar");

/// Level truncation of |f|: min(max(|f|-t1,0), t2-t1), with the gradient
/// masked to {t1 < |f| <= t2}. The mask multiplies the parent gradient
/// evaluation, so restriction is exact sample by sample.
TestFunction truncate_function(const TestFunction& f, double t1, double t2);

TestFunction constant_function(double c, int dim);
TestFunction family_linear(double a, double b, int dim);          // F1
TestFunction family_exponential(double a, int dim);               // F2
TestFunction family_ramp(double r, double delta, int dim);        // F3
TestFunction family_radial_bump(double sigma, int dim);           // F4
TestFunction family_norm(int dim);                                // F5
TestFunction family_tensor_ramp(double delta, int dim);           // F6
TestFunction family_random_bumps(int n_bumps, std::uint64_t family_seed, int dim);  // F7

/// Registry mapping family ids to per-dimension constructors.
class FamilyCatalog {
  public:
    struct Entry {
        std::string id;
        std::string description;
        std::function<TestFunction(int dim)> make;
    };

    /// Catalog preloaded with the default F0..F7 instances.
    static FamilyCatalog with_defaults();

    void register_family(Entry entry);
    bool contains(const std::string& id) const;
    const Entry& find(const std::string& id) const;
    std::vector<std::string> ids() const;  // sorted

  private:
    std::map<std::string, Entry> entries_;
};

/// Default family instances (every catalog id at dim 1).
std::vector<TestFunction> family_catalog();

/// Supported dimensions for the default suite.
inline const std::vector<int>& default_dims() {
    static const std::vector<int> dims{1, 2, 4, 8};
    return dims;
}

}  // namespace isosym
