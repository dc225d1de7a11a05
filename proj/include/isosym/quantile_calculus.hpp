#pragma once

/**
 * @file quantile_calculus.hpp
 * @brief Decreasing rearrangements as grid functions on (0,1] and the
 *        operators applied to them: running averages, oscillation,
 *        derivatives, truncation, Hardy operators and weighted norms.
 *
 * A QuantileFunction is a grid function over breakpoints
 * 0 = t_0 < t_1 < ... < t_M <= 1. With step interpolation the value v_i is
 * taken on the cell (t_{i-1}, t_i] (right-continuous, the empirical
 * order-statistic convention). With linear interpolation v_i is the value at
 * the node t_i and the first segment is extended linearly over (0, t_1], so
 * closed-form inputs sampled at the nodes integrate exactly.
 *
 * Objects are immutable after construction; all operations are pure.
 */

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace isosym {

enum class Interp { step, linear };

class QuantileFunction {
  public:
    /// Step function on cells (knots[i-1], knots[i]]; values.size()+1 == knots.size().
    static QuantileFunction step_fn(std::vector<double> knots, std::vector<double> values);

    /// Piecewise-linear through the nodes (knots[i], values[i-1]), i >= 1.
    static QuantileFunction linear_fn(std::vector<double> knots, std::vector<double> values);

    /// Empirical rearrangement: step function on the uniform grid i/N from
    /// values already sorted in nonincreasing order.
    static QuantileFunction from_sorted_samples(std::vector<double> descending);

    /// Sample a callable at the interior nodes of `knots`, linear interpolation.
    static QuantileFunction sample(const std::function<double(double)>& f,
                                   std::vector<double> knots);

    std::size_t cells() const { return values_.size(); }
    double knot(std::size_t i) const { return knots_[i]; }
    double node(std::size_t i) const { return knots_[i + 1]; }
    double value(std::size_t i) const { return values_[i]; }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }
    Interp interpolation() const { return interp_; }

    /// Evaluate the representation at t in (0, t_M]. Step: cell value.
    /// Linear: node interpolation, first segment extended over (0, t_1].
    double operator()(double t) const;

    /// Limit of the representation at 0+ (step: v_1; linear: extrapolation).
    double value_at_zero() const;

    /// Largest stored value.
    double max_value() const;

    /// Exact integral of the representation over [a, b] in [0, t_M].
    double integral(double a, double b) const;

    bool nonincreasing() const { return monotone_; }

    /// Monotone piecewise-linear rebuild from a step representation by
    /// window-averaged blocks; nodes at block midpoints.
    QuantileFunction rebuild_linear(std::size_t window) const;

    /// Two-column CSV (t,value), one row per node.
    void write_csv(std::ostream& os) const;

  private:
    QuantileFunction(std::vector<double> knots, std::vector<double> values, Interp interp);

    double eval_on_cell(std::size_t cell, double t) const;

    std::vector<double> knots_;   // size M+1, knots_[0] == 0
    std::vector<double> values_;  // size M
    Interp interp_;
    bool monotone_;
};

/// Norm selector for the rearrangement-invariant norms used here.
struct NormTag {
    enum class Kind { Lp, Linf, LS_Lp, LS_Linf, LlogHalfInfInf, LpLogHalf };
    Kind kind;
    double p = 1.0;

    static NormTag lp(double p);
    static NormTag linf();
    static NormTag ls_lp(double p);
    static NormTag ls_linf();
    static NormTag llog_half_inf_inf();
    static NormTag lp_log_half(double p);
};

/// f**(t) = (1/t) int_0^t f, node-exact on the representation. Requires
/// nonincreasing input; output is nonincreasing with f** >= f* pointwise.
QuantileFunction maximal_average(const QuantileFunction& q);

/// t -> f**(t) - f*(t); identically zero for constants (computed in shifted
/// form so constants cancel exactly), nonnegative everywhere.
QuantileFunction oscillation(const QuantileFunction& q);

/// Nonnegative estimate of (-f*)' by block difference quotients over `window`
/// cells, returned as a step function on the block cells. Exact slopes for
/// piecewise-linear input with window 1.
QuantileFunction neg_derivative(const QuantileFunction& q, std::size_t window);

/// s -> min(max(f(s) - t1, 0), t2 - t1). t2 may be +infinity.
QuantileFunction quantile_truncate(const QuantileFunction& q, double t1, double t2);

/// Hardy averaging operator P f(t) = (1/t) int_0^t f(s) ds (any input).
QuantileFunction hardy_P(const QuantileFunction& q);

/// Q f(t) = int_t^1 f(s) ds / s, exact per cell.
QuantileFunction hardy_Q(const QuantileFunction& q);

/// Qtilde f(t) = (1+log 1/t)^{1/2} int_t^1 f(s) ds / (s (1+log 1/s)^{1/2}).
QuantileFunction hardy_Qtilde(const QuantileFunction& q);

/// Norm evaluation. For the LS tags the argument is interpreted as f* and the
/// operator forms (f** - f*) I(t)/t internally. Weighted integrals use
/// 8-point Gauss-Legendre per cell against the exact representation.
double norm(const QuantileFunction& q, const NormTag& tag);

/// Knot vector {0} + log-uniform nodes from t_min to 1 (`cells` nodes).
std::vector<double> log_uniform_knots(double t_min, std::size_t cells);

/// Knot vector {0, 1/N, 2/N, ..., 1}.
std::vector<double> uniform_knots(std::size_t n);

}  // namespace isosym
