#pragma once

/**
 * @file inequality_suite.hpp
 * @brief One verifier per inequality. Each check produces an
 *        InequalityReport with grid-resolved LHS/RHS curves, the worst
 *        (tolerance-normalized) margin and a verdict.
 *
 * Margins follow the RHS - LHS convention, so a nonnegative margin means the
 * inequality holds at that point. Tolerances follow one rule: tol = 3 sigma
 * where sigma estimates the Monte Carlo / order-statistic standard error of
 * the dominant (noisier) side, floored at 1e-9 for quadrature-only checks.
 */

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isosym/function_sampler.hpp"
#include "isosym/quantile_calculus.hpp"

namespace isosym {

enum class Verdict { holds, holds_within_tolerance, violated };

std::string to_string(Verdict v);

struct CurvePoint {
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double tol = 0.0;
};

struct InequalityReport {
    std::string inequality_id;
    std::string function_id;
    int dim = 1;
    std::size_t n_samples = 0;
    std::size_t grid_size = 0;
    std::uint64_t seed = 0;

    std::vector<CurvePoint> curve;
    double lhs_summary = 0.0;
    double rhs_summary = 0.0;
    double worst_margin = 0.0;  ///< rhs - lhs at the worst normalized point
    double tolerance = 0.0;     ///< tolerance at that point
    Verdict verdict = Verdict::holds;
    std::string notes;

    /// For ratio-style reports ("<=" up to an unspecified constant).
    std::optional<double> ratio;
};

/// Shared weight t -> t / I(t); one object serves every dimension.
class OscillationWeight {
  public:
    double operator()(double t) const;
};
const OscillationWeight& oscillation_weight();

// ---- Theorem-level verifiers (Monte Carlo inputs) -------------------------

/// int_0^inf I(lambda_f) ds  <=  E |grad f|.
InequalityReport check_ledoux(const EmpiricalRearrangement& e);

/// (-f*)'(s) I(s) <= d/ds int_{|f|>f*(s)} |grad f|, block-discretized with
/// min(I) over each block; compared on s in [0.02, 0.98].
InequalityReport check_talenti(const EmpiricalRearrangement& e, std::size_t window = 32);

/// f**(t) - f*(t) <= (t/I(t)) |grad f|**(t).
InequalityReport check_oscillation(const EmpiricalRearrangement& e,
                                   std::size_t grid_size = 256);

/// |grad fo|**(s) <= |grad f|**(s) plus the norm form ||(-f*)' I||_X <=
/// ||grad f||_X for X in {L1, L2, Linf}.
InequalityReport check_polya_szego(const EmpiricalRearrangement& e, std::size_t window = 32);

// ---- Functional inequalities ----------------------------------------------

enum class GrossMethod { hermite_x1, radial, monte_carlo };

/// int |f|^2 ln|f| dgamma <= int |grad f|^2 dgamma + ||f||_2^2 ln ||f||_2.
InequalityReport check_gross(const TestFunction& f, GrossMethod method,
                             std::size_t n_samples = 100000, std::uint64_t seed = 1);

/// One-dimensional Lebesgue inequality and its Gaussian-weighted variant with
/// the additive ln(2 pi e^2)/4 term, both by adaptive quadrature on [-12,12].
InequalityReport check_one_dim_ls(const TestFunction& f);

/// E |f - m| <= (2 I(1/2))^{-1} E |grad f| with m the sampled median of f.
InequalityReport check_poincare_l1(const EmpiricalRearrangement& e);

/// Dual construction u*(t) = int_t^1 g ds/I(s) for supp g in (0,1/2];
/// reports ||u*||_{L^p(log)^{p/2}} / ||g||_{L^p} as a ratio.
InequalityReport check_poincare_dual(const QuantileFunction& g, double p);

/// int_0^1 f*(s)^p (log 1/s)^{p/2} ds vs int |grad f|^p + int |f|^p (ratio).
InequalityReport check_feissner(const EmpiricalRearrangement& e, double p);

/// LS(X) norms: exact constant 1 for X = Linf, ratio report for X = L^p.
InequalityReport check_ls_norms(const EmpiricalRearrangement& e, const NormTag& tag);

/// Concentration chain: pointwise bound with constant 2 ||grad f||_inf,
/// square-exponential integrability at lambda ||grad f||_inf^2 = 0.2, and the
/// L_log^1/2(inf,inf) norm against the Lipschitz bound.
InequalityReport check_concentration(const EmpiricalRearrangement& e,
                                     std::size_t grid_size = 256);

// ---- Entropy (abstract-space) checks ---------------------------------------

/// Ent(g) >= -log mu{g != 0} int g dmu on a finite weighted space.
InequalityReport check_entropy(const std::vector<double>& weights,
                               const std::vector<double>& g);

/// Gaussian-line version: entropy lower bound on a half-supported truncation,
/// bit-exact truncation-friendliness of the gradient, and the rearranged
/// display int_0^t (s log(1/s)(-f*)')*(r) dr <= c int_0^t |grad f|*(r) dr
/// with the caller-supplied constant c.
InequalityReport check_entropy(const TestFunction& f, double c, std::size_t n_samples,
                               std::uint64_t seed, std::size_t window = 64);

/// Calibrate the hypothesis constant c = sup Ent / int |grad| over level
/// truncations of f (adjacent and nested quantile levels plus f itself).
double calibrate_entropy_constant(const TestFunction& f, std::size_t n_samples,
                                  std::uint64_t seed, std::size_t n_levels = 24);

// ---- Registry ---------------------------------------------------------------

/// Cache of empirical rearrangements keyed by (family, dim, N, seed).
class SampleCache {
  public:
    const EmpiricalRearrangement& get(const FamilyCatalog& catalog, const std::string& family_id,
                                      int dim, std::size_t n_samples, std::uint64_t seed);
    void clear() { store_.clear(); }

  private:
    std::map<std::string, EmpiricalRearrangement> store_;
};

/// One executable (check, function, dim, seed) tuple.
struct SuiteUnit {
    std::string check_id;
    std::string function_id;
    int dim = 1;
    std::uint64_t seed = 0;
};

/// Registry of verifiers: expansion over config axes and execution.
class InequalitySuite {
  public:
    struct CheckInfo {
        std::string id;
        std::string anchor;  ///< short display tag, e.g. "eq. ledo"
        bool per_family = true;
        bool uses_seed = true;
        std::size_t min_samples = 1000;
    };

    static InequalitySuite with_defaults();

    std::vector<CheckInfo> checks() const;  // sorted by id
    bool contains(const std::string& check_id) const;
    const CheckInfo& info(const std::string& check_id) const;

    /// Expand (checks x families x dims x seeds) using each check's
    /// applicability rule. Intrinsic checks contribute their own units.
    std::vector<SuiteUnit> expand(const std::vector<std::string>& check_ids,
                                  const std::vector<std::string>& family_ids,
                                  const std::vector<int>& dims,
                                  const std::vector<std::uint64_t>& seeds,
                                  const FamilyCatalog& catalog) const;

    InequalityReport run(const SuiteUnit& unit, const FamilyCatalog& catalog,
                         std::size_t n_samples, std::size_t grid_size, SampleCache& cache) const;

  private:
    struct Entry {
        CheckInfo info;
        /// family applicability (per-family checks)
        std::function<bool(const TestFunction&)> applies;
        /// runner for per-family checks
        std::function<InequalityReport(const TestFunction&, const EmpiricalRearrangement&,
                                       std::size_t grid_size)>
            run_family;
        /// intrinsic units and runner (self-contained checks)
        std::function<std::vector<std::string>()> intrinsic_functions;
        std::function<InequalityReport(const std::string& function_id, std::uint64_t seed,
                                       std::size_t n_samples, std::size_t grid_size)>
            run_intrinsic;
    };

    std::map<std::string, Entry> entries_;
};

}  // namespace isosym
