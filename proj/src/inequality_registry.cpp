#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "isosym/gaussian_core.hpp"
#include "isosym/inequality_suite.hpp"

namespace isosym {

const EmpiricalRearrangement& SampleCache::get(const FamilyCatalog& catalog,
                                               const std::string& family_id, int dim,
                                               std::size_t n_samples, std::uint64_t seed) {
    char key[160];
    std::snprintf(key, sizeof key, "%s|%d|%zu|%llu", family_id.c_str(), dim, n_samples,
                  static_cast<unsigned long long>(seed));
    auto it = store_.find(key);
    if (it == store_.end()) {
        const TestFunction f = catalog.find(family_id).make(dim);
        it = store_.emplace(key, sample_rearrangement(f, n_samples, seed)).first;
    }
    return it->second;
}

namespace {

GrossMethod gross_method_for(const std::string& family_id) {
    if (family_id == "F4" || family_id == "F5") return GrossMethod::radial;
    if (family_id == "F6" || family_id == "F7") return GrossMethod::monte_carlo;
    return GrossMethod::hermite_x1;  // functions of x1 only
}

const std::vector<std::pair<std::string, double>>& bump_scales() {
    static const std::vector<std::pair<std::string, double>> scales{
        {"bump(s=0.5)", 0.5}, {"bump(s=0.75)", 0.75}, {"bump(s=1)", 1.0},
        {"bump(s=1.5)", 1.5}, {"bump(s=2)", 2.0}};
    return scales;
}

/// Knot grid with 0.25 and 0.5 as exact nodes for the dual-construction inputs.
std::vector<double> dual_input_knots() {
    std::vector<double> knots = log_uniform_knots(1e-6, 512);
    knots.push_back(0.25);
    knots.push_back(0.5);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    return knots;
}

QuantileFunction dual_input(const std::string& name) {
    auto knots = dual_input_knots();
    std::vector<double> values(knots.size() - 1);
    if (name == "chi(0,1/4)") {
        for (std::size_t i = 1; i < knots.size(); ++i) {
            values[i - 1] = knots[i] <= 0.25 ? 1.0 : 0.0;
        }
    } else if (name == "s^-1/4") {
        for (std::size_t i = 1; i < knots.size(); ++i) {
            values[i - 1] = knots[i] <= 0.5 ? std::pow(knots[i], -0.25) : 0.0;
        }
    } else {
        throw std::invalid_argument("unknown dual input " + name);
    }
    return QuantileFunction::step_fn(std::move(knots), std::move(values));
}

}  // namespace

InequalitySuite InequalitySuite::with_defaults() {
    InequalitySuite suite;
    auto add = [&](Entry e) { suite.entries_.emplace(e.info.id, std::move(e)); };
    auto all_families = [](const TestFunction&) { return true; };
    auto lipschitz_only = [](const TestFunction& f) { return f.lipschitz_bound.has_value(); };

    add({{"ledoux", "eq. ledo", true, true},
         all_families,
         [](const TestFunction&, const EmpiricalRearrangement& e, std::size_t) {
             return check_ledoux(e);
         },
         {},
         {}});
    add({{"talenti", "eq. dosa", true, true, 10000},
         all_families,
         [](const TestFunction&, const EmpiricalRearrangement& e, std::size_t) {
             return check_talenti(e, 32);
         },
         {},
         {}});
    add({{"oscillation", "eq. rea", true, true},
         all_families,
         [](const TestFunction&, const EmpiricalRearrangement& e, std::size_t grid) {
             return check_oscillation(e, grid);
         },
         {},
         {}});
    add({{"polya_szego", "eq. pol/provadas", true, true},
         all_families,
         [](const TestFunction&, const EmpiricalRearrangement& e, std::size_t) {
             return check_polya_szego(e, 32);
         },
         {},
         {}});
    add({{"gross", "eq. launo", true, true},
         all_families,
         [](const TestFunction& f, const EmpiricalRearrangement& e, std::size_t) {
             return check_gross(f, gross_method_for(f.id), e.n_samples, e.seed);
         },
         {},
         {}});
    add({{"one_dim_ls", "eq. level4/estuario", false, false},
         {},
         {},
         [] {
             std::vector<std::string> ids;
             for (const auto& [id, _] : bump_scales()) ids.push_back(id);
             return ids;
         },
         [](const std::string& id, std::uint64_t, std::size_t, std::size_t) {
             for (const auto& [name, scale] : bump_scales()) {
                 if (name == id) return check_one_dim_ls(family_radial_bump(scale, 1));
             }
             throw std::invalid_argument("one_dim_ls: unknown function " + id);
         }});
    add({{"poincare_l1", "eq. poinca1", true, true},
         all_families,
         [](const TestFunction&, const EmpiricalRearrangement& e, std::size_t) {
             return check_poincare_l1(e);
         },
         {},
         {}});
    add({{"poincare_dual", "thm. opti (ii)", false, false},
         {},
         {},
         [] {
             std::vector<std::string> ids;
             for (const char* g : {"chi(0,1/4)", "s^-1/4"}) {
                 for (const char* p : {"p=1", "p=2", "p=4"}) {
                     ids.push_back(std::string(g) + "|" + p);
                 }
             }
             return ids;
         },
         [](const std::string& id, std::uint64_t, std::size_t, std::size_t) {
             const auto bar = id.find('|');
             if (bar == std::string::npos) {
                 throw std::invalid_argument("poincare_dual: malformed function id " + id);
             }
             const std::string g = id.substr(0, bar);
             const double p = std::stod(id.substr(bar + 3));
             return check_poincare_dual(dual_input(g), p);
         }});
    for (double p : {1.0, 2.0, 4.0}) {
        char id[24];
        std::snprintf(id, sizeof id, "feissner_p%g", p);
        add({{id, "eq. launodos", true, true},
             all_families,
             [p](const TestFunction&, const EmpiricalRearrangement& e, std::size_t) {
                 return check_feissner(e, p);
             },
             {},
             {}});
    }
    add({{"ls_linf", "eq. caso-inf", true, true},
         lipschitz_only,
         [](const TestFunction&, const EmpiricalRearrangement& e, std::size_t) {
             return check_ls_norms(e, NormTag::ls_linf());
         },
         {},
         {}});
    add({{"ls_l2", "eq. corres", true, true},
         all_families,
         [](const TestFunction&, const EmpiricalRearrangement& e, std::size_t) {
             return check_ls_norms(e, NormTag::ls_lp(2.0));
         },
         {},
         {}});
    add({{"concentration", "eq. definida", true, true},
         lipschitz_only,
         [](const TestFunction&, const EmpiricalRearrangement& e, std::size_t grid) {
             return check_concentration(e, grid);
         },
         {},
         {}});
    add({{"entropy", "eq. abe/abecd", false, true},
         {},
         {},
         [] { return std::vector<std::string>{"twopoint", "line(F2,a=0.5)"}; },
         [](const std::string& id, std::uint64_t seed, std::size_t n, std::size_t) {
             if (id == "twopoint") {
                 return check_entropy({0.5, 0.5}, {2.0, 0.0});
             }
             if (id == "line(F2,a=0.5)") {
                 const TestFunction f = family_exponential(0.5, 1);
                 const std::size_t n_cal = std::min<std::size_t>(n, 20000);
                 const double c = calibrate_entropy_constant(f, n_cal, 4242);
                 return check_entropy(f, c, n, seed);
             }
             throw std::invalid_argument("entropy: unknown function " + id);
         }});
    return suite;
}

std::vector<InequalitySuite::CheckInfo> InequalitySuite::checks() const {
    std::vector<CheckInfo> out;
    for (const auto& [id, e] : entries_) out.push_back(e.info);
    return out;
}

bool InequalitySuite::contains(const std::string& check_id) const {
    return entries_.count(check_id) > 0;
}

const InequalitySuite::CheckInfo& InequalitySuite::info(const std::string& check_id) const {
    const auto it = entries_.find(check_id);
    if (it == entries_.end()) {
        throw std::invalid_argument("InequalitySuite: unknown check " + check_id);
    }
    return it->second.info;
}

std::vector<SuiteUnit> InequalitySuite::expand(const std::vector<std::string>& check_ids,
                                               const std::vector<std::string>& family_ids,
                                               const std::vector<int>& dims,
                                               const std::vector<std::uint64_t>& seeds,
                                               const FamilyCatalog& catalog) const {
    std::vector<SuiteUnit> units;
    for (const auto& cid : check_ids) {
        const auto it = entries_.find(cid);
        if (it == entries_.end()) {
            throw std::invalid_argument("InequalitySuite: unknown check " + cid);
        }
        const Entry& entry = it->second;
        if (!entry.info.per_family) {
            for (const auto& fid : entry.intrinsic_functions()) {
                if (entry.info.uses_seed) {
                    for (std::uint64_t s : seeds) units.push_back({cid, fid, 1, s});
                } else {
                    units.push_back({cid, fid, 1, 0});
                }
            }
            continue;
        }
        for (const auto& fam : family_ids) {
            const auto& spec = catalog.find(fam);  // throws on unknown id
            for (int dim : dims) {
                if (dim < 1) throw std::invalid_argument("InequalitySuite: dims must be >= 1");
                if (!entry.applies(spec.make(dim))) continue;
                for (std::uint64_t s : seeds) units.push_back({cid, fam, dim, s});
            }
        }
    }
    return units;
}

InequalityReport InequalitySuite::run(const SuiteUnit& unit, const FamilyCatalog& catalog,
                                      std::size_t n_samples, std::size_t grid_size,
                                      SampleCache& cache) const {
    const auto it = entries_.find(unit.check_id);
    if (it == entries_.end()) {
        throw std::invalid_argument("InequalitySuite: unknown check " + unit.check_id);
    }
    const Entry& entry = it->second;
    InequalityReport rep;
    if (entry.info.per_family) {
        const TestFunction f = catalog.find(unit.function_id).make(unit.dim);
        const EmpiricalRearrangement& e =
            cache.get(catalog, unit.function_id, unit.dim, n_samples, unit.seed);
        rep = entry.run_family(f, e, grid_size);
    } else {
        rep = entry.run_intrinsic(unit.function_id, unit.seed, n_samples, grid_size);
    }
    rep.inequality_id = unit.check_id;
    rep.function_id = unit.function_id;
    rep.dim = entry.info.per_family ? unit.dim : 1;
    rep.n_samples = n_samples;
    rep.grid_size = grid_size;
    rep.seed = unit.seed;
    return rep;
}

}  // namespace isosym
