#pragma once

/**
 * @file cli_reporter.hpp
 * @brief Batch runner: flat-text run configuration, execution over the
 *        registry, CSV/JSON report emission and the exit-status contract
 *        (nonzero iff any verdict is "violated").
 */

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "isosym/function_sampler.hpp"
#include "isosym/inequality_suite.hpp"

namespace isosym {

struct RunConfig {
    std::vector<std::string> checks;
    std::vector<std::string> families;  ///< family ids, or the single token "all"
    std::vector<int> dims{1};
    std::size_t n_samples = 100000;
    std::size_t grid_size = 256;
    std::vector<std::uint64_t> seeds{1};
    std::map<std::string, double> tolerance_overrides;  ///< check id -> tolerance
    std::string output_dir = "reports";
    bool output_dir_from_config = false;  ///< config file set output_dir explicitly
    enum class Format { csv, json, both } format = Format::both;

    /// Parse the flat key = value format ('#' comments, comma lists).
    static RunConfig parse(std::istream& in);
    static RunConfig parse_file(const std::string& path);

    /// Reject unknown ids and out-of-range sizes before any computation.
    void validate(const InequalitySuite& suite, const FamilyCatalog& catalog) const;

    /// Families with "all" expanded against the catalog.
    std::vector<std::string> resolved_families(const FamilyCatalog& catalog) const;
};

struct RunOutcome {
    std::vector<InequalityReport> reports;
    std::string summary_csv;  ///< byte-stable summary (always built)
    std::size_t n_violated = 0;
    int exit_code = 0;
};

/// Execute every unit of the expanded config sequentially (deterministic
/// ordering and byte-identical summaries) and write the report files.
RunOutcome execute_run(const RunConfig& config, const InequalitySuite& suite,
                       const FamilyCatalog& catalog);

/// Summary CSV with the fixed column set, RFC-4180 quoting, header row.
std::string summary_csv(const std::vector<InequalityReport>& reports);

/// Full-curve JSON for one report, curve capped at max_points entries.
std::string report_json(const InequalityReport& rep, std::size_t max_points);

/// Stable text listing of registered checks (with anchor tags) and families.
std::string render_catalog_listing(const InequalitySuite& suite, const FamilyCatalog& catalog);

/// File name for a report's JSON, sanitized for the filesystem.
std::string report_basename(const InequalityReport& rep);

}  // namespace isosym
