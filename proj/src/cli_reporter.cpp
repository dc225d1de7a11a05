#include "isosym/cli_reporter.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace isosym {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

RunConfig RunConfig::parse(std::istream& in) {
    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    bool have_seeds = false, have_dims = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "checks") {
                cfg.checks = split_list(value);
            } else if (key == "families") {
                cfg.families = split_list(value);
            } else if (key == "dims") {
                cfg.dims.clear();
                for (const auto& d : split_list(value)) cfg.dims.push_back(std::stoi(d));
                have_dims = true;
            } else if (key == "n_samples") {
                cfg.n_samples = static_cast<std::size_t>(std::stoull(value));
            } else if (key == "grid_size") {
                cfg.grid_size = static_cast<std::size_t>(std::stoull(value));
            } else if (key == "seeds") {
                cfg.seeds.clear();
                for (const auto& s : split_list(value)) cfg.seeds.push_back(std::stoull(s));
                have_seeds = true;
            } else if (key == "output_dir") {
                cfg.output_dir = value;
                cfg.output_dir_from_config = true;
            } else if (key == "format") {
                if (value == "csv") cfg.format = Format::csv;
                else if (value == "json") cfg.format = Format::json;
                else if (value == "both") cfg.format = Format::both;
                else throw std::invalid_argument("format must be csv|json|both");
            } else if (key.rfind("tolerance.", 0) == 0) {
                cfg.tolerance_overrides[key.substr(10)] = std::stod(value);
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception& err) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": " +
                                        err.what());
        }
    }
    if (have_seeds && cfg.seeds.empty()) {
        throw std::invalid_argument("config: seeds list must not be empty");
    }
    if (have_dims && cfg.dims.empty()) {
        throw std::invalid_argument("config: dims list must not be empty");
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return parse(in);
}

std::vector<std::string> RunConfig::resolved_families(const FamilyCatalog& catalog) const {
    if (families.size() == 1 && families.front() == "all") return catalog.ids();
    return families;
}

void RunConfig::validate(const InequalitySuite& suite, const FamilyCatalog& catalog) const {
    if (n_samples < 1000) throw std::invalid_argument("config: n_samples must be >= 10^3");
    if (grid_size < 64) throw std::invalid_argument("config: grid_size must be >= 64");
    for (const auto& c : checks) {
        if (!suite.contains(c)) throw std::invalid_argument("config: unknown check id " + c);
        if (n_samples < suite.info(c).min_samples) {
            throw std::invalid_argument("config: check " + c + " needs n_samples >= " +
                                        std::to_string(suite.info(c).min_samples));
        }
    }
    for (const auto& f : resolved_families(catalog)) {
        if (!catalog.contains(f)) throw std::invalid_argument("config: unknown family id " + f);
    }
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("config: dims must be >= 1");
    }
    for (const auto& [check, tol] : tolerance_overrides) {
        if (!suite.contains(check)) {
            throw std::invalid_argument("config: tolerance override for unknown check " + check);
        }
        if (!(tol > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
    }
}

std::string summary_csv(const std::vector<InequalityReport>& reports) {
    std::string out =
        "inequality_id,function_id,dim,n_samples,grid_size,seed,"
        "lhs_summary,rhs_summary,worst_margin,tolerance,verdict\n";
    for (const auto& r : reports) {
        out += csv_escape(r.inequality_id);
        out += ',';
        out += csv_escape(r.function_id);
        out += ',';
        out += std::to_string(r.dim);
        out += ',';
        out += std::to_string(r.n_samples);
        out += ',';
        out += std::to_string(r.grid_size);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += format_double(r.lhs_summary);
        out += ',';
        out += format_double(r.rhs_summary);
        out += ',';
        out += format_double(r.worst_margin);
        out += ',';
        out += format_double(r.tolerance);
        out += ',';
        out += to_string(r.verdict);
        out += '\n';
    }
    return out;
}

std::string report_json(const InequalityReport& rep, std::size_t max_points) {
    nlohmann::ordered_json j;
    j["inequality_id"] = rep.inequality_id;
    j["function_id"] = rep.function_id;
    j["dim"] = rep.dim;
    j["n_samples"] = rep.n_samples;
    j["grid_size"] = rep.grid_size;
    j["seed"] = rep.seed;
    j["lhs_summary"] = rep.lhs_summary;
    j["rhs_summary"] = rep.rhs_summary;
    j["worst_margin"] = rep.worst_margin;
    j["tolerance"] = rep.tolerance;
    j["verdict"] = to_string(rep.verdict);
    j["notes"] = rep.notes;
    if (rep.ratio) j["ratio"] = *rep.ratio;
    nlohmann::ordered_json curve = nlohmann::ordered_json::array();
    const std::size_t n = rep.curve.size();
    const std::size_t stride = n > max_points ? (n + max_points - 1) / max_points : 1;
    for (std::size_t i = 0; i < n; i += stride) {
        const auto& p = rep.curve[i];
        curve.push_back({{"t", p.t}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"tol", p.tol}});
    }
    j["curve"] = std::move(curve);
    return j.dump(2);
}

std::string report_basename(const InequalityReport& rep) {
    std::string name = rep.inequality_id + "_" + rep.function_id + "_d" +
                       std::to_string(rep.dim) + "_s" + std::to_string(rep.seed);
    for (char& c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') {
            c = '-';
        }
    }
    return name;
}

RunOutcome execute_run(const RunConfig& config, const InequalitySuite& suite,
                       const FamilyCatalog& catalog) {
    config.validate(suite, catalog);
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + config.output_dir);

    const auto units = suite.expand(config.checks, config.resolved_families(catalog), config.dims,
                                    config.seeds, catalog);
    RunOutcome out;
    SampleCache cache;
    for (const auto& unit : units) {
        InequalityReport rep =
            suite.run(unit, catalog, config.n_samples, config.grid_size, cache);
        const auto it = config.tolerance_overrides.find(unit.check_id);
        if (it != config.tolerance_overrides.end()) {
            rep.tolerance = it->second;
            rep.verdict = rep.worst_margin >= 0.0 ? Verdict::holds
                          : rep.worst_margin >= -rep.tolerance ? Verdict::holds_within_tolerance
                                                               : Verdict::violated;
        }
        if (rep.verdict == Verdict::violated) ++out.n_violated;
        out.reports.push_back(std::move(rep));
    }

    out.summary_csv = summary_csv(out.reports);
    const bool write_csv =
        config.format == RunConfig::Format::csv || config.format == RunConfig::Format::both;
    const bool write_json =
        config.format == RunConfig::Format::json || config.format == RunConfig::Format::both;
    if (write_csv) {
        const fs::path path = fs::path(config.output_dir) / "summary.csv";
        std::ofstream f(path, std::ios::binary);
        f << out.summary_csv;
        f.flush();
        if (!f) throw std::runtime_error("failed writing " + path.string());
    }
    if (write_json) {
        for (const auto& rep : out.reports) {
            const fs::path path =
                fs::path(config.output_dir) / (report_basename(rep) + ".json");
            std::ofstream f(path, std::ios::binary);
            f << report_json(rep, config.grid_size) << '\n';
            f.flush();
            if (!f) throw std::runtime_error("failed writing " + path.string());
        }
    }
    out.exit_code = out.n_violated == 0 ? 0 : 1;
    return out;
}

std::string render_catalog_listing(const InequalitySuite& suite, const FamilyCatalog& catalog) {
    std::string out = "checks:\n";
    for (const auto& info : suite.checks()) {
        out += "  " + info.id + " (" + info.anchor + ")\n";
    }
    out += "families:\n";
    for (const auto& id : catalog.ids()) {
        out += "  " + id + "  " + catalog.find(id).description + "\n";
    }
    return out;
}

}  // namespace isosym
