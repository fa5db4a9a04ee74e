#include "h3wave/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "h3wave/errors.hpp"
#include "h3wave/norms.hpp"

namespace h3wave {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream iss(s);
    while (std::getline(iss, item, sep)) out.push_back(trim(item));
    return out;
}

bool parse_bool(const std::string& raw, const std::string& field) {
    if (raw == "true" || raw == "1" || raw == "on") return true;
    if (raw == "false" || raw == "0" || raw == "off") return false;
    throw ConfigError(field + ": expected a boolean, got '" + raw + "'");
}

std::vector<double> parse_list(const std::string& raw, const std::string& field) {
    std::vector<double> out;
    for (const auto& item : split(raw, ','))
        if (!item.empty()) out.push_back(parse_number(item, field));
    if (out.empty()) throw ConfigError(field + ": empty list");
    return out;
}

} // namespace

double parse_number(const std::string& raw, const std::string& field) {
    if (raw == "inf" || raw == "+inf") return kInf;
    const auto caret = raw.find('^');
    try {
        if (caret != std::string::npos) {
            const double base = std::stod(raw.substr(0, caret));
            const double expo = std::stod(raw.substr(caret + 1));
            return std::pow(base, expo);
        }
        std::size_t used = 0;
        const double value = std::stod(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
        return value;
    } catch (const std::exception&) {
        throw ConfigError(field + ": cannot parse number '" + raw + "'");
    }
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> entries;
    std::istringstream iss(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(iss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream oss;
            oss << "config line " << line_no << ": expected 'key = value', got '" << line << "'";
            throw ConfigError(oss.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config: empty key");
        entries[key] = value;
    }
    return entries;
}

RunConfig::RunConfig() {
    data.kind = DataKind::Bump;
    data.s = 0.95;
    data.seed = 1;
    data.k_min = 1;
    data.amplitude = 1.0;
    triples = {{4.0, 4.0, 0.5}, {8.0, 8.0, 1.0}, {kInf, 2.0, 0.0}, {6.0, 6.0, 5.0 / 6.0}};
}

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig cfg;
    const auto entries = parse_config_text(text);
    for (const auto& [key, value] : entries) {
        if (key == "grid.r_max") cfg.grid_r_max = parse_number(value, key);
        else if (key == "grid.n") cfg.grid_n = static_cast<std::size_t>(parse_number(value, key));
        else if (key == "run.dt") cfg.dt = parse_number(value, key);
        else if (key == "run.T") cfg.horizon = parse_number(value, key);
        else if (key == "run.guard") cfg.guard = parse_bool(value, key);
        else if (key == "run.stepper") cfg.stepper = value;
        else if (key == "data.kind") cfg.data.kind = parse_data_kind(value);
        else if (key == "data.s") cfg.data.s = parse_number(value, key);
        else if (key == "data.seed") cfg.data.seed = static_cast<std::uint64_t>(parse_number(value, key));
        else if (key == "data.k_min") cfg.data.k_min = static_cast<std::size_t>(parse_number(value, key));
        else if (key == "data.amplitude") cfg.data.amplitude = parse_number(value, key);
        else if (key == "scheme.s0") cfg.s0 = parse_number(value, key);
        else if (key == "scheme.epsilon") cfg.epsilon = parse_number(value, key);
        else if (key == "scheme.T_max") cfg.t_max_interval = parse_number(value, key);
        else if (key == "sweep.s0") cfg.sweep_s0 = parse_list(value, key);
        else if (key == "strichartz.T") cfg.strichartz_horizon = parse_number(value, key);
        else if (key == "strichartz.triples") {
            cfg.triples.clear();
            for (const auto& triple : split(value, ';')) {
                const auto parts = split(triple, ',');
                if (parts.size() != 3)
                    throw ConfigError("strichartz.triples: each entry needs p,q,gamma");
                cfg.triples.push_back({parse_number(parts[0], key), parse_number(parts[1], key),
                                       parse_number(parts[2], key)});
            }
        } else if (key == "scatter.probes") cfg.scatter_probes = parse_list(value, key);
        else if (key == "diag.morawetz") cfg.diag_morawetz = parse_bool(value, key);
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream oss;
    oss << in.rdbuf();
    return from_text(oss.str());
}

void RunConfig::validate() const {
    if (!(grid_r_max > 0.0) || !std::isfinite(grid_r_max))
        throw ConfigError("grid.r_max: must be positive and finite");
    if (grid_n < 8) throw ConfigError("grid.n: must be at least 8");
    if (grid_n > (1u << 24)) throw ConfigError("grid.n: unreasonably large");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("run.dt: must be positive");
    if (!(horizon >= 0.0) || !std::isfinite(horizon))
        throw ConfigError("run.T: must be non-negative and finite");
    if (stepper != "cubic" && stepper != "linear")
        throw ConfigError("run.stepper: expected 'cubic' or 'linear'");
    if (!(data.s > 0.0) || data.s > 1.0) throw ConfigError("data.s: must lie in (0, 1]");
    if (data.k_min < 1) throw ConfigError("data.k_min: must be >= 1");
    if (!(data.amplitude > 0.0)) throw ConfigError("data.amplitude: must be positive");
    if (!(s0 >= 0.0)) throw ConfigError("scheme.s0: must be >= 0");
    if (!(epsilon > 0.0)) throw ConfigError("scheme.epsilon: must be positive");
    if (!(t_max_interval > 0.0)) throw ConfigError("scheme.T_max: must be positive");
    for (double v : sweep_s0)
        if (!(v > 0.0)) throw ConfigError("sweep.s0: scales must be positive");
    for (double v : scatter_probes)
        if (!(v > 0.0)) throw ConfigError("scatter.probes: times must be positive");
    if (!(strichartz_horizon > 0.0)) throw ConfigError("strichartz.T: must be positive");
}

} // namespace h3wave
