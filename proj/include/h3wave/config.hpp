#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "h3wave/synth.hpp"

namespace h3wave {

// Flat `key = value` configuration: one pair per line, `#` comments, keys
// namespaced with dots. Numeric values accept plain literals, `inf`, and
// the octave shorthand `2^-6`.
std::map<std::string, std::string> parse_config_text(const std::string& text);

struct RunConfig {
    // grid.*
    double grid_r_max = 40.0;
    std::size_t grid_n = 4096;

    // run.*
    double dt = 5e-3;
    double horizon = 16.0;
    bool guard = true;              // finite-propagation guard for cubic runs
    std::string stepper = "cubic";  // evolve subcommand: cubic | linear

    // data.*
    DataSpec data;

    // scheme.*
    double s0 = 0.015625;  // 2^-6
    double epsilon = 0.1;
    double t_max_interval = 4.0;

    // sweep.*
    std::vector<double> sweep_s0 = {0.0625,    0.03125,    0.015625,  0.0078125,
                                    0.00390625, 0.001953125, 0.0009765625};

    // strichartz.*
    std::vector<std::array<double, 3>> triples;
    double strichartz_horizon = 8.0;

    // scatter.*
    std::vector<double> scatter_probes = {4.0, 8.0, 12.0, 16.0};

    // diag.*
    bool diag_morawetz = false;

    RunConfig();

    static RunConfig from_text(const std::string& text);
    static RunConfig from_file(const std::string& path);

    // Throws ConfigError naming the offending field.
    void validate() const;
};

// Parses a scalar accepting `inf` and `2^k` / `2^-k`.
double parse_number(const std::string& raw, const std::string& field);

} // namespace h3wave
