// h3wave command-line front end. Parses arguments, loads the configuration,
// and drives everything through the shared-library C interface.

#include <cinttypes>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "h3wave.h"

namespace {

int status_to_exit_code(h3w_status status) {
    switch (status) {
        case H3W_OK: return 0;
        case H3W_ERR_NUMERIC: return 3;
        default: return 2;  // configuration, argument, and IO failures
    }
}

int report_failure(h3w_status status) {
    std::fprintf(stderr, "error: %s\n", h3w_last_error());
    return status_to_exit_code(status);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral simulator and verification harness for the radial cubic "
                 "defocusing wave equation on hyperbolic 3-space"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    int workers = 1;
    std::int64_t seed = -1;
    app.add_option("--config", config_path, "Configuration file (key = value lines)");
    app.add_option("--out", out_dir, "Output directory for CSV/JSON artifacts");
    app.add_option("--workers", workers, "Concurrent sweep workers")->check(CLI::Range(1, 64));
    app.add_option("--seed", seed, "Override data.seed from the config");

    const std::vector<std::string> run_commands = {"evolve",  "truncate",   "sweep",
                                                   "morawetz", "strichartz", "scatter"};
    for (const auto& name : run_commands) app.add_subcommand(name);
    auto* cmd_threshold = app.add_subcommand("threshold", "Print the regularity threshold");
    auto* cmd_selftest = app.add_subcommand("selftest", "Run built-in quick checks");

    CLI11_PARSE(app, argc, argv);

    if (cmd_threshold->parsed()) {
        long long num = 0, den = 1;
        const h3w_status st = h3w_threshold(&num, &den);
        if (st != H3W_OK) return report_failure(st);
        std::printf("%lld/%lld (~%.6f)\n", num, den,
                    static_cast<double>(num) / static_cast<double>(den));
        if (app.count("--out") > 0) {
            const h3w_status wst = h3w_run("threshold", nullptr, out_dir.c_str(), workers, seed);
            if (wst != H3W_OK) return report_failure(wst);
        }
        return 0;
    }

    if (cmd_selftest->parsed()) {
        const h3w_status st = h3w_selftest(1);
        if (st != H3W_OK) return report_failure(st);
        if (app.count("--out") > 0) {
            const h3w_status wst =
                h3w_run("selftest", config_path.empty() ? nullptr : config_path.c_str(),
                        out_dir.c_str(), workers, seed);
            if (wst != H3W_OK) return report_failure(wst);
        }
        std::printf("selftest passed\n");
        return 0;
    }

    for (const auto& name : run_commands) {
        if (app.get_subcommand(name)->parsed()) {
            const h3w_status st =
                h3w_run(name.c_str(), config_path.empty() ? nullptr : config_path.c_str(),
                        out_dir.c_str(), workers, seed);
            if (st != H3W_OK) return report_failure(st);
            std::printf("%s: artifacts written to %s\n", name.c_str(), out_dir.c_str());
            return 0;
        }
    }
    return 2;
}
