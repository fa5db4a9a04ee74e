#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "h3wave/config.hpp"
#include "h3wave/fit.hpp"
#include "h3wave/grid.hpp"
#include "h3wave/truncation.hpp"

namespace h3wave {

using Rational = boost::rational<long long>;

// --- threshold algebra -----------------------------------------------------

// Regularity threshold from the closing condition of the scheme: with the
// correction bound exponent (3/2)s - 11/8 and M ~ s0^{-kappa s + 1/8}, a
// small truncation scale closes the loop iff
//   (3/2)s - 11/8 + (5/8)(-kappa s + 1/8) > -kappa s + 1/8.
// Solved in exact rational arithmetic.
Rational threshold_with_m_coefficient(const Rational& kappa);

// kappa = 3/16, giving exactly 182/201.
Rational threshold_calculator();

struct ThresholdReport {
    Rational threshold;            // 182/201 from the exponent algebra
    Rational bootstrap_stated;     // 166/185, the value stated with the bootstrap
    bool consistent;               // false: the two differ and both are reported
};

ThresholdReport threshold_report();

// --- scattering diagnostic ---------------------------------------------------

struct ScatterTable {
    std::vector<double> probe_times;
    std::vector<WaveState> pullbacks;      // S(-t_i)(u(t_i), u_t(t_i))
    std::vector<double> consecutive_diffs; // H^{1/2} x H^{-1/2} pairwise gaps
};

// Evolves the data with the cubic flow, pulls each probe state back with the
// free propagator, and reports consecutive pair-norm differences at
// sigma = 1/2. Probes must be increasing and inside the domain guard.
ScatterTable scattering_diagnostic(const WaveState& data, const std::vector<double>& probes,
                                   double dt, bool enforce_guard = true);

// --- truncation-scheme runs -------------------------------------------------

struct TruncationOutcome {
    double s = 0.0;
    double s0 = 0.0;
    EnergyLedger ledger;
    double max_identity_residual = 0.0;
    double sup_e_phi = 0.0;
    double sup_sup_e_v = 0.0;
    double max_delta_e = 0.0;
    double total_l4 = 0.0;        // ||u||_{L^4_{t,x}}^4 over the whole run
    double sup_psi_l4 = 0.0;      // max_j ||psi||_{L^4_{t,x}(I_j)}
    std::size_t interval_count = 0;
};

TruncationOutcome run_truncation_scheme(const RunConfig& cfg);

// --- s0 sweep -----------------------------------------------------------------

struct SweepResult {
    std::vector<TruncationOutcome> rows;  // one per s0, input order
    std::optional<FitResult> fit_sup_e_v;
    std::optional<FitResult> fit_max_delta_e;
    std::optional<FitResult> fit_sup_psi_l4;
    std::optional<FitResult> fit_sup_e_phi;
};

// Runs the scheme once per scale in cfg.sweep_s0 (workers in parallel,
// deterministic ordered merge) and fits log-log slopes against s0.
// Requires at least 4 scales spanning at least 3 octaves.
SweepResult sweep_s0(const RunConfig& cfg, int workers);

// --- strichartz suite ---------------------------------------------------------

struct StrichartzRow {
    double p, q, gamma;
    std::string status;  // "ok" or the violated constraint
    double max_ratio;    // max over the synthetic corpus; 0 when skipped
};

std::vector<StrichartzRow> strichartz_suite(const RunConfig& cfg);

// --- artifact-producing entry point -----------------------------------------

struct RunOptions {
    std::string out_dir;
    int workers = 1;
    std::optional<std::uint64_t> seed_override;
};

// Dispatches a CLI subcommand (evolve, truncate, sweep, morawetz, strichartz,
// scatter, threshold, selftest), writing CSV artifacts and a JSON-lines
// summary under out_dir. Throws ConfigError / NumericError on failure.
void run(const std::string& command, const RunConfig& cfg, const RunOptions& options);

// Quick built-in verification; returns the number of failed checks and
// prints one line per check when verbose.
int selftest(bool verbose);

} // namespace h3wave
