#include "h3wave/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "h3wave/errors.hpp"
#include "h3wave/evolve.hpp"
#include "h3wave/morawetz.hpp"
#include "h3wave/norms.hpp"
#include "h3wave/projections.hpp"
#include "h3wave/spectral.hpp"
#include "h3wave/synth.hpp"

namespace h3wave {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& columns) {
        out_.open(path);
        if (!out_) throw ConfigError("cannot open output file '" + path.string() + "'");
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << fmt(values[i]);
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

void write_summary(const fs::path& dir, const std::string& name, const json& record) {
    std::ofstream out(dir / (name + "_summary.jsonl"));
    if (!out) throw ConfigError("cannot open summary file in '" + dir.string() + "'");
    out << record.dump() << "\n";
}

fs::path prepare_out_dir(const RunOptions& options) {
    if (options.out_dir.empty()) throw ConfigError("--out: output directory required");
    fs::path dir(options.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("--out: cannot create '" + dir.string() + "'");
    return dir;
}

RunConfig apply_overrides(RunConfig cfg, const RunOptions& options) {
    if (options.seed_override) cfg.data.seed = *options.seed_override;
    return cfg;
}

json fit_to_json(const std::optional<FitResult>& fit) {
    if (!fit) return nullptr;
    json j;
    j["slope"] = fit->slope;
    j["intercept"] = fit->intercept;
    j["rms_residual"] = fit->rms_residual;
    j["slope_stderr"] = fit->slope_stderr;
    j["points"] = fit->points;
    return j;
}

} // namespace

// --- threshold algebra -------------------------------------------------------

Rational threshold_with_m_coefficient(const Rational& kappa) {
    // zeta-bound exponent: a*s + b, growth exponent of M: m(s) = -kappa*s + d.
    const Rational a(3, 2), b(-11, 8), d(1, 8);
    const Rational three_eighths(3, 8);
    // a*s + b + (5/8)(-kappa*s + d) > -kappa*s + d
    // <=> (a + (3/8)kappa)*s > (3/8)d - b
    const Rational coeff = a + three_eighths * kappa;
    const Rational rhs = three_eighths * d - b;
    if (coeff <= Rational(0))
        throw std::invalid_argument("threshold: degenerate exponent configuration");
    return rhs / coeff;
}

Rational threshold_calculator() { return threshold_with_m_coefficient(Rational(3, 16)); }

ThresholdReport threshold_report() {
    ThresholdReport rep;
    rep.threshold = threshold_calculator();
    rep.bootstrap_stated = Rational(166, 185);
    rep.consistent = rep.threshold == rep.bootstrap_stated;
    return rep;
}

// --- scattering diagnostic ----------------------------------------------------

ScatterTable scattering_diagnostic(const WaveState& data, const std::vector<double>& probes,
                                   double dt, bool enforce_guard) {
    if (probes.empty()) throw ConfigError("scatter.probes: list is empty");
    for (std::size_t i = 1; i < probes.size(); ++i)
        if (!(probes[i] > probes[i - 1]))
            throw ConfigError("scatter.probes: times must be strictly increasing");
    if (enforce_guard) {
        const double needed = support_radius(data) + probes.back() + 1.0;
        if (needed > data.grid()->r_max()) {
            std::ostringstream oss;
            oss << "scatter.probes: probe " << probes.back()
                << " lies beyond the domain guard (r_support + t + 1 = " << needed
                << " > r_max = " << data.grid()->r_max() << ")";
            throw ConfigError(oss.str());
        }
    }

    ScatterTable table;
    table.probe_times = probes;
    WaveState state = data;
    double t_prev = 0.0;
    for (double t_probe : probes) {
        const StepPlan plan = make_plan(dt, t_probe - t_prev);
        for (std::size_t i = 0; i < plan.steps; ++i) state = step_cubic(state, plan.dt);
        t_prev = t_probe;
        WaveState pullback = wave_propagate(state, -state.t);
        pullback.t = state.t;  // stamp with the probe time for reporting
        table.pullbacks.push_back(std::move(pullback));
    }
    for (std::size_t i = 1; i < table.pullbacks.size(); ++i) {
        WaveState diff = table.pullbacks[i];
        diff -= table.pullbacks[i - 1];
        table.consecutive_diffs.push_back(pair_norm(diff, 0.5));
    }
    return table;
}

// --- truncation-scheme runs ----------------------------------------------------

TruncationOutcome run_truncation_scheme(const RunConfig& cfg) {
    cfg.validate();
    const GridPtr grid = make_grid(cfg.grid_r_max, cfg.grid_n);
    const WaveState data = synthesize(cfg.data, grid);

    if (cfg.guard) {
        const double needed = support_radius(data) + cfg.horizon + 1.0;
        if (needed > grid->r_max()) {
            std::ostringstream oss;
            oss << "run.guard: r_support + T + 1 = " << needed << " exceeds r_max = "
                << grid->r_max() << " (disable run.guard for wall-confined runs)";
            throw ConfigError(oss.str());
        }
    }

    Decomposition dec = init_decomposition(data, cfg.s0, cfg.epsilon, cfg.t_max_interval);
    const EnergyLedger ledger = run_scheme(dec, cfg.horizon, cfg.dt);

    TruncationOutcome out;
    out.s = cfg.data.s;
    out.s0 = cfg.s0;
    out.ledger = ledger;
    out.max_identity_residual = dec.max_identity_residual;
    out.sup_e_phi = ledger.sup_e_phi;
    out.interval_count = ledger.interval_count;
    for (const auto& rec : ledger.records) {
        out.sup_sup_e_v = std::max(out.sup_sup_e_v, rec.sup_e_v);
        out.max_delta_e = std::max(out.max_delta_e, rec.delta_e);
        out.total_l4 += rec.l4_accumulated;
        out.sup_psi_l4 = std::max(out.sup_psi_l4, rec.psi_l4);
    }
    return out;
}

// --- s0 sweep -------------------------------------------------------------------

SweepResult sweep_s0(const RunConfig& cfg, int workers) {
    const std::vector<double>& scales = cfg.sweep_s0;
    if (scales.size() < 4) throw ConfigError("sweep.s0: need at least 4 scales");
    double lo = scales.front(), hi = scales.front();
    for (double v : scales) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi / lo < 8.0) throw ConfigError("sweep.s0: scales must span at least 3 octaves");
    if (workers < 1) workers = 1;

    SweepResult result;
    result.rows.resize(scales.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors(scales.size());

    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= scales.size()) return;
            try {
                RunConfig point = cfg;
                point.s0 = scales[idx];
                result.rows[idx] = run_truncation_scheme(point);
            } catch (const std::exception& e) {
                errors[idx] = e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    const int thread_count = std::min<int>(workers, static_cast<int>(scales.size()));
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (!err.empty()) throw NumericError("sweep point failed: " + err);

    std::vector<double> xs(scales.begin(), scales.end());
    auto collect = [&](auto getter) {
        std::vector<double> ys;
        ys.reserve(result.rows.size());
        for (const auto& row : result.rows) ys.push_back(getter(row));
        return ys;
    };
    result.fit_sup_e_v = fit_loglog(xs, collect([](const TruncationOutcome& r) { return r.sup_sup_e_v; }));
    result.fit_max_delta_e = fit_loglog(xs, collect([](const TruncationOutcome& r) { return r.max_delta_e; }));
    result.fit_sup_psi_l4 = fit_loglog(xs, collect([](const TruncationOutcome& r) { return r.sup_psi_l4; }));
    result.fit_sup_e_phi = fit_loglog(xs, collect([](const TruncationOutcome& r) { return r.sup_e_phi; }));
    return result;
}

// --- strichartz suite -------------------------------------------------------------

std::vector<StrichartzRow> strichartz_suite(const RunConfig& cfg) {
    const GridPtr grid = make_grid(cfg.grid_r_max, cfg.grid_n);

    std::vector<WaveState> corpus;
    corpus.push_back(synthesize(cfg.data, grid));
    for (std::uint64_t extra = 1; extra <= 2; ++extra) {
        DataSpec spec = cfg.data;
        spec.kind = DataKind::PowerLaw;
        spec.seed = cfg.data.seed + extra;
        corpus.push_back(synthesize(spec, grid));
    }

    std::vector<StrichartzRow> rows;
    for (const auto& triple : cfg.triples) {
        StrichartzRow row{triple[0], triple[1], triple[2], "ok", 0.0};
        const std::string violation = strichartz_violation(triple[0], triple[1], triple[2]);
        if (!violation.empty()) {
            row.status = violation;
        } else {
            for (const auto& data : corpus)
                row.max_ratio = std::max(
                    row.max_ratio, strichartz_ratio(data, triple[0], triple[1], triple[2],
                                                    cfg.strichartz_horizon, cfg.dt));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// --- artifact-producing runs --------------------------------------------------------

namespace {

void run_evolve(const RunConfig& cfg, const fs::path& dir) {
    const GridPtr grid = make_grid(cfg.grid_r_max, cfg.grid_n);
    const WaveState data = synthesize(cfg.data, grid);
    const StepPlan plan = make_plan(cfg.dt, cfg.horizon, cfg.guard);
    const MorawetzWeight weight = build_weight(grid);

    CsvWriter csv(dir / "evolve_series.csv",
                  {"t", "E_total", "E_kinetic", "E_gradient", "E_potential", "L4_partial",
                   "M_t"});

    double l4_partial = 0.0;
    double last_l4 = 0.0;
    double first_total = -1.0;
    double max_drift = 0.0;
    std::size_t rows = 0;

    Observer obs = [&](const WaveState& st, std::size_t step) {
        if (step > 0) {
            l4_partial += plan.dt * last_l4;
        }
        const double l4 = lq_norm(st.w, 4.0);
        last_l4 = l4 * l4 * l4 * l4;
        const EnergyBreakdown e = energy(st);
        if (first_total < 0.0) first_total = e.total;
        if (first_total > 0.0)
            max_drift = std::max(max_drift, std::abs(e.total - first_total) / first_total);
        const double m_t = potential(st, weight);
        csv.row({st.t, e.total, e.kinetic, e.gradient, e.potential, l4_partial, m_t});
        ++rows;
    };

    const StepperKind kind =
        cfg.stepper == "linear" ? StepperKind::Linear : StepperKind::Cubic;
    const RunSummary summary = evolve_run(data, plan, kind, {obs});

    json rec;
    rec["command"] = "evolve";
    rec["stepper"] = cfg.stepper;
    rec["grid_n"] = cfg.grid_n;
    rec["r_max"] = cfg.grid_r_max;
    rec["dt"] = plan.dt;
    rec["T"] = cfg.horizon;
    rec["steps"] = summary.steps;
    rec["rows"] = rows;
    rec["energy_rel_drift_max"] = max_drift;
    rec["l4_spacetime_4"] = l4_partial + plan.dt * last_l4;
    rec["final_t"] = summary.final_state.t;
    write_summary(dir, "evolve", rec);
}

void run_truncate(const RunConfig& cfg, const fs::path& dir) {
    const TruncationOutcome out = run_truncation_scheme(cfg);

    CsvWriter csv(dir / "truncate_ledger.csv",
                  {"j", "t_start", "t_end", "l4_acc", "E_phi_start", "E_phi_end", "sup_E_v",
                   "dE", "sup_v_L4"});
    for (const auto& rec : out.ledger.records)
        csv.row({static_cast<double>(rec.j), rec.t_start, rec.t_end, rec.l4_accumulated,
                 rec.e_phi_start, rec.e_phi_end, rec.sup_e_v, rec.delta_e, rec.sup_v_l4});

    json rec;
    rec["command"] = "truncate";
    rec["s"] = out.s;
    rec["s0"] = out.s0;
    rec["epsilon"] = cfg.epsilon;
    rec["intervals"] = out.interval_count;
    rec["total_dE"] = out.ledger.total_delta_e;
    rec["max_dE"] = out.max_delta_e;
    rec["sup_E_phi"] = out.sup_e_phi;
    rec["sup_E_v"] = out.sup_sup_e_v;
    rec["total_u_L4_4"] = out.total_l4;
    rec["sup_psi_L4"] = out.sup_psi_l4;
    rec["max_identity_residual"] = out.max_identity_residual;
    write_summary(dir, "truncate", rec);
}

void run_sweep(const RunConfig& cfg, const RunOptions& options, const fs::path& dir) {
    const SweepResult result = sweep_s0(cfg, options.workers);

    CsvWriter csv(dir / "sweep_rows.csv",
                  {"s", "s0", "sup_E_phi", "sup_E_v", "max_dE", "total_l4", "interval_count",
                   "sup_psi_L4", "max_identity_residual"});
    for (const auto& row : result.rows)
        csv.row({row.s, row.s0, row.sup_e_phi, row.sup_sup_e_v, row.max_delta_e,
                 row.total_l4, static_cast<double>(row.interval_count), row.sup_psi_l4,
                 row.max_identity_residual});

    json rec;
    rec["command"] = "sweep";
    rec["s"] = cfg.data.s;
    rec["points"] = result.rows.size();
    rec["fit_sup_E_v"] = fit_to_json(result.fit_sup_e_v);
    rec["fit_max_dE"] = fit_to_json(result.fit_max_delta_e);
    rec["fit_sup_psi_L4"] = fit_to_json(result.fit_sup_psi_l4);
    rec["fit_sup_E_phi"] = fit_to_json(result.fit_sup_e_phi);
    write_summary(dir, "sweep", rec);
}

void run_morawetz(const RunConfig& cfg, const fs::path& dir) {
    const GridPtr grid = make_grid(cfg.grid_r_max, cfg.grid_n);
    const WaveState data = synthesize(cfg.data, grid);
    const StepPlan plan = make_plan(cfg.dt, cfg.horizon, cfg.guard);
    MorawetzMonitor mon(build_weight(grid), plan.dt, plan.steps);

    Observer obs = [&](const WaveState& st, std::size_t) { mon.feed(st); };
    evolve_run(data, plan, StepperKind::Cubic, {obs});
    const MorawetzReport rep = mon.finalize();

    CsvWriter csv(dir / "morawetz_report.csv",
                  {"t", "M", "dMdt_fd", "quarter_L4", "err_Nzeta", "err_Ngradzeta",
                   "margin"});
    for (std::size_t i = 0; i < rep.t.size(); ++i)
        csv.row({rep.t[i], rep.m[i], rep.dmdt_fd[i], rep.quarter_l4[i], rep.err_n_zeta[i],
                 rep.err_n_grad[i], rep.margin[i]});

    json rec;
    rec["command"] = "morawetz";
    rec["pointwise_pass_fraction"] = rep.pointwise_pass_fraction;
    rec["pointwise_tolerance"] = rep.pointwise_tolerance;
    rec["C_measured"] = rep.c_measured;
    rec["sup_E"] = rep.sup_e;
    rec["sup_abs_M"] = rep.sup_abs_m;
    rec["l4_time_integral"] = rep.l4_time_integral;
    rec["max_weight_residual"] = rep.max_weight_residual;
    rec["max_boundary_term"] =
        rep.boundary.empty() ? 0.0 : *std::max_element(rep.boundary.begin(), rep.boundary.end());
    json probes = json::array();
    for (const auto& p : rep.probes) {
        json row;
        row["t"] = p.t;
        row["I"] = p.term_i;
        row["II"] = p.term_ii;
        row["III"] = p.term_iii;
        row["IV"] = p.term_iv;
        row["sum"] = p.sum;
        row["dMdt_fd"] = p.dmdt_fd;
        probes.push_back(row);
    }
    rec["probes"] = probes;
    write_summary(dir, "morawetz", rec);
}

void run_strichartz_cmd(const RunConfig& cfg, const fs::path& dir) {
    const std::vector<StrichartzRow> rows = strichartz_suite(cfg);
    std::ofstream out(dir / "strichartz_table.csv");
    if (!out) throw ConfigError("cannot open strichartz_table.csv");
    out << "p,q,gamma,status,max_ratio\n";
    for (const auto& row : rows)
        out << fmt(row.p) << "," << fmt(row.q) << "," << fmt(row.gamma) << ",\"" << row.status
            << "\"," << fmt(row.max_ratio) << "\n";

    json rec;
    rec["command"] = "strichartz";
    rec["rows"] = rows.size();
    rec["T"] = cfg.strichartz_horizon;
    write_summary(dir, "strichartz", rec);
}

void run_scatter(const RunConfig& cfg, const fs::path& dir) {
    const GridPtr grid = make_grid(cfg.grid_r_max, cfg.grid_n);
    const WaveState data = synthesize(cfg.data, grid);
    const ScatterTable table =
        scattering_diagnostic(data, cfg.scatter_probes, cfg.dt, cfg.guard);

    CsvWriter csv(dir / "scatter_table.csv", {"t_prev", "t_curr", "pair_diff_half"});
    for (std::size_t i = 1; i < table.probe_times.size(); ++i)
        csv.row({table.probe_times[i - 1], table.probe_times[i],
                 table.consecutive_diffs[i - 1]});

    json rec;
    rec["command"] = "scatter";
    rec["probes"] = table.probe_times;
    rec["consecutive_diffs"] = table.consecutive_diffs;
    write_summary(dir, "scatter", rec);
}

void run_threshold(const fs::path& dir) {
    const ThresholdReport rep = threshold_report();
    json rec;
    rec["command"] = "threshold";
    rec["threshold_num"] = rep.threshold.numerator();
    rec["threshold_den"] = rep.threshold.denominator();
    rec["threshold_decimal"] = boost::rational_cast<double>(rep.threshold);
    rec["bootstrap_stated_num"] = rep.bootstrap_stated.numerator();
    rec["bootstrap_stated_den"] = rep.bootstrap_stated.denominator();
    rec["consistent"] = rep.consistent;
    write_summary(dir, "threshold", rec);
}

void run_selftest_artifacts(const RunConfig& cfg, const fs::path& dir) {
    // Bernstein diagnostic table on the configured data.
    const GridPtr grid = make_grid(cfg.grid_r_max, cfg.grid_n);
    const WaveState data = synthesize(cfg.data, grid);
    std::vector<double> scales;
    for (int k = 2; k <= 16; ++k) scales.push_back(std::pow(2.0, -k));
    const auto rows = bernstein_report(data.w, scales);
    CsvWriter csv(dir / "bernstein_report.csv", {"s", "ratio_low", "ratio_grad_high"});
    for (const auto& row : rows) csv.row({row.s, row.ratio_low, row.ratio_grad_high});
}

} // namespace

void run(const std::string& command, const RunConfig& cfg_in, const RunOptions& options) {
    const RunConfig cfg = apply_overrides(cfg_in, options);
    cfg.validate();
    const fs::path dir = prepare_out_dir(options);

    if (command == "evolve") run_evolve(cfg, dir);
    else if (command == "truncate") run_truncate(cfg, dir);
    else if (command == "sweep") run_sweep(cfg, options, dir);
    else if (command == "morawetz") run_morawetz(cfg, dir);
    else if (command == "strichartz") run_strichartz_cmd(cfg, dir);
    else if (command == "scatter") run_scatter(cfg, dir);
    else if (command == "threshold") run_threshold(dir);
    else if (command == "selftest") {
        if (selftest(false) != 0) throw NumericError("selftest: checks failed");
        run_selftest_artifacts(cfg, dir);
    } else {
        throw ConfigError("unknown subcommand '" + command + "'");
    }
}

int selftest(bool verbose) {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        if (!ok) ++failures;
        if (verbose || !ok) std::printf("[%s] %s\n", ok ? "ok" : "FAIL", name);
    };

    const GridPtr grid = make_grid(20.0, 256);
    DataSpec spec;
    spec.kind = DataKind::PowerLaw;
    spec.s = 0.9;
    const WaveState data = synthesize(spec, grid);

    // Transform round trip.
    {
        const RadialField back = inverse(forward(data.w));
        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < back.size(); ++i) {
            err = std::max(err, std::abs(back[i] - data.w[i]));
            scale = std::max(scale, std::abs(data.w[i]));
        }
        check("transform round trip", err <= 1e-12 * scale);
    }
    // Plancherel.
    {
        const SpectralField F = forward(data.w);
        double sum_c = 0.0, sum_x = 0.0;
        for (std::size_t i = 0; i < F.size(); ++i) sum_c += F[i] * F[i];
        for (std::size_t i = 0; i < data.w.size(); ++i) sum_x += data.w[i] * data.w[i];
        sum_x *= grid->dr();
        check("discrete Plancherel", std::abs(sum_c - sum_x) <= 1e-12 * sum_x);
    }
    // Propagator group law and energy conservation.
    {
        const WaveState one = wave_propagate(data, 0.7);
        const WaveState two = wave_propagate(wave_propagate(data, 0.3), 0.4);
        double err = 0.0, scale = 1e-300;
        for (std::size_t i = 0; i < one.w.size(); ++i) {
            err = std::max({err, std::abs(one.w[i] - two.w[i]),
                            std::abs(one.w_t[i] - two.w_t[i])});
            scale = std::max({scale, std::abs(one.w[i]), std::abs(one.w_t[i])});
        }
        check("propagator group law", err <= 1e-12 * scale);

        const EnergyBreakdown e0 = energy(data);
        const EnergyBreakdown e1 = energy(one);
        const double quad0 = e0.kinetic + e0.gradient;
        const double quad1 = e1.kinetic + e1.gradient;
        check("quadratic energy conservation", std::abs(quad1 - quad0) <= 1e-12 * quad0);
    }
    // Split complementarity.
    {
        const SplitData split = split_state(data, 0.01);
        WaveState sum = split.hi;
        sum += split.lo;
        sum -= data;
        const double res = pair_norm(sum, 0.0);
        const double scale = pair_norm(data, 0.0);
        check("high/low split complementarity", res <= 1e-12 * scale);
    }
    // Threshold algebra.
    check("threshold algebra", threshold_calculator() == Rational(182, 201));
    return failures;
}

} // namespace h3wave
