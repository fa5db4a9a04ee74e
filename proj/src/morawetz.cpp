#include "h3wave/morawetz.hpp"

#include <cmath>
#include <stdexcept>

#include "h3wave/errors.hpp"
#include "h3wave/norms.hpp"
#include "h3wave/spectral.hpp"

namespace h3wave {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

// Interior-node values of u_t * (a'(u_r - u coth reduction)) assembled in the
// w representation: u_r sinh^2 = (w_r - w coth r) sinh, u_t sinh = w_t, so
// u_t a' u_r sinh^2 = w_t a' (w_r - w coth r).
double weighted_flux_sum(const WaveState& state, const MorawetzWeight& wt,
                         const std::vector<double>& w_r) {
    const auto& grid = state.grid();
    const auto& cosh_r = grid->cosh_r();
    const auto& sinh_r = grid->sinh_r();
    double sum = 0.0;
    for (std::size_t j = 0; j < state.w.size(); ++j) {
        const double coth = cosh_r[j] / sinh_r[j];
        const double ur_weighted = w_r[j + 1] - state.w[j] * coth;
        sum += state.w_t[j] * (wt.a_prime[j] * ur_weighted + 0.5 * state.w[j]);
    }
    return sum;
}

} // namespace

double weight_slope(double r) {
    if (r <= 0.0) return 0.0;
    if (r < 0.05) {
        // (sinh 2r - 2r) by its odd series; the direct difference cancels.
        const double x = 2.0 * r;
        const double x2 = x * x;
        double term = x * x2 / 6.0;
        double num = term;
        for (int n = 5; n <= 13; n += 2) {
            term *= x2 / (static_cast<double>(n) * static_cast<double>(n - 1));
            num += term;
        }
        const double s = std::sinh(r);
        return num / (4.0 * s * s);
    }
    const double s = std::sinh(r);
    return (std::sinh(2.0 * r) - 2.0 * r) / (4.0 * s * s);
}

MorawetzWeight build_weight(const GridPtr& grid) {
    MorawetzWeight wt;
    wt.grid = grid;
    const std::size_t m = grid->size();
    wt.a_prime.resize(m);
    wt.a.resize(m);
    for (std::size_t j = 0; j < m; ++j) wt.a_prime[j] = weight_slope(grid->radius(j));
    wt.a_prime_wall = weight_slope(grid->r_max());

    // Cumulative trapezoid from a(0) = 0 with a'(0) = 0.
    double acc = 0.5 * grid->dr() * wt.a_prime[0];
    wt.a[0] = acc;
    for (std::size_t j = 1; j < m; ++j) {
        acc += 0.5 * grid->dr() * (wt.a_prime[j - 1] + wt.a_prime[j]);
        wt.a[j] = acc;
    }
    return wt;
}

std::vector<double> weight_residual(const MorawetzWeight& wt) {
    const double h = 2e-4;
    const auto& grid = wt.grid;
    std::vector<double> res(grid->size());
    for (std::size_t j = 0; j < res.size(); ++j) {
        const double r = grid->radius(j);
        const double second = (weight_slope(r + h) - weight_slope(r - h)) / (2.0 * h);
        const double coth = grid->cosh_r()[j] / grid->sinh_r()[j];
        res[j] = second + 2.0 * coth * wt.a_prime[j] - 1.0;
    }
    return res;
}

double potential(const WaveState& state, const MorawetzWeight& wt) {
    const std::vector<double> w_r = radial_derivative(state.w);
    return -kFourPi * state.grid()->dr() * weighted_flux_sum(state, wt, w_r);
}

MorawetzMonitor::MorawetzMonitor(MorawetzWeight weight, double dt,
                                 std::size_t expected_steps)
    : weight_(std::move(weight)), dt_(dt), expected_steps_(expected_steps) {
    if (!(dt > 0.0)) throw std::invalid_argument("MorawetzMonitor: dt must be positive");
    report_.dt = dt;
    const std::size_t probes = 10;
    for (std::size_t p = 0; p < probes; ++p) {
        std::size_t idx = expected_steps_ == 0
                              ? 0
                              : (p * expected_steps_ + (probes - 1) / 2) / (probes - 1);
        if (probe_steps_.empty() || probe_steps_.back() != idx) probe_steps_.push_back(idx);
    }
}

void MorawetzMonitor::feed(const WaveState& state, const RadialField* err_field) {
    const std::size_t step = report_.t.size();
    const auto& grid = state.grid();

    const std::vector<double> w_r = radial_derivative(state.w);
    const double m_val = -kFourPi * grid->dr() * weighted_flux_sum(state, weight_, w_r);
    const double l4 = lq_norm(state.w, 4.0);

    report_.t.push_back(state.t);
    report_.m.push_back(m_val);
    report_.quarter_l4.push_back(0.25 * l4 * l4 * l4 * l4);

    double err_zeta = 0.0;
    double err_grad = 0.0;
    if (err_field) {
        const auto& cosh_r = grid->cosh_r();
        const auto& sinh_r = grid->sinh_r();
        for (std::size_t j = 0; j < state.w.size(); ++j) {
            const double coth = cosh_r[j] / sinh_r[j];
            const double nw = (*err_field)[j];
            err_zeta += std::abs(nw * state.w[j]);
            err_grad += std::abs(nw * (w_r[j + 1] - state.w[j] * coth));
        }
        err_zeta *= kFourPi * grid->dr();
        err_grad *= kFourPi * grid->dr();
    }
    report_.err_n_zeta.push_back(err_zeta);
    report_.err_n_grad.push_back(err_grad);

    const double wr_wall = w_r[grid->n()];
    report_.boundary.push_back(2.0 * M_PI * weight_.a_prime_wall * wr_wall * wr_wall);

    report_.sup_e = std::max(report_.sup_e, energy(state).total);
    report_.sup_abs_m = std::max(report_.sup_abs_m, std::abs(m_val));

    for (std::size_t idx : probe_steps_) {
        if (idx == step) {
            probe_states_.push_back(state);
            probe_errors_.emplace_back(err_field ? std::optional<RadialField>(*err_field)
                                                 : std::nullopt);
            break;
        }
    }
}

MorawetzReport MorawetzMonitor::finalize() const {
    MorawetzReport rep = report_;
    const std::size_t n_samples = rep.t.size();
    rep.dmdt_fd.assign(n_samples, 0.0);
    rep.margin.assign(n_samples, 0.0);
    if (n_samples >= 2) {
        for (std::size_t i = 0; i < n_samples; ++i) {
            if (i == 0)
                rep.dmdt_fd[i] = (rep.m[1] - rep.m[0]) / dt_;
            else if (i + 1 == n_samples)
                rep.dmdt_fd[i] = (rep.m[i] - rep.m[i - 1]) / dt_;
            else
                rep.dmdt_fd[i] = (rep.m[i + 1] - rep.m[i - 1]) / (2.0 * dt_);
        }
    }
    for (std::size_t i = 0; i < n_samples; ++i)
        rep.margin[i] =
            rep.dmdt_fd[i] - rep.quarter_l4[i] + rep.err_n_zeta[i] + rep.err_n_grad[i];

    const double scale = std::max(1.0, rep.sup_e);
    rep.pointwise_tolerance = 10.0 * dt_ * dt_ * scale;
    std::size_t pass = 0;
    std::size_t interior = 0;
    for (std::size_t i = 1; i + 1 < n_samples; ++i) {
        ++interior;
        if (rep.margin[i] >= -rep.pointwise_tolerance) ++pass;
    }
    rep.pointwise_pass_fraction =
        interior == 0 ? 1.0 : static_cast<double>(pass) / static_cast<double>(interior);

    rep.l4_time_integral = 0.0;
    rep.err_time_integral = 0.0;
    for (std::size_t i = 0; i + 1 < n_samples; ++i) {
        rep.l4_time_integral += dt_ * 4.0 * rep.quarter_l4[i];
        rep.err_time_integral += dt_ * (rep.err_n_zeta[i] + rep.err_n_grad[i]);
    }
    const double denom = rep.sup_e + rep.err_time_integral;
    rep.c_measured = denom > 0.0 ? rep.l4_time_integral / denom : 0.0;

    // Derivative-identity cross-check at the probe snapshots. u_tt is taken
    // from the equation: w_tt = -(lambda^2+1) w (spectrally) - w^3/sinh^2 + N.
    for (std::size_t p = 0; p < probe_states_.size(); ++p) {
        const WaveState& st = probe_states_[p];
        const auto& grid = st.grid();
        const auto& sinh2_r = grid->sinh2_r();
        const auto& cosh_r = grid->cosh_r();
        const auto& sinh_r = grid->sinh_r();

        SpectralField W = forward(st.w);
        for (std::size_t k = 0; k < W.size(); ++k) {
            const double lam = W.frequency(k);
            W[k] *= -(lam * lam + 1.0);
        }
        RadialField w_tt = inverse(W);
        for (std::size_t j = 0; j < w_tt.size(); ++j) {
            w_tt[j] -= st.w[j] * st.w[j] * st.w[j] / sinh2_r[j];
            if (probe_errors_[p]) w_tt[j] += (*probe_errors_[p])[j];
        }

        const std::vector<double> w_r = radial_derivative(st.w);
        const std::vector<double> wt_r = radial_derivative(st.w_t);

        double term_i = 0.0, term_ii = 0.0, term_iii = 0.0, term_iv = 0.0;
        for (std::size_t j = 0; j < st.w.size(); ++j) {
            const double coth = cosh_r[j] / sinh_r[j];
            const double ap = weight_.a_prime[j];
            term_i -= w_tt[j] * ap * (w_r[j + 1] - st.w[j] * coth);
            term_ii -= st.w_t[j] * ap * (wt_r[j + 1] - st.w_t[j] * coth);
            term_iii -= 0.5 * w_tt[j] * st.w[j];
            term_iv -= 0.5 * st.w_t[j] * st.w_t[j];
        }
        const double measure = kFourPi * grid->dr();
        MorawetzReport::Probe probe;
        probe.t = st.t;
        probe.term_i = measure * term_i;
        probe.term_ii = measure * term_ii;
        probe.term_iii = measure * term_iii;
        probe.term_iv = measure * term_iv;
        probe.sum = probe.term_i + probe.term_ii + probe.term_iii + probe.term_iv;
        probe.dmdt_fd = 0.0;
        for (std::size_t i = 0; i < n_samples; ++i) {
            if (std::abs(rep.t[i] - st.t) < 0.25 * dt_) {
                probe.dmdt_fd = rep.dmdt_fd[i];
                break;
            }
        }
        rep.probes.push_back(probe);
    }

    double max_res = 0.0;
    for (double r : weight_residual(weight_)) max_res = std::max(max_res, std::abs(r));
    rep.max_weight_residual = max_res;
    return rep;
}

MorawetzReport monitor(const std::vector<WaveState>& trajectory, const MorawetzWeight& wt,
                       const std::function<RadialField(double t)>& sources) {
    if (trajectory.empty()) throw std::invalid_argument("monitor: empty trajectory");
    double dt = trajectory.size() >= 2 ? trajectory[1].t - trajectory[0].t : 1.0;
    if (!(dt > 0.0)) throw ConfigError("monitor: trajectory times must increase uniformly");
    for (std::size_t i = 1; i < trajectory.size(); ++i) {
        const double step = trajectory[i].t - trajectory[i - 1].t;
        if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw ConfigError("monitor: non-uniform trajectory sampling");
    }
    MorawetzMonitor mon(wt, dt, trajectory.empty() ? 0 : trajectory.size() - 1);
    for (const auto& st : trajectory) {
        if (sources) {
            const RadialField err = sources(st.t);
            mon.feed(st, &err);
        } else {
            mon.feed(st, nullptr);
        }
    }
    return mon.finalize();
}

} // namespace h3wave
