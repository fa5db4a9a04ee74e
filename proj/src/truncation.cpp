#include "h3wave/truncation.hpp"

#include <cmath>
#include <stdexcept>

#include "h3wave/errors.hpp"
#include "h3wave/evolve.hpp"
#include "h3wave/projections.hpp"
#include "h3wave/spectral.hpp"

namespace h3wave {

namespace {

// w-space density of -(u^3 - phi^3): the forcing of the cancelled v system.
RadialField correction_source(const WaveState& u, const WaveState& phi) {
    const auto& sinh2_r = u.grid()->sinh2_r();
    RadialField g(u.grid());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double uw = u.w[i];
        const double pw = phi.w[i];
        g[i] = -(uw * uw * uw - pw * pw * pw) / sinh2_r[i];
    }
    return g;
}

double l2_sq(const RadialField& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * f[i];
    return s * f.grid()->dr();
}

void feed_interval_sups(Decomposition& dec) {
    dec.sup_e_v = std::max(dec.sup_e_v, energy(dec.v).total);
    dec.sup_v_l4 = std::max(dec.sup_v_l4, lq_norm(dec.v.w, 4.0));
}

void feed_identity_residual(Decomposition& dec) {
    RadialField rw = dec.u.w;
    rw -= dec.psi.w;
    rw -= dec.phi.w;
    rw -= dec.v.w;
    RadialField rv = dec.u.w_t;
    rv -= dec.psi.w_t;
    rv -= dec.phi.w_t;
    rv -= dec.v.w_t;
    const double denom = l2_sq(dec.u.w) + l2_sq(dec.u.w_t);
    if (denom == 0.0) return;
    const double res = std::sqrt((l2_sq(rw) + l2_sq(rv)) / denom);
    dec.max_identity_residual = std::max(dec.max_identity_residual, res);
}

} // namespace

Decomposition init_decomposition(const WaveState& data, double s0, double epsilon,
                                 double t_max_interval) {
    if (!(s0 >= 0.0) || !std::isfinite(s0))
        throw ConfigError("scheme.s0: truncation scale must be >= 0");
    if (!(epsilon > 0.0)) throw ConfigError("scheme.epsilon: threshold must be > 0");
    if (!(t_max_interval > 0.0)) throw ConfigError("scheme.T_max: must be > 0");

    Decomposition dec;
    dec.u = data;
    const SplitData split = split_state(data, s0);
    dec.psi = split.hi;
    dec.phi = split.lo;
    dec.v = zero_state(data.grid(), data.t);
    dec.s0 = s0;
    dec.epsilon = epsilon;
    dec.t_max_interval = t_max_interval;
    dec.j = 1;
    dec.b_j = data.t;
    dec.e_phi_start = energy(dec.phi).total;
    feed_interval_sups(dec);
    feed_identity_residual(dec);
    return dec;
}

void advance(Decomposition& dec, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("advance: dt must be positive");
    if (std::abs(dec.u.t - dec.psi.t) > 1e-12 || std::abs(dec.u.t - dec.phi.t) > 1e-12 ||
        std::abs(dec.u.t - dec.v.t) > 1e-12)
        throw std::logic_error("advance: decomposition components lost time sync");

    // Left-endpoint space-time accumulation.
    const double u_l4 = lq_norm(dec.u.w, 4.0);
    dec.u_l4_partial += dt * u_l4 * u_l4 * u_l4 * u_l4;
    const double psi_l4 = lq_norm(dec.psi.w, 4.0);
    dec.psi_l4_partial += dt * psi_l4 * psi_l4 * psi_l4 * psi_l4;
    dec.phi_l83_partial += dt * std::pow(lq_norm(dec.phi.w, 8.0), 8.0 / 3.0);

    const RadialField src_start = correction_source(dec.u, dec.phi);
    dec.u = step_cubic(dec.u, dt);
    dec.psi = step_linear(dec.psi, dt);
    dec.phi = step_cubic(dec.phi, dt);
    const RadialField src_end = correction_source(dec.u, dec.phi);

    const double t_mid = dec.v.t + 0.5 * dt;
    const SourceHook hook = [&](double t) -> RadialField {
        return t < t_mid ? src_start : src_end;
    };
    dec.v = step_forced(dec.v, hook, dt);

    feed_interval_sups(dec);
    feed_identity_residual(dec);
}

std::optional<IntervalRecord> maybe_close_interval(Decomposition& dec, bool force) {
    const double elapsed = dec.u.t - dec.b_j;
    const bool threshold_hit = dec.u_l4_partial >= dec.epsilon;
    const bool length_hit = elapsed >= dec.t_max_interval - 1e-12;
    if (!(threshold_hit || length_hit || force)) return std::nullopt;
    if (elapsed <= 0.0) return std::nullopt;  // nothing elapsed yet

    IntervalRecord rec;
    rec.j = dec.j;
    rec.t_start = dec.b_j;
    rec.t_end = dec.u.t;
    rec.l4_accumulated = dec.u_l4_partial;
    rec.e_phi_start = dec.e_phi_start;
    rec.e_phi_end = energy(dec.phi).total;
    rec.sup_e_v = dec.sup_e_v;
    rec.sup_v_l4 = dec.sup_v_l4;
    rec.phi_l83_l8 = std::pow(dec.phi_l83_partial, 3.0 / 8.0);
    rec.psi_l4 = std::pow(dec.psi_l4_partial, 0.25);

    // Increment and its decomposition. The quartic-in-v remainder is folded
    // into delta_e implicitly; the three cross terms dominate when v is small.
    WaveState zeta = dec.phi;
    zeta += dec.v;
    const double e_zeta = energy(zeta).total;
    rec.delta_e = e_zeta - rec.e_phi_end;
    {
        SpectralField Pw = forward(dec.phi.w);
        SpectralField Vw = forward(dec.v.w);
        SpectralField Pt = forward(dec.phi.w_t);
        SpectralField Vt = forward(dec.v.w_t);
        double cg = 0.0;
        double ck = 0.0;
        for (std::size_t k = 0; k < Pw.size(); ++k) {
            const double lam = Pw.frequency(k);
            cg += (lam * lam + 1.0) * Pw[k] * Vw[k];
            ck += Pt[k] * Vt[k];
        }
        rec.cross_gradient = 4.0 * M_PI * cg;
        rec.cross_kinetic = 4.0 * M_PI * ck;
        const auto& sinh2_r = dec.phi.grid()->sinh2_r();
        double cc = 0.0;
        for (std::size_t i = 0; i < dec.phi.w.size(); ++i) {
            const double pw = dec.phi.w[i];
            cc += pw * pw * pw * dec.v.w[i] / sinh2_r[i];
        }
        rec.cross_cubic = 4.0 * M_PI * cc * dec.phi.grid()->dr();
    }

    dec.closed.push_back(rec);

    // Re-injection: phi absorbs the correction, v restarts from rest.
    dec.phi = zeta;
    dec.v = zero_state(dec.u.grid(), dec.u.t);
    dec.j += 1;
    dec.b_j = dec.u.t;
    dec.u_l4_partial = 0.0;
    dec.psi_l4_partial = 0.0;
    dec.phi_l83_partial = 0.0;
    dec.sup_e_v = 0.0;
    dec.sup_v_l4 = 0.0;
    dec.e_phi_start = e_zeta;
    return rec;
}

EnergyLedger ledger_report(const Decomposition& dec) {
    EnergyLedger ledger;
    ledger.records = dec.closed;
    ledger.interval_count = dec.closed.size();
    for (const auto& rec : dec.closed) {
        ledger.total_delta_e += rec.delta_e;
        ledger.sup_e_phi = std::max({ledger.sup_e_phi, rec.e_phi_start, rec.e_phi_end});
    }
    return ledger;
}

std::vector<LedgerComparison> ledger_comparisons(const Decomposition& dec, double s_reg) {
    const EnergyLedger ledger = ledger_report(dec);
    double sup_sup_e_v = 0.0;
    double max_delta_e = 0.0;
    double total_l4 = 0.0;
    for (const auto& rec : ledger.records) {
        sup_sup_e_v = std::max(sup_sup_e_v, rec.sup_e_v);
        max_delta_e = std::max(max_delta_e, rec.delta_e);
        total_l4 += rec.l4_accumulated;
    }
    const double s0 = dec.s0;
    std::vector<LedgerComparison> rows;
    rows.push_back({"sup_E_phi", ledger.sup_e_phi,
                    s0 > 0.0 ? std::pow(s0, -(1.0 - s_reg)) : 0.0});
    rows.push_back({"sup_E_v", sup_sup_e_v,
                    s0 > 0.0 ? std::pow(s0, 1.75 * s_reg - 1.5) : 0.0});
    rows.push_back({"sum_dE", ledger.total_delta_e,
                    s0 > 0.0 && dec.epsilon > 0.0
                        ? (total_l4 / dec.epsilon) * std::pow(s0, 19.0 / 16.0 * s_reg - 9.0 / 8.0)
                        : 0.0});
    rows.push_back({"max_dE", max_delta_e,
                    s0 > 0.0 ? std::pow(s0, 19.0 / 16.0 * s_reg - 9.0 / 8.0) : 0.0});
    rows.push_back({"interval_count", static_cast<double>(ledger.interval_count),
                    dec.epsilon > 0.0 ? total_l4 / dec.epsilon : 0.0});
    return rows;
}

EnergyLedger run_scheme(Decomposition& dec, double horizon, double dt,
                        const SchemeHook& hook) {
    const StepPlan plan = make_plan(dt, horizon);
    for (std::size_t i = 1; i <= plan.steps; ++i) {
        advance(dec, plan.dt);
        if (hook) hook(dec, i);
        maybe_close_interval(dec, i == plan.steps);
    }
    if (plan.steps == 0) maybe_close_interval(dec, true);
    return ledger_report(dec);
}

} // namespace h3wave
