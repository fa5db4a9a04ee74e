#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "h3wave/grid.hpp"
#include "h3wave/norms.hpp"

namespace h3wave {

// Per-subinterval ledger entry. delta_e is the low-mode energy increment
// E(phi+v) - E(phi) evaluated just before re-injection; the cross_* fields
// break the increment into its bilinear and cubic parts.
struct IntervalRecord {
    int j = 0;
    double t_start = 0.0;
    double t_end = 0.0;
    double l4_accumulated = 0.0;  // integral of ||u||_4^4 over the interval
    double e_phi_start = 0.0;
    double e_phi_end = 0.0;
    double sup_e_v = 0.0;
    double delta_e = 0.0;
    double sup_v_l4 = 0.0;        // sup over steps of the spatial L4 norm of v
    double phi_l83_l8 = 0.0;      // ||phi||_{L^{8/3}_t L^8_x} over the interval
    double psi_l4 = 0.0;          // ||psi||_{L^4_{t,x}} over the interval
    double cross_gradient = 0.0;  // 4pi sum (lambda^2+1) phihat vhat
    double cross_kinetic = 0.0;   // 4pi sum phihat_t vhat_t
    double cross_cubic = 0.0;     // 4pi dr sum phi^3 v / sinh^2 r (w-weighted)
};

struct EnergyLedger {
    std::vector<IntervalRecord> records;
    double total_delta_e = 0.0;
    double sup_e_phi = 0.0;
    std::size_t interval_count = 0;
};

// The coupled quadruple of the truncation scheme. u follows the full cubic
// flow, psi the free flow of the high mode, phi the cubic flow of the low
// mode, and v the driven linear correction with source -(u^3 - phi^3), so
// that u = psi + phi + v telescopes exactly step by step.
struct Decomposition {
    WaveState u;
    WaveState psi;
    WaveState phi;
    WaveState v;
    double s0 = 0.0;
    double epsilon = 0.0;
    double t_max_interval = 4.0;  // closes degenerate low-L4 intervals

    int j = 1;
    double b_j = 0.0;

    // Open-interval accumulators.
    double u_l4_partial = 0.0;
    double psi_l4_partial = 0.0;
    double phi_l83_partial = 0.0;
    double sup_e_v = 0.0;
    double sup_v_l4 = 0.0;
    double e_phi_start = 0.0;

    std::vector<IntervalRecord> closed;
    double max_identity_residual = 0.0;  // sup_t ||u-(psi+phi+v)|| / ||u||
};

// Splits the data at scale s0 (psi takes the high part, phi the low part,
// v starts from zero) and opens the first interval. s0 = 0 puts everything
// into phi. Requires s0 >= 0 and epsilon > 0.
Decomposition init_decomposition(const WaveState& data, double s0, double epsilon,
                                 double t_max_interval = 4.0);

// Advances all four systems by one step of size dt and feeds the interval
// accumulators (left-endpoint rule). Aborts if the component times have
// drifted apart (programming error).
void advance(Decomposition& dec, double dt);

// Closes the current interval when the L4 accumulation has reached epsilon,
// the interval has lasted t_max_interval, or force is set: records the
// ledger row, re-injects phi <- phi + v, and restarts v from zero.
std::optional<IntervalRecord> maybe_close_interval(Decomposition& dec, bool force = false);

// Assembled ledger of the closed intervals.
EnergyLedger ledger_report(const Decomposition& dec);

// One summary row comparing a measured quantity against a reference power
// of s0 (reference = s0^exponent, scaled by M/epsilon for the increment sum).
struct LedgerComparison {
    std::string quantity;
    double measured = 0.0;
    double reference = 0.0;
};

// Reference powers need the data regularity s, which the decomposition does
// not carry; the caller supplies it.
std::vector<LedgerComparison> ledger_comparisons(const Decomposition& dec, double s_reg);

// Drives a complete scheme run to the horizon with fixed step dt. The
// optional hook runs after every advance (before any interval closing).
using SchemeHook = std::function<void(const Decomposition&, std::size_t step)>;

EnergyLedger run_scheme(Decomposition& dec, double horizon, double dt,
                        const SchemeHook& hook = nullptr);

} // namespace h3wave
