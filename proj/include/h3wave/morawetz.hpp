#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "h3wave/grid.hpp"

namespace h3wave {

// Radial weight solving  a'' + 2 coth(r) a' = 1  with a(0) = 0:
//   a'(r) = (sinh 2r - 2r) / (4 sinh^2 r),
// tabulated together with its cumulative-trapezoid primitive. a' increases
// from 0 to the asymptote 1/2 and the radial Hessian entries a'' and
// a' coth(r) are both positive.
struct MorawetzWeight {
    GridPtr grid;
    std::vector<double> a;        // interior nodes
    std::vector<double> a_prime;  // interior nodes
    double a_prime_wall = 0.0;    // a'(r_max), used by the boundary monitor
};

MorawetzWeight build_weight(const GridPtr& grid);

// Closed-form a'(r) for any radius (series branch near 0 avoids the
// sinh(2r) - 2r cancellation).
double weight_slope(double r);

// Morawetz potential
//   M(t) = -4pi * sum [ u_t a' u_r + (1/2) u_t u ] sinh^2(r) dr,
// with u_r evaluated spectrally from the sine series of w.
double potential(const WaveState& state, const MorawetzWeight& wt);

// Streaming monitor: feed one state per step (uniform dt), then finalize.
// For driven runs the per-step error field N (physical-space density, the
// right side of  u_tt - Laplacian u + u^3 = N) enters the L1 error norms.
struct MorawetzReport {
    double dt = 0.0;
    std::vector<double> t;
    std::vector<double> m;            // M(t)
    std::vector<double> dmdt_fd;      // centered differences (one-sided at ends)
    std::vector<double> quarter_l4;   // (1/4)||u(t)||_4^4
    std::vector<double> err_n_zeta;   // ||N u||_L1 at t
    std::vector<double> err_n_grad;   // ||N grad u||_L1 at t
    std::vector<double> margin;       // dmdt_fd - quarter_l4 + errors
    std::vector<double> boundary;     // wall flux term 2pi a' sinh^2 u_r^2 at r_max

    // Probe cross-checks of the derivative identity dM/dt = I+II+III+IV.
    struct Probe {
        double t;
        double term_i, term_ii, term_iii, term_iv;
        double sum, dmdt_fd;
    };
    std::vector<Probe> probes;

    // Summary.
    double sup_e = 0.0;              // sup_t total energy
    double l4_time_integral = 0.0;   // integral of ||u||_4^4 dt
    double err_time_integral = 0.0;  // integral of the two L1 error norms
    double pointwise_tolerance = 0.0;
    double pointwise_pass_fraction = 0.0;  // fraction of interior steps with
                                           // margin >= -tolerance
    double c_measured = 0.0;         // l4 integral / (sup_e + err integral)
    double sup_abs_m = 0.0;
    double max_weight_residual = 0.0;  // max |Delta a - 1| over nodes
};

class MorawetzMonitor {
public:
    MorawetzMonitor(MorawetzWeight weight, double dt, std::size_t expected_steps);

    // err_field: optional physical-space error density N at this time.
    void feed(const WaveState& state, const RadialField* err_field = nullptr);

    MorawetzReport finalize() const;

private:
    MorawetzWeight weight_;
    double dt_;
    std::size_t expected_steps_;
    std::vector<std::size_t> probe_steps_;
    MorawetzReport report_;
    std::vector<WaveState> probe_states_;
    std::vector<std::optional<RadialField>> probe_errors_;
};

// Convenience wrapper for in-memory trajectories sampled at uniform dt.
// Throws ConfigError when the sampling is non-uniform.
MorawetzReport monitor(const std::vector<WaveState>& trajectory, const MorawetzWeight& wt,
                       const std::function<RadialField(double t)>& sources = nullptr);

// |Delta a - 1| residual at every interior node, with a'' taken by centered
// finite differences of the closed-form slope.
std::vector<double> weight_residual(const MorawetzWeight& wt);

} // namespace h3wave
