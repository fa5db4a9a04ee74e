#pragma once

#include <limits>
#include <vector>

#include "h3wave/grid.hpp"

namespace h3wave {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Spatial L^q norm of u = w/sinh(r) against the volume measure
// 4*pi*sinh^2(r) dr, by composite trapezoid with implicit zero endpoints.
// q = infinity returns max |u_i|. Requires q >= 1.
double lq_norm(const RadialField& f, double q);

// Sobolev norm (4*pi * sum_k (lambda_k^2+1)^sigma * what_k^2)^{1/2}.
double sobolev_norm(const RadialField& f, double sigma);

// Pair norm (||w||_{H^sigma}^2 + ||w_t||_{H^{sigma-1}}^2)^{1/2}.
double pair_norm(const WaveState& state, double sigma);

// Conserved energy split into its three parts:
//   kinetic  = 1/2 ||u_t||_L2^2           (spectral sum over what_t)
//   gradient = 1/2 ||grad u||_L2^2        (spectral sum with weight lambda^2+1)
//   potential= 1/4 ||u||_L4^4             (node sum of w^4/sinh^2 r)
struct EnergyBreakdown {
    double kinetic = 0.0;
    double gradient = 0.0;
    double potential = 0.0;
    double total = 0.0;
};

EnergyBreakdown energy(const WaveState& state);

// Running space-time norm sum_steps dt * ||u(t)||_q^p over an interval;
// p = infinity keeps the running max of ||u(t)||_q instead.
struct SpaceTimeAccumulator {
    double p = 4.0;
    double q = 4.0;
    double partial = 0.0;
    int interval_id = 0;

    // Finalized norm value: partial^{1/p}, or the running max when p = inf.
    double value() const;
    void reset(int new_interval_id = 0);
};

SpaceTimeAccumulator st_accumulate(SpaceTimeAccumulator acc, const WaveState& state,
                                   double dt);

// Strichartz admissibility for the wave triple (p, q, gamma):
//   p, q >= 2,  1/p + 1/q <= 1/2,  gamma = 3/2 - 1/p - 3/q.
// Returns the empty string when admissible, otherwise the violated
// constraint spelled out.
std::string strichartz_violation(double p, double q, double gamma);

// Ratio ||free evolution of data||_{L^p_t L^q_x([0,T])} / pair_norm(data, gamma),
// computed by exact per-mode propagation sampled at the given step. Throws
// ConfigError naming the violated constraint for inadmissible triples.
double strichartz_ratio(const WaveState& data, double p, double q, double gamma,
                        double horizon, double dt);

} // namespace h3wave
