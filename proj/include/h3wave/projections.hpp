#pragma once

#include <vector>

#include "h3wave/grid.hpp"

namespace h3wave {

// Heat-flow frequency projections. The semigroup e^{s*Laplacian} acts as a
// low-pass at scale 1/sqrt(s); its complement carries the high frequencies.
// Per mode the pair multiplies by exp(-s(lambda^2+1)) and 1-exp(-s(lambda^2+1)),
// which sum to 1 exactly.

// Low-pass: multiplier exp(-s*(lambda^2+1)). s >= 0.
RadialField p_geq(const RadialField& f, double s);

// Complement: f - p_geq(f, s), applied mode-by-mode so complementarity is exact.
RadialField p_lt(const RadialField& f, double s);

// Band projection: multiplier s*(lambda^2+1)*exp(-s*(lambda^2+1)).
RadialField p_band(const RadialField& f, double s);

// High/low split of a wave pair at truncation scale s0:
//   lo = e^{s0*Laplacian} applied to both components, hi = state - lo.
struct SplitData {
    WaveState hi;
    WaveState lo;
    double s0 = 0.0;
};

SplitData split_state(const WaveState& state, double s0);

// Bernstein diagnostics at p = 2. For each scale s the row reports
//   ratio_low      = ||P_{<s} f||_L2 / (sqrt(s) * ||grad f||_L2)
//   ratio_grad_high= ||grad P_{>=s} f||_L2 / (||f||_L2 / sqrt(s))
// with the gradient norm taken spectrally as ||(-Lap)^{1/2} f||. A zero
// field yields an empty report (the ratios are undefined).
struct BernsteinRow {
    double s;
    double ratio_low;
    double ratio_grad_high;
};

std::vector<BernsteinRow> bernstein_report(const RadialField& f,
                                           const std::vector<double>& s_list);

} // namespace h3wave
