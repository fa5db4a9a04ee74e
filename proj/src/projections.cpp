#include "h3wave/projections.hpp"

#include <cmath>
#include <stdexcept>

#include "h3wave/spectral.hpp"

namespace h3wave {

namespace {

void check_scale(double s, const char* who) {
    if (s < 0.0 || !std::isfinite(s))
        throw std::invalid_argument(std::string(who) + ": scale must be non-negative");
}

} // namespace

RadialField p_geq(const RadialField& f, double s) {
    check_scale(s, "p_geq");
    return heat_flow(f, s);
}

RadialField p_lt(const RadialField& f, double s) {
    check_scale(s, "p_lt");
    SpectralField F = forward(f);
    for (std::size_t j = 0; j < F.size(); ++j) {
        const double lam = F.frequency(j);
        F[j] *= 1.0 - std::exp(-s * (lam * lam + 1.0));
    }
    return inverse(F);
}

RadialField p_band(const RadialField& f, double s) {
    check_scale(s, "p_band");
    SpectralField F = forward(f);
    for (std::size_t j = 0; j < F.size(); ++j) {
        const double lam = F.frequency(j);
        const double x = s * (lam * lam + 1.0);
        F[j] *= x * std::exp(-x);
    }
    return inverse(F);
}

SplitData split_state(const WaveState& state, double s0) {
    check_scale(s0, "split_state");

    SplitData out;
    out.s0 = s0;
    out.lo.t = out.hi.t = state.t;

    for (int comp = 0; comp < 2; ++comp) {
        const RadialField& field = comp == 0 ? state.w : state.w_t;
        SpectralField full = forward(field);
        SpectralField lo = full;
        SpectralField hi = full;
        for (std::size_t j = 0; j < full.size(); ++j) {
            const double lam = full.frequency(j);
            const double low_gain = std::exp(-s0 * (lam * lam + 1.0));
            lo[j] = low_gain * full[j];
            hi[j] = full[j] - lo[j];
        }
        (comp == 0 ? out.lo.w : out.lo.w_t) = inverse(lo);
        (comp == 0 ? out.hi.w : out.hi.w_t) = inverse(hi);
    }
    return out;
}

std::vector<BernsteinRow> bernstein_report(const RadialField& f,
                                           const std::vector<double>& s_list) {
    SpectralField F = forward(f);

    double l2_sq = 0.0;
    double grad_sq = 0.0;
    for (std::size_t j = 0; j < F.size(); ++j) {
        const double lam = F.frequency(j);
        l2_sq += F[j] * F[j];
        grad_sq += (lam * lam + 1.0) * F[j] * F[j];
    }

    std::vector<BernsteinRow> rows;
    if (l2_sq == 0.0) return rows;  // ratios undefined for the zero field

    for (double s : s_list) {
        check_scale(s, "bernstein_report");
        double p_lt_sq = 0.0;
        double grad_p_geq_sq = 0.0;
        for (std::size_t j = 0; j < F.size(); ++j) {
            const double lam = F.frequency(j);
            const double x = s * (lam * lam + 1.0);
            const double lt_gain = 1.0 - std::exp(-x);
            const double geq_gain = std::exp(-x);
            p_lt_sq += lt_gain * lt_gain * F[j] * F[j];
            grad_p_geq_sq += (lam * lam + 1.0) * geq_gain * geq_gain * F[j] * F[j];
        }
        BernsteinRow row;
        row.s = s;
        row.ratio_low = std::sqrt(p_lt_sq) / (std::sqrt(s) * std::sqrt(grad_sq));
        row.ratio_grad_high = std::sqrt(grad_p_geq_sq) * std::sqrt(s) / std::sqrt(l2_sq);
        rows.push_back(row);
    }
    return rows;
}

} // namespace h3wave
