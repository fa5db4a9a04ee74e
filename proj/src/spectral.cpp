#include "h3wave/spectral.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

#include "h3wave/errors.hpp"

namespace h3wave {

namespace {

// FFTW r2r plans per transform length. Plans are created once under a lock
// (the FFTW planner is not thread-safe) and then executed concurrently via
// the new-array interface on per-thread scratch buffers.
struct PlanSet {
    fftw_plan dst = nullptr;  // RODFT00 on n-1 interior samples
    fftw_plan dct = nullptr;  // REDFT00 on n+1 samples (derivative evaluation)
};

std::mutex g_plan_mutex;
std::map<std::size_t, PlanSet>& plan_cache() {
    static std::map<std::size_t, PlanSet> cache;
    return cache;
}

const PlanSet& plans_for(std::size_t n) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    PlanSet set;
    {
        double* a = fftw_alloc_real(n + 1);
        double* b = fftw_alloc_real(n + 1);
        set.dst = fftw_plan_r2r_1d(static_cast<int>(n - 1), a, b, FFTW_RODFT00, FFTW_ESTIMATE);
        set.dct = fftw_plan_r2r_1d(static_cast<int>(n + 1), a, b, FFTW_REDFT00, FFTW_ESTIMATE);
        fftw_free(a);
        fftw_free(b);
    }
    return cache.emplace(n, set).first->second;
}

// Aligned scratch, one pair per thread so concurrent transforms never share.
struct Scratch {
    double* in = nullptr;
    double* out = nullptr;
    std::size_t cap = 0;

    void ensure(std::size_t len) {
        if (cap >= len) return;
        fftw_free(in);
        fftw_free(out);
        in = fftw_alloc_real(len);
        out = fftw_alloc_real(len);
        cap = len;
    }
    ~Scratch() {
        fftw_free(in);
        fftw_free(out);
    }
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

} // namespace

SpectralField::SpectralField(GridPtr grid, std::vector<double> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_->size())
        throw std::invalid_argument("SpectralField: coefficient count does not match grid");
}

SpectralField::SpectralField(GridPtr grid)
    : grid_(std::move(grid)), coeffs_(grid_->size(), 0.0) {}

double SpectralField::frequency(std::size_t j) const {
    return static_cast<double>(j + 1) * M_PI / grid_->r_max();
}

SpectralField forward(const RadialField& f) {
    const auto& grid = f.grid();
    const std::size_t n = grid->n();
    const std::size_t m = n - 1;
    const PlanSet& plans = plans_for(n);
    Scratch& s = scratch();
    s.ensure(n + 1);

    std::memcpy(s.in, f.values().data(), m * sizeof(double));
    fftw_execute_r2r(plans.dst, s.in, s.out);

    // RODFT00 yields Y_k = 2 sum_i w_i sin(pi k i / n); rescale to the
    // Parseval convention sum what^2 = dr * sum w^2.
    const double factor = std::sqrt(grid->dr() / (2.0 * static_cast<double>(n)));
    std::vector<double> coeffs(m);
    for (std::size_t j = 0; j < m; ++j) coeffs[j] = factor * s.out[j];
    return SpectralField(grid, std::move(coeffs));
}

RadialField inverse(const SpectralField& F) {
    const auto& grid = F.grid();
    const std::size_t n = grid->n();
    const std::size_t m = n - 1;
    const PlanSet& plans = plans_for(n);
    Scratch& s = scratch();
    s.ensure(n + 1);

    std::memcpy(s.in, F.coeffs().data(), m * sizeof(double));
    fftw_execute_r2r(plans.dst, s.in, s.out);

    const double factor = 1.0 / std::sqrt(2.0 * static_cast<double>(n) * grid->dr());
    std::vector<double> values(m);
    for (std::size_t j = 0; j < m; ++j) values[j] = factor * s.out[j];
    return RadialField(grid, std::move(values));
}

SpectralField apply_multiplier(const SpectralField& F, const SpectralMultiplier& m) {
    SpectralField out = F;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double mj = m(out.frequency(j));
        if (!std::isfinite(mj))
            throw NumericError("apply_multiplier: symbol is non-finite at a grid frequency");
        out[j] *= mj;
    }
    return out;
}

RadialField heat_flow(const RadialField& f, double s) {
    if (s < 0.0) throw std::invalid_argument("heat_flow: scale must be non-negative");
    if (s == 0.0) return f;
    SpectralField F = forward(f);
    for (std::size_t j = 0; j < F.size(); ++j) {
        const double lam = F.frequency(j);
        F[j] *= std::exp(-s * (lam * lam + 1.0));
    }
    return inverse(F);
}

RadialField fractional_laplacian(const RadialField& f, double sigma) {
    if (sigma == 0.0) return f;
    SpectralField F = forward(f);
    for (std::size_t j = 0; j < F.size(); ++j) {
        const double lam = F.frequency(j);
        F[j] *= std::pow(lam * lam + 1.0, 0.5 * sigma);
    }
    return inverse(F);
}

void wave_propagate_inplace(WaveState& state, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("wave_propagate: time must be finite");
    if (t == 0.0) return;

    SpectralField W = forward(state.w);
    SpectralField V = forward(state.w_t);
    for (std::size_t j = 0; j < W.size(); ++j) {
        const double lam = W.frequency(j);
        const double omega = std::sqrt(lam * lam + 1.0);
        const double c = std::cos(omega * t);
        const double sn = std::sin(omega * t);
        const double w0 = W[j];
        const double v0 = V[j];
        W[j] = w0 * c + v0 * sn / omega;
        V[j] = -w0 * omega * sn + v0 * c;
    }
    state.w = inverse(W);
    state.w_t = inverse(V);
    state.t += t;
}

WaveState wave_propagate(const WaveState& state, double t) {
    WaveState out = state;
    wave_propagate_inplace(out, t);
    return out;
}

std::vector<double> radial_derivative(const RadialField& f) {
    const auto& grid = f.grid();
    const std::size_t n = grid->n();
    const PlanSet& plans = plans_for(n);
    Scratch& s = scratch();
    s.ensure(n + 1);

    SpectralField F = forward(f);
    s.in[0] = 0.0;
    s.in[n] = 0.0;
    for (std::size_t j = 0; j < n - 1; ++j) s.in[j + 1] = F.frequency(j) * F[j];
    fftw_execute_r2r(plans.dct, s.in, s.out);

    // REDFT00 yields Y_i = 2 sum_k X_k cos(pi k i / n) for zero endpoints.
    const double factor = 0.5 * std::sqrt(2.0 / grid->r_max());
    std::vector<double> deriv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) deriv[i] = factor * s.out[i];
    return deriv;
}

} // namespace h3wave
