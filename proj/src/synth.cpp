#include "h3wave/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "h3wave/errors.hpp"
#include "h3wave/norms.hpp"
#include "h3wave/spectral.hpp"

namespace h3wave {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void validate(const DataSpec& spec) {
    if (!(spec.s > 0.0) || spec.s > 1.0)
        throw ConfigError("data.s: regularity must lie in (0, 1]");
    if (spec.k_min < 1) throw ConfigError("data.k_min: lowest mode must be >= 1");
    if (!(spec.amplitude > 0.0)) throw ConfigError("data.amplitude: must be positive");
}

WaveState power_law_state(const DataSpec& spec, const GridPtr& grid) {
    SpectralField W(grid);
    SpectralField V(grid);
    const double expo_w = -(0.5 * spec.s + 0.25);
    const double expo_v = -(0.5 * (spec.s - 1.0) + 0.25);
    for (std::size_t j = 0; j < W.size(); ++j) {
        const std::size_t k = j + 1;
        if (k < spec.k_min) continue;
        const double lam = W.frequency(j);
        const double base = lam * lam + 1.0;
        W[j] = synth_sign(spec.seed, k, 0) * std::pow(base, expo_w);
        V[j] = synth_sign(spec.seed, k, 1) * std::pow(base, expo_v);
    }
    return WaveState{inverse(W), inverse(V), 0.0};
}

WaveState bump_state(const GridPtr& grid) {
    constexpr double center = 3.0;
    constexpr double width = 2.0;
    std::vector<double> u(grid->size(), 0.0);
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double xi = (grid->radius(j) - center) / width;
        if (std::abs(xi) < 1.0) u[j] = std::exp(-1.0 / (1.0 - xi * xi));
    }
    return WaveState{from_physical(grid, u), RadialField(grid), 0.0};
}

WaveState single_mode_state(const DataSpec& spec, const GridPtr& grid) {
    SpectralField W(grid);
    if (spec.k_min > W.size())
        throw ConfigError("data.k_min: mode index exceeds grid resolution");
    W[spec.k_min - 1] = 1.0;
    return WaveState{inverse(W), RadialField(grid), 0.0};
}

} // namespace

double synth_sign(std::uint64_t seed, std::uint64_t k, std::uint64_t component) {
    const std::uint64_t h = splitmix64(seed ^ splitmix64(k ^ splitmix64(component + 11)));
    return (h >> 63) ? 1.0 : -1.0;
}

DataKind parse_data_kind(const std::string& name) {
    if (name == "power_law") return DataKind::PowerLaw;
    if (name == "bump") return DataKind::Bump;
    if (name == "single_mode") return DataKind::SingleMode;
    throw ConfigError("data.kind: unknown kind '" + name +
                      "' (expected power_law, bump, or single_mode)");
}

std::string data_kind_name(DataKind kind) {
    switch (kind) {
        case DataKind::PowerLaw: return "power_law";
        case DataKind::Bump: return "bump";
        case DataKind::SingleMode: return "single_mode";
    }
    return "?";
}

WaveState synthesize(const DataSpec& spec, const GridPtr& grid) {
    validate(spec);
    WaveState state;
    switch (spec.kind) {
        case DataKind::PowerLaw: state = power_law_state(spec, grid); break;
        case DataKind::Bump: state = bump_state(grid); break;
        case DataKind::SingleMode: state = single_mode_state(spec, grid); break;
    }
    const double norm = pair_norm(state, spec.s);
    if (norm == 0.0)
        throw ConfigError("data: synthesized state is identically zero; check k_min");
    state *= spec.amplitude / norm;
    state.t = 0.0;
    return state;
}

} // namespace h3wave
