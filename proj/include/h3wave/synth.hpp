#pragma once

#include <cstdint>
#include <string>

#include "h3wave/grid.hpp"

namespace h3wave {

enum class DataKind { PowerLaw, Bump, SingleMode };

DataKind parse_data_kind(const std::string& name);
std::string data_kind_name(DataKind kind);

// Deterministic initial data of prescribed regularity.
//
// power_law: what_k = sign(seed,k) * (lambda_k^2+1)^{-(s/2+1/4)} for k >= k_min,
//            what_t,k with an independent sign stream and exponent
//            -((s-1)/2+1/4). The exponents make the pair land exactly on the
//            H^s x H^{s-1} boundary (H^sigma finite iff sigma < s).
// bump:      a fixed C-infinity compactly supported profile with u_t = 0,
//            centered at r = 3 with half-width 2.
// single_mode: one sine mode at k = k_min with u_t = 0.
//
// Every kind is rescaled so pair_norm(state, s) = amplitude.
struct DataSpec {
    double s = 0.95;
    std::uint64_t seed = 1;
    std::size_t k_min = 1;
    double amplitude = 1.0;
    DataKind kind = DataKind::PowerLaw;
};

WaveState synthesize(const DataSpec& spec, const GridPtr& grid);

// Deterministic +/-1 stream used for the power-law signs; exposed so tests
// can reproduce the un-rescaled coefficient law.
double synth_sign(std::uint64_t seed, std::uint64_t k, std::uint64_t component);

} // namespace h3wave
