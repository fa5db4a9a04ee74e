#include "h3wave.h"

#include <cstring>
#include <new>
#include <string>

#include "h3wave/errors.hpp"
#include "h3wave/experiments.hpp"
#include "h3wave/norms.hpp"
#include "h3wave/projections.hpp"
#include "h3wave/spectral.hpp"
#include "h3wave/synth.hpp"

using namespace h3wave;

struct h3w_grid {
    GridPtr grid;
};

struct h3w_state {
    WaveState state;
};

namespace {

thread_local std::string g_last_error;

h3w_status fail(h3w_status code, const char* what) {
    g_last_error = what;
    return code;
}

// Runs the body and translates exceptions into status codes.
template <typename Fn>
h3w_status guarded(Fn&& fn) {
    try {
        fn();
        return H3W_OK;
    } catch (const ConfigError& e) {
        return fail(H3W_ERR_CONFIG, e.what());
    } catch (const NumericError& e) {
        return fail(H3W_ERR_NUMERIC, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(H3W_ERR_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(H3W_ERR_UNKNOWN, "out of memory");
    } catch (const std::exception& e) {
        return fail(H3W_ERR_UNKNOWN, e.what());
    }
}

h3w_status require(bool ok, const char* what) {
    return ok ? H3W_OK : fail(H3W_ERR_ARGUMENT, what);
}

} // namespace

extern "C" {

const char* h3w_version(void) { return "1.0.0"; }

const char* h3w_last_error(void) { return g_last_error.c_str(); }

h3w_status h3w_grid_create(double r_max, size_t n, h3w_grid** out) {
    if (h3w_status st = require(out != nullptr, "h3w_grid_create: out is NULL")) return st;
    *out = nullptr;
    return guarded([&] { *out = new h3w_grid{make_grid(r_max, n)}; });
}

void h3w_grid_destroy(h3w_grid* grid) { delete grid; }

h3w_status h3w_grid_info(const h3w_grid* grid, double* r_max, size_t* n, double* dr) {
    if (h3w_status st = require(grid != nullptr, "h3w_grid_info: grid is NULL")) return st;
    if (r_max) *r_max = grid->grid->r_max();
    if (n) *n = grid->grid->n();
    if (dr) *dr = grid->grid->dr();
    return H3W_OK;
}

h3w_status h3w_state_synthesize(const h3w_grid* grid, const char* kind, double s,
                                uint64_t seed, size_t k_min, double amplitude,
                                h3w_state** out) {
    if (h3w_status st = require(grid && kind && out, "h3w_state_synthesize: NULL argument"))
        return st;
    *out = nullptr;
    return guarded([&] {
        DataSpec spec;
        spec.kind = parse_data_kind(kind);
        spec.s = s;
        spec.seed = seed;
        spec.k_min = k_min;
        spec.amplitude = amplitude;
        *out = new h3w_state{synthesize(spec, grid->grid)};
    });
}

h3w_status h3w_state_create(const h3w_grid* grid, const double* w, const double* w_t,
                            size_t len, double t, h3w_state** out) {
    if (h3w_status st = require(grid && w && w_t && out, "h3w_state_create: NULL argument"))
        return st;
    *out = nullptr;
    return guarded([&] {
        if (len != grid->grid->size())
            throw std::invalid_argument("h3w_state_create: len must equal n-1");
        std::vector<double> wv(w, w + len);
        std::vector<double> vv(w_t, w_t + len);
        *out = new h3w_state{WaveState{RadialField(grid->grid, std::move(wv)),
                                       RadialField(grid->grid, std::move(vv)), t}};
    });
}

void h3w_state_destroy(h3w_state* state) { delete state; }

h3w_status h3w_state_clone(const h3w_state* state, h3w_state** out) {
    if (h3w_status st = require(state && out, "h3w_state_clone: NULL argument")) return st;
    *out = nullptr;
    return guarded([&] { *out = new h3w_state{state->state}; });
}

h3w_status h3w_state_time(const h3w_state* state, double* t) {
    if (h3w_status st = require(state && t, "h3w_state_time: NULL argument")) return st;
    *t = state->state.t;
    return H3W_OK;
}

h3w_status h3w_state_samples(const h3w_state* state, double* w, double* w_t, size_t len) {
    if (h3w_status st = require(state != nullptr, "h3w_state_samples: state is NULL"))
        return st;
    if (len != state->state.w.size())
        return fail(H3W_ERR_ARGUMENT, "h3w_state_samples: len must equal n-1");
    if (w) std::memcpy(w, state->state.w.values().data(), len * sizeof(double));
    if (w_t) std::memcpy(w_t, state->state.w_t.values().data(), len * sizeof(double));
    return H3W_OK;
}

h3w_status h3w_state_propagate(h3w_state* state, double t) {
    if (h3w_status st = require(state != nullptr, "h3w_state_propagate: state is NULL"))
        return st;
    return guarded([&] { wave_propagate_inplace(state->state, t); });
}

h3w_status h3w_state_step_cubic(h3w_state* state, double dt, size_t nsteps) {
    if (h3w_status st = require(state != nullptr, "h3w_state_step_cubic: state is NULL"))
        return st;
    return guarded([&] {
        for (size_t i = 0; i < nsteps; ++i) state->state = step_cubic(state->state, dt);
    });
}

h3w_status h3w_state_heat_flow(h3w_state* state, double s) {
    if (h3w_status st = require(state != nullptr, "h3w_state_heat_flow: state is NULL"))
        return st;
    return guarded([&] {
        state->state.w = heat_flow(state->state.w, s);
        state->state.w_t = heat_flow(state->state.w_t, s);
    });
}

h3w_status h3w_state_split(const h3w_state* state, double s0, h3w_state** hi,
                           h3w_state** lo) {
    if (h3w_status st = require(state && hi && lo, "h3w_state_split: NULL argument"))
        return st;
    *hi = *lo = nullptr;
    return guarded([&] {
        SplitData split = split_state(state->state, s0);
        *hi = new h3w_state{std::move(split.hi)};
        *lo = new h3w_state{std::move(split.lo)};
    });
}

h3w_status h3w_state_energy(const h3w_state* state, double out[4]) {
    if (h3w_status st = require(state && out, "h3w_state_energy: NULL argument")) return st;
    return guarded([&] {
        const EnergyBreakdown e = energy(state->state);
        out[0] = e.kinetic;
        out[1] = e.gradient;
        out[2] = e.potential;
        out[3] = e.total;
    });
}

h3w_status h3w_state_pair_norm(const h3w_state* state, double sigma, double* out) {
    if (h3w_status st = require(state && out, "h3w_state_pair_norm: NULL argument"))
        return st;
    return guarded([&] { *out = pair_norm(state->state, sigma); });
}

h3w_status h3w_state_lq_norm(const h3w_state* state, double q, double* out) {
    if (h3w_status st = require(state && out, "h3w_state_lq_norm: NULL argument")) return st;
    return guarded([&] { *out = lq_norm(state->state.w, q); });
}

h3w_status h3w_run(const char* command, const char* config_path, const char* out_dir,
                   int workers, int64_t seed) {
    if (h3w_status st = require(command && out_dir, "h3w_run: NULL argument")) return st;
    return guarded([&] {
        RunConfig cfg = config_path ? RunConfig::from_file(config_path) : RunConfig();
        RunOptions options;
        options.out_dir = out_dir;
        options.workers = workers;
        if (seed >= 0) options.seed_override = static_cast<std::uint64_t>(seed);
        h3wave::run(command, cfg, options);
    });
}

h3w_status h3w_threshold(long long* num, long long* den) {
    if (h3w_status st = require(num && den, "h3w_threshold: NULL argument")) return st;
    const Rational r = threshold_calculator();
    *num = r.numerator();
    *den = r.denominator();
    return H3W_OK;
}

h3w_status h3w_selftest(int verbose) {
    h3w_status result = H3W_OK;
    h3w_status st = guarded([&] {
        if (selftest(verbose != 0) != 0) result = fail(H3W_ERR_NUMERIC, "selftest checks failed");
    });
    return st != H3W_OK ? st : result;
}

} // extern "C"
