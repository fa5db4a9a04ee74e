/* C interface to the h3wave library.
 *
 * All entry points return an h3w_status; non-zero means failure and
 * h3w_last_error() carries a thread-local description. Objects are opaque
 * handles created and destroyed through this interface.
 */
#ifndef H3WAVE_H
#define H3WAVE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum h3w_status {
    H3W_OK = 0,
    H3W_ERR_ARGUMENT = 1, /* invalid argument or precondition violation */
    H3W_ERR_CONFIG = 2,   /* configuration file / field rejected */
    H3W_ERR_NUMERIC = 3,  /* numerical abort (blow-up, failed check) */
    H3W_ERR_IO = 4,       /* file system failure */
    H3W_ERR_UNKNOWN = 5
} h3w_status;

typedef struct h3w_grid h3w_grid;
typedef struct h3w_state h3w_state;

const char* h3w_version(void);

/* Thread-local message for the most recent failure in this thread. */
const char* h3w_last_error(void);

/* --- grids ---------------------------------------------------------- */

h3w_status h3w_grid_create(double r_max, size_t n, h3w_grid** out);
void h3w_grid_destroy(h3w_grid* grid);
h3w_status h3w_grid_info(const h3w_grid* grid, double* r_max, size_t* n, double* dr);

/* --- wave states ------------------------------------------------------ */

/* Builds the deterministic initial data of the given kind
 * ("power_law", "bump", "single_mode"). */
h3w_status h3w_state_synthesize(const h3w_grid* grid, const char* kind, double s,
                                uint64_t seed, size_t k_min, double amplitude,
                                h3w_state** out);

/* Wraps raw samples of w and w_t at the n-1 interior nodes. */
h3w_status h3w_state_create(const h3w_grid* grid, const double* w, const double* w_t,
                            size_t len, double t, h3w_state** out);

void h3w_state_destroy(h3w_state* state);

h3w_status h3w_state_clone(const h3w_state* state, h3w_state** out);
h3w_status h3w_state_time(const h3w_state* state, double* t);

/* Copies the interior samples; len must equal n-1. */
h3w_status h3w_state_samples(const h3w_state* state, double* w, double* w_t, size_t len);

/* --- operations on states ---------------------------------------------- */

/* Exact free propagation by time t (t may be negative). */
h3w_status h3w_state_propagate(h3w_state* state, double t);

/* nsteps Strang steps of the cubic defocusing flow. */
h3w_status h3w_state_step_cubic(h3w_state* state, double dt, size_t nsteps);

/* Heat-flow low-pass at scale s applied to both components. */
h3w_status h3w_state_heat_flow(h3w_state* state, double s);

/* High/low split at scale s0: *hi + *lo reconstructs the input exactly. */
h3w_status h3w_state_split(const h3w_state* state, double s0, h3w_state** hi,
                           h3w_state** lo);

/* energy[0..3] = kinetic, gradient, potential, total. */
h3w_status h3w_state_energy(const h3w_state* state, double energy[4]);

h3w_status h3w_state_pair_norm(const h3w_state* state, double sigma, double* out);

/* Spatial L^q norm of u = w/sinh r; pass q = INFINITY for the sup norm. */
h3w_status h3w_state_lq_norm(const h3w_state* state, double q, double* out);

/* --- experiments ------------------------------------------------------- */

/* Runs a CLI subcommand (evolve, truncate, sweep, morawetz, strichartz,
 * scatter, threshold, selftest). config_path may be NULL for defaults;
 * seed >= 0 overrides the configured data seed. */
h3w_status h3w_run(const char* command, const char* config_path, const char* out_dir,
                   int workers, int64_t seed);

/* Exact regularity threshold of the closing algebra (182/201). */
h3w_status h3w_threshold(long long* num, long long* den);

/* Built-in quick checks; returns H3W_OK when all pass. */
h3w_status h3w_selftest(int verbose);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* H3WAVE_H */
