#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "h3wave/grid.hpp"

namespace h3wave {

// Fixed-step plan for one run. dt is adjusted downward from the requested
// value so that the horizon is an integer number of steps.
struct StepPlan {
    double dt = 0.0;
    double t_end = 0.0;
    std::size_t steps = 0;
    // When set, cubic runs require r_support + duration + 1 <= r_max so the
    // Dirichlet wall stays outside the light cone of the data.
    bool enforce_guard = false;
};

StepPlan make_plan(double dt_request, double duration, bool enforce_guard = false);

// Effective support radius: the largest node where |w| exceeds
// 1e-13 * max|w|. Zero fields have support 0.
double support_radius(const WaveState& state);

// Forcing hook for the driven linear equation; returns the w-space density
// g(t) entering as  w_tt - w_rr + w = g.
using SourceHook = std::function<RadialField(double t)>;

// One exact free-wave step (identical to wave_propagate).
WaveState step_linear(const WaveState& state, double dt);

// One Strang step of the cubic defocusing equation
//   w_tt - w_rr + w + w^3/sinh^2 r = 0:
// half kick w_t -= (dt/2) w^3/sinh^2 r, exact rotation, half kick.
// Throws NumericError when samples go non-finite.
WaveState step_cubic(const WaveState& state, double dt);

// One Strang step of the driven linear equation with the source sampled at
// both step endpoints: kick (dt/2)*src(t), rotation, kick (dt/2)*src(t+dt).
// A zero source reproduces step_linear exactly.
WaveState step_forced(const WaveState& state, const SourceHook& src, double dt);

enum class StepperKind { Linear, Cubic, Forced };

// Called at t = 0 and after every step; step index runs 0..steps.
using Observer = std::function<void(const WaveState&, std::size_t step)>;

struct RunSummary {
    WaveState final_state;
    std::size_t steps = 0;
};

// Drives a fixed-step evolution, invoking every observer at each sample.
// The source hook is consulted only for StepperKind::Forced.
RunSummary evolve_run(const WaveState& state, const StepPlan& plan, StepperKind kind,
                      const std::vector<Observer>& observers,
                      const SourceHook& src = nullptr);

} // namespace h3wave
