#include "h3wave/evolve.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "h3wave/errors.hpp"
#include "h3wave/spectral.hpp"

namespace h3wave {

namespace {

void cubic_kick(WaveState& state, double half_dt) {
    const auto& sinh2_r = state.grid()->sinh2_r();
    auto& wt = state.w_t.values();
    const auto& w = state.w.values();
    for (std::size_t j = 0; j < w.size(); ++j)
        wt[j] -= half_dt * w[j] * w[j] * w[j] / sinh2_r[j];
}

void source_kick(WaveState& state, const RadialField& g, double half_dt) {
    if (!g.all_finite()) throw NumericError("step_forced: source has non-finite samples");
    auto& wt = state.w_t.values();
    const auto& gv = g.values();
    for (std::size_t j = 0; j < gv.size(); ++j) wt[j] += half_dt * gv[j];
}

void check_finite(const WaveState& state, const char* who) {
    if (!state.w.all_finite() || !state.w_t.all_finite()) {
        std::ostringstream oss;
        oss << who << ": non-finite samples at t = " << state.t << " (blow-up or unstable step)";
        throw NumericError(oss.str());
    }
}

} // namespace

StepPlan make_plan(double dt_request, double duration, bool enforce_guard) {
    if (!(dt_request > 0.0)) throw std::invalid_argument("make_plan: dt must be positive");
    if (duration < 0.0) throw std::invalid_argument("make_plan: duration must be non-negative");
    StepPlan plan;
    plan.enforce_guard = enforce_guard;
    plan.t_end = duration;
    if (duration == 0.0) {
        plan.dt = dt_request;
        plan.steps = 0;
        return plan;
    }
    plan.steps = static_cast<std::size_t>(std::ceil(duration / dt_request - 1e-12));
    plan.dt = duration / static_cast<double>(plan.steps);
    return plan;
}

double support_radius(const WaveState& state) {
    const auto& grid = state.grid();
    double peak = 0.0;
    for (std::size_t j = 0; j < state.w.size(); ++j)
        peak = std::max({peak, std::abs(state.w[j]), std::abs(state.w_t[j])});
    if (peak == 0.0) return 0.0;
    const double floor = 1e-13 * peak;
    for (std::size_t j = state.w.size(); j-- > 0;) {
        if (std::abs(state.w[j]) > floor || std::abs(state.w_t[j]) > floor)
            return grid->radius(j);
    }
    return 0.0;
}

WaveState step_linear(const WaveState& state, double dt) {
    return wave_propagate(state, dt);
}

WaveState step_cubic(const WaveState& state, double dt) {
    if (dt == 0.0) return state;
    WaveState out = state;
    cubic_kick(out, 0.5 * dt);
    wave_propagate_inplace(out, dt);
    cubic_kick(out, 0.5 * dt);
    check_finite(out, "step_cubic");
    return out;
}

WaveState step_forced(const WaveState& state, const SourceHook& src, double dt) {
    if (dt == 0.0) return state;
    WaveState out = state;
    if (src) source_kick(out, src(state.t), 0.5 * dt);
    wave_propagate_inplace(out, dt);
    if (src) source_kick(out, src(out.t), 0.5 * dt);
    check_finite(out, "step_forced");
    return out;
}

RunSummary evolve_run(const WaveState& state, const StepPlan& plan, StepperKind kind,
                      const std::vector<Observer>& observers, const SourceHook& src) {
    if (plan.enforce_guard && kind == StepperKind::Cubic) {
        const double needed = support_radius(state) + plan.t_end + 1.0;
        if (needed > state.grid()->r_max()) {
            std::ostringstream oss;
            oss << "evolve_run: domain guard violated: r_support + T + 1 = " << needed
                << " exceeds r_max = " << state.grid()->r_max();
            throw ConfigError(oss.str());
        }
    }

    WaveState current = state;
    for (const auto& obs : observers) obs(current, 0);
    for (std::size_t i = 1; i <= plan.steps; ++i) {
        switch (kind) {
            case StepperKind::Linear: current = step_linear(current, plan.dt); break;
            case StepperKind::Cubic: current = step_cubic(current, plan.dt); break;
            case StepperKind::Forced: current = step_forced(current, src, plan.dt); break;
        }
        for (const auto& obs : observers) obs(current, i);
    }
    return RunSummary{std::move(current), plan.steps};
}

} // namespace h3wave
