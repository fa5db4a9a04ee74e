#include "h3wave/norms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "h3wave/errors.hpp"
#include "h3wave/spectral.hpp"

namespace h3wave {

namespace {
constexpr double kFourPi = 4.0 * M_PI;
}

double lq_norm(const RadialField& f, double q) {
    if (q < 1.0) throw std::invalid_argument("lq_norm: exponent must be >= 1");
    const auto& grid = f.grid();
    const auto& sinh_r = grid->sinh_r();
    const auto& sinh2_r = grid->sinh2_r();

    if (q == kInf) {
        double m = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j)
            m = std::max(m, std::abs(f[j] / sinh_r[j]));
        return m;
    }

    // |u|^q sinh^2 r = |w|^q sinh^{2-q} r; trapezoid with zero endpoints.
    double sum = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double u = f[j] / sinh_r[j];
        sum += std::pow(std::abs(u), q) * sinh2_r[j];
    }
    return std::pow(kFourPi * sum * grid->dr(), 1.0 / q);
}

double sobolev_norm(const RadialField& f, double sigma) {
    SpectralField F = forward(f);
    double sum = 0.0;
    for (std::size_t j = 0; j < F.size(); ++j) {
        const double lam = F.frequency(j);
        sum += std::pow(lam * lam + 1.0, sigma) * F[j] * F[j];
    }
    return std::sqrt(kFourPi * sum);
}

double pair_norm(const WaveState& state, double sigma) {
    const double a = sobolev_norm(state.w, sigma);
    const double b = sobolev_norm(state.w_t, sigma - 1.0);
    return std::sqrt(a * a + b * b);
}

EnergyBreakdown energy(const WaveState& state) {
    const auto& grid = state.grid();
    SpectralField W = forward(state.w);
    SpectralField V = forward(state.w_t);

    EnergyBreakdown out;
    for (std::size_t j = 0; j < W.size(); ++j) {
        const double lam = W.frequency(j);
        out.gradient += (lam * lam + 1.0) * W[j] * W[j];
        out.kinetic += V[j] * V[j];
    }
    out.gradient *= 0.5 * kFourPi;
    out.kinetic *= 0.5 * kFourPi;

    const auto& sinh2_r = grid->sinh2_r();
    double quartic = 0.0;
    for (std::size_t j = 0; j < state.w.size(); ++j) {
        const double wj = state.w[j];
        quartic += wj * wj * wj * wj / sinh2_r[j];
    }
    out.potential = 0.25 * kFourPi * quartic * grid->dr();
    out.total = out.kinetic + out.gradient + out.potential;
    return out;
}

double SpaceTimeAccumulator::value() const {
    if (p == kInf) return partial;
    return std::pow(partial, 1.0 / p);
}

void SpaceTimeAccumulator::reset(int new_interval_id) {
    partial = 0.0;
    interval_id = new_interval_id;
}

SpaceTimeAccumulator st_accumulate(SpaceTimeAccumulator acc, const WaveState& state,
                                   double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("st_accumulate: dt must be positive");
    const double norm_q = lq_norm(state.w, acc.q);
    if (acc.p == kInf)
        acc.partial = std::max(acc.partial, norm_q);
    else
        acc.partial += dt * std::pow(norm_q, acc.p);
    return acc;
}

std::string strichartz_violation(double p, double q, double gamma) {
    std::ostringstream oss;
    if (!(p >= 2.0)) {
        oss << "p >= 2 violated (p = " << p << ")";
        return oss.str();
    }
    if (!(q >= 2.0)) {
        oss << "q >= 2 violated (q = " << q << ")";
        return oss.str();
    }
    const double ip = p == kInf ? 0.0 : 1.0 / p;
    const double iq = q == kInf ? 0.0 : 1.0 / q;
    if (ip + iq > 0.5 + 1e-12) {
        oss << "1/p + 1/q <= 1/2 violated (1/p + 1/q = " << ip + iq << ")";
        return oss.str();
    }
    const double gamma_req = 1.5 - ip - 3.0 * iq;
    if (std::abs(gamma - gamma_req) > 1e-12) {
        oss << "gamma = 3/2 - 1/p - 3/q violated (expected " << gamma_req << ", got "
            << gamma << ")";
        return oss.str();
    }
    return {};
}

double strichartz_ratio(const WaveState& data, double p, double q, double gamma,
                        double horizon, double dt) {
    const std::string violation = strichartz_violation(p, q, gamma);
    if (!violation.empty()) throw ConfigError("strichartz_ratio: " + violation);
    if (!(horizon > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("strichartz_ratio: horizon and dt must be positive");

    const double denom = pair_norm(data, gamma);
    if (denom == 0.0) return 0.0;

    const std::size_t steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
    const double h = horizon / static_cast<double>(steps);

    SpaceTimeAccumulator acc{p, q, 0.0, 0};
    WaveState state = data;
    for (std::size_t i = 0; i < steps; ++i) {
        acc = st_accumulate(acc, state, h);  // left endpoint of step i
        wave_propagate_inplace(state, h);
    }
    if (p == kInf) acc = st_accumulate(acc, state, h);  // include the final time
    return acc.value() / denom;
}

} // namespace h3wave
