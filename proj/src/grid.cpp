#include "h3wave/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace h3wave {

RadialGrid::RadialGrid(double r_max, std::size_t n)
    : r_max_(r_max), n_(n), dr_(r_max / static_cast<double>(n)) {
    if (!(r_max > 0.0) || !std::isfinite(r_max))
        throw std::invalid_argument("RadialGrid: r_max must be positive and finite");
    if (n < 8)
        throw std::invalid_argument("RadialGrid: n must be at least 8");

    const std::size_t m = n - 1;
    r_.resize(m);
    sinh_.resize(m);
    cosh_.resize(m);
    sinh2_.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double r = static_cast<double>(j + 1) * dr_;
        r_[j] = r;
        sinh_[j] = std::sinh(r);
        cosh_[j] = std::cosh(r);
        sinh2_[j] = sinh_[j] * sinh_[j];
        if (!std::isfinite(sinh2_[j]))
            throw std::invalid_argument("RadialGrid: sinh table overflows; reduce r_max");
    }
}

GridPtr make_grid(double r_max, std::size_t n) {
    return std::make_shared<const RadialGrid>(r_max, n);
}

RadialField::RadialField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->size())
        throw std::invalid_argument("RadialField: sample count does not match grid");
}

RadialField::RadialField(GridPtr grid)
    : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

bool RadialField::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

RadialField& RadialField::operator+=(const RadialField& other) {
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
    return *this;
}

RadialField& RadialField::operator-=(const RadialField& other) {
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
    return *this;
}

RadialField& RadialField::operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
}

WaveState& WaveState::operator+=(const WaveState& other) {
    w += other.w;
    w_t += other.w_t;
    return *this;
}

WaveState& WaveState::operator-=(const WaveState& other) {
    w -= other.w;
    w_t -= other.w_t;
    return *this;
}

WaveState& WaveState::operator*=(double c) {
    w *= c;
    w_t *= c;
    return *this;
}

WaveState zero_state(const GridPtr& grid, double t) {
    return WaveState{RadialField(grid), RadialField(grid), t};
}

std::vector<double> to_physical(const RadialField& f) {
    const auto& sinh_r = f.grid()->sinh_r();
    std::vector<double> u(f.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = f[j] / sinh_r[j];
    return u;
}

RadialField from_physical(const GridPtr& grid, const std::vector<double>& u) {
    if (u.size() != grid->size())
        throw std::invalid_argument("from_physical: sample count does not match grid");
    std::vector<double> w(u.size());
    const auto& sinh_r = grid->sinh_r();
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = sinh_r[j] * u[j];
    return RadialField(grid, std::move(w));
}

} // namespace h3wave
