#pragma once

#include <functional>
#include <vector>

#include "h3wave/grid.hpp"

namespace h3wave {

// Sine-series coefficients of a RadialField. Mode k (1-based) carries the
// frequency lambda_k = k*pi/r_max; coefficient arrays are 0-based, so
// coeffs[j] belongs to mode k = j+1.
//
// Normalization: with w_i the node samples,
//     what_k = sqrt(2/r_max) * dr * sum_i w_i sin(lambda_k r_i)
//     w_i    = sqrt(2/r_max) * sum_k what_k sin(lambda_k r_i)
// which gives the discrete Parseval identity
//     sum_k what_k^2 = dr * sum_i w_i^2.
// Under w = sinh(r)*u this is the radial Fourier calculus of the truncated
// hyperbolic problem: -Laplacian acts diagonally with symbol lambda^2 + 1.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(GridPtr grid, std::vector<double> coeffs);
    explicit SpectralField(GridPtr grid);

    const GridPtr& grid() const { return grid_; }
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<double>& coeffs() const { return coeffs_; }
    std::vector<double>& coeffs() { return coeffs_; }
    double operator[](std::size_t j) const { return coeffs_[j]; }
    double& operator[](std::size_t j) { return coeffs_[j]; }

    // Frequency of the mode stored at array index j.
    double frequency(std::size_t j) const;

private:
    GridPtr grid_;
    std::vector<double> coeffs_;
};

// Scalar symbol evaluated at grid frequencies.
using SpectralMultiplier = std::function<double(double lambda)>;

SpectralField forward(const RadialField& f);
RadialField inverse(const SpectralField& F);

// coeffs_k <- m(lambda_k) * coeffs_k. Throws NumericError if the symbol is
// non-finite at any grid frequency.
SpectralField apply_multiplier(const SpectralField& F, const SpectralMultiplier& m);

// Heat semigroup e^{s*Laplacian}: multiplier exp(-s*(lambda^2+1)). s >= 0.
RadialField heat_flow(const RadialField& f, double s);

// (-Laplacian)^{sigma/2}: multiplier (lambda^2+1)^{sigma/2}. Any real sigma;
// the spectrum floor lambda^2+1 >= 1 keeps the symbol finite.
RadialField fractional_laplacian(const RadialField& f, double sigma);

// Exact free-wave propagator: per-mode rotation with omega = sqrt(lambda^2+1),
//     what   <- what*cos(omega t) + what_t*sin(omega t)/omega
//     what_t <- -what*omega*sin(omega t) + what_t*cos(omega t)
// and the time stamp advanced by t. Conserves sum (lambda^2+1) what^2 + what_t^2.
WaveState wave_propagate(const WaveState& state, double t);

// In-place variant used by the steppers.
void wave_propagate_inplace(WaveState& state, double t);

// Node values of dw/dr obtained by differentiating the sine series.
// Returns n+1 values at r_0 = 0, r_1, ..., r_n = r_max (the endpoint slopes
// come for free from the cosine series and feed the boundary monitors).
std::vector<double> radial_derivative(const RadialField& f);

} // namespace h3wave
