#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace h3wave {

// Uniform radial grid on [0, r_max] with implicit Dirichlet endpoints.
// Interior nodes are r_i = i*dr for i = 1..n-1 with dr = r_max/n.
//
// Fields on this grid are stored as the weighted amplitude
//     w(r) = sinh(r) * u(r),
// under which the radial hyperbolic Laplacian becomes the flat 1-D
// operator -d^2/dr^2 + 1 and the volume integral of u^2 reduces to
// 4*pi * integral of w^2 dr.
class RadialGrid {
public:
    RadialGrid(double r_max, std::size_t n);

    double r_max() const { return r_max_; }
    std::size_t n() const { return n_; }
    double dr() const { return dr_; }

    // Number of interior nodes (= n-1). Field arrays have this length;
    // array index j corresponds to the node r_{j+1} = (j+1)*dr.
    std::size_t size() const { return n_ - 1; }

    double radius(std::size_t j) const { return r_[j]; }
    const std::vector<double>& radii() const { return r_; }
    const std::vector<double>& sinh_r() const { return sinh_; }
    const std::vector<double>& cosh_r() const { return cosh_; }
    const std::vector<double>& sinh2_r() const { return sinh2_; }

private:
    double r_max_;
    std::size_t n_;
    double dr_;
    std::vector<double> r_;
    std::vector<double> sinh_;
    std::vector<double> cosh_;
    std::vector<double> sinh2_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Builds a grid. Requires r_max > 0 and n >= 8; throws std::invalid_argument
// otherwise.
GridPtr make_grid(double r_max, std::size_t n);

// A radial field in the weighted representation w = sinh(r)*u, sampled at
// the interior nodes of its grid. Value semantics; the grid is shared.
class RadialField {
public:
    RadialField() = default;
    RadialField(GridPtr grid, std::vector<double> values);
    // Zero field on a grid.
    explicit RadialField(GridPtr grid);

    const GridPtr& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }
    double& operator[](std::size_t j) { return values_[j]; }

    bool all_finite() const;

    RadialField& operator+=(const RadialField& other);
    RadialField& operator-=(const RadialField& other);
    RadialField& operator*=(double c);
    friend RadialField operator+(RadialField a, const RadialField& b) { return a += b; }
    friend RadialField operator-(RadialField a, const RadialField& b) { return a -= b; }
    friend RadialField operator*(RadialField a, double c) { return a *= c; }
    friend RadialField operator*(double c, RadialField a) { return a *= c; }

private:
    GridPtr grid_;
    std::vector<double> values_;
};

// A wave pair (w, w_t) at one instant.
struct WaveState {
    RadialField w;
    RadialField w_t;
    double t = 0.0;

    const GridPtr& grid() const { return w.grid(); }

    WaveState& operator+=(const WaveState& other);
    WaveState& operator-=(const WaveState& other);
    WaveState& operator*=(double c);
    friend WaveState operator+(WaveState a, const WaveState& b) { return a += b; }
    friend WaveState operator-(WaveState a, const WaveState& b) { return a -= b; }
    friend WaveState operator*(WaveState a, double c) { return a *= c; }
};

WaveState zero_state(const GridPtr& grid, double t = 0.0);

// Pointwise conversion u_i = w_i / sinh(r_i).
std::vector<double> to_physical(const RadialField& f);

// Inverse of to_physical: w_i = sinh(r_i) * u_i. Throws
// std::invalid_argument on length mismatch.
RadialField from_physical(const GridPtr& grid, const std::vector<double>& u);

} // namespace h3wave
