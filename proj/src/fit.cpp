#include "h3wave/fit.hpp"

#include <cmath>

namespace h3wave {

std::optional<FitResult> fit_loglog(const std::vector<double>& x,
                                    const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::nullopt;

    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) return std::nullopt;

    FitResult fit;
    fit.points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += r * r;
    }
    fit.rms_residual = std::sqrt(ss_res / static_cast<double>(n));
    if (n > 2) fit.slope_stderr = std::sqrt(ss_res / static_cast<double>(n - 2) / sxx);
    return fit;
}

} // namespace h3wave
