#pragma once

#include <optional>
#include <vector>

namespace h3wave {

// Least-squares line through (log x, log y).
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;   // RMS of log-space residuals
    double slope_stderr = 0.0;   // standard error of the slope estimate
    std::size_t points = 0;
};

// Returns nullopt for degenerate inputs: fewer than two usable points or any
// non-positive sample (such quantities are reported, not fitted).
std::optional<FitResult> fit_loglog(const std::vector<double>& x,
                                    const std::vector<double>& y);

} // namespace h3wave
