#pragma once

#include <cstddef>
#include <functional>
#include <limits>

namespace seqscreen {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // sum of |K15 - G7| over the final intervals
    std::size_t evaluations = 0;
    std::size_t intervals = 0;
    double min_integrand = std::numeric_limits<double>::infinity();  // smallest sampled value
    bool converged = false;
};

struct QuadratureOptions {
    double absolute_tolerance = 1e-10;
    std::size_t max_intervals = 2000;
};

// Globally adaptive 7/15-point Gauss-Kronrod integration: the interval with
// the largest local error is bisected until the summed error estimate drops
// below the tolerance or the interval budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lower, double upper,
                                    const QuadratureOptions& options = {});

}  // namespace seqscreen
