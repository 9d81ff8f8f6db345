#include "seqscreen/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace seqscreen {

namespace {

// Kronrod abscissae on [0, 1); the odd entries are shared with the 7-point
// Gauss rule. The last abscissa is the centre.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for kKronrodNodes[1], [3], [5] and the centre.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double lower;
    double upper;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment apply_rule(const std::function<double(double)>& f, double lower, double upper, QuadratureResult& stats) {
    const double centre = 0.5 * (lower + upper);
    const double half = 0.5 * (upper - lower);

    auto sample = [&](double x) {
        const double y = f(x);
        ++stats.evaluations;
        stats.min_integrand = std::min(stats.min_integrand, y);
        return y;
    };

    const double fc = sample(centre);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double pair = sample(centre - dx) + sample(centre + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {lower, upper, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lower, double upper,
                                    const QuadratureOptions& options) {
    QuadratureResult result;
    if (lower == upper) {
        result.converged = true;
        result.min_integrand = 0.0;
        return result;
    }

    std::priority_queue<Segment> heap;
    heap.push(apply_rule(f, lower, upper, result));
    double total_error = heap.top().error;

    while (total_error > options.absolute_tolerance && heap.size() < options.max_intervals) {
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lower + worst.upper);
        if (mid <= worst.lower || mid >= worst.upper) {
            heap.push(worst);  // interval can no longer be split in double precision
            break;
        }
        const Segment left = apply_rule(f, worst.lower, mid, result);
        const Segment right = apply_rule(f, mid, worst.upper, result);
        heap.push(left);
        heap.push(right);
        total_error += left.error + right.error - worst.error;
    }

    // Sum smallest-first for a slightly better rounded total.
    std::vector<Segment> segments;
    segments.reserve(heap.size());
    while (!heap.empty()) {
        segments.push_back(heap.top());
        heap.pop();
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& x, const Segment& y) { return std::abs(x.value) < std::abs(y.value); });
    for (const auto& s : segments) {
        result.value += s.value;
        result.error_estimate += s.error;
    }
    result.intervals = segments.size();
    result.converged = result.error_estimate <= options.absolute_tolerance;
    return result;
}

}  // namespace seqscreen
