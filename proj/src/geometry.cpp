#include "seqscreen/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqscreen/quadrature.hpp"
#include "seqscreen/sequence.hpp"

namespace seqscreen {

std::string_view to_string(IntersectionMethod method) noexcept {
    return method == IntersectionMethod::ClosedForm ? "ClosedForm" : "PerturbedClosedForm";
}

std::string_view to_string(Dominance dominance) noexcept {
    switch (dominance) {
        case Dominance::NegativeDominant: return "NegativeDominant";
        case Dominance::Balanced: return "Balanced";
        case Dominance::PositiveDominant: return "PositiveDominant";
    }
    return "Balanced";
}

QuadraticCoefficients quadratic_coefficients(const TestCharacteristics& test) noexcept {
    const double a = test.sensitivity().value();
    const double b = test.specificity().value();
    return {a - b - a * a + b * b, 2.0 * b - 2.0 * b * b, -(b - b * b)};
}

namespace {

double closed_form_root(double a, double b) {
    const double radicand = a * b * (a * b - a + 1.0 - b);
    return (-b * b + b - std::sqrt(std::max(radicand, 0.0))) / (a * a - b * b - a + b);
}

double curve_gap(const TestCharacteristics& test, double phi) {
    const Probability p(phi);
    return ppv(test, p).value() - npv(test, p).value();
}

}  // namespace

IntersectionResult intersection_point(const TestCharacteristics& test) {
    const double a = test.sensitivity().value();
    const double b = test.specificity().value();
    if (!test.informative()) {
        throw ScreeningError(ErrorCode::NoUniqueIntersection,
                             "test '" + test.label() + "' is uninformative (sensitivity + specificity = 1)");
    }
    if (a == 0.0 || a == 1.0 || b == 0.0 || b == 1.0) {
        throw ScreeningError(ErrorCode::NoUniqueIntersection,
                             "test '" + test.label() +
                                 "' has a perfect or null sensitivity/specificity; the curves meet only at a "
                                 "boundary discontinuity");
    }

    IntersectionResult result;
    double root = 0.0;
    double max_residual = kMaxIntersectionResidual;
    if (std::abs(quadratic_coefficients(test).a) > kDegenerateLeadingCoefficient) {
        root = closed_form_root(a, b);
        result.method = IntersectionMethod::ClosedForm;
    } else {
        // Shift away from 1 so the perturbed specificity stays a probability.
        const double shifted = b + kSpecificityPerturbation <= 1.0 ? b + kSpecificityPerturbation
                                                                   : b - kSpecificityPerturbation;
        root = closed_form_root(a, shifted);
        result.method = IntersectionMethod::PerturbedClosedForm;
        max_residual = kMaxPerturbedResidual;
    }

    if (!std::isfinite(root) || root < -1e-12 || root > 1.0 + 1e-12) {
        throw ScreeningError(ErrorCode::NumericalFailure,
                             "intersection for '" + test.label() + "' left the unit interval: " + std::to_string(root));
    }
    result.phi_i = Probability(std::clamp(root, 0.0, 1.0));
    result.residual = std::abs(curve_gap(test, result.phi_i.value()));
    if (!(result.residual <= max_residual)) {
        throw ScreeningError(ErrorCode::NumericalFailure, "intersection residual " + std::to_string(result.residual) +
                                                              " exceeds tolerance for '" + test.label() + "'");
    }
    return result;
}

Dominance classify_dominance(const TestCharacteristics& test, Probability pretest_probability) {
    const double phi_i = intersection_point(test).phi_i.value();
    const double phi = pretest_probability.value();
    if (std::abs(phi - phi_i) <= kBalancedTolerance) return Dominance::Balanced;
    return phi < phi_i ? Dominance::NegativeDominant : Dominance::PositiveDominant;
}

PartitionReport partition_areas(const TestCharacteristics& test) {
    const IntersectionResult crossing = intersection_point(test);
    const double phi_i = crossing.phi_i.value();

    // Half the budget per side so the combined estimate meets the tolerance.
    QuadratureOptions options;
    options.absolute_tolerance = 0.5 * kPartitionTolerance;

    const auto ndp = integrate_adaptive([&](double x) { return -curve_gap(test, x); }, 0.0, phi_i, options);
    const auto pdp = integrate_adaptive([&](double x) { return curve_gap(test, x); }, phi_i, 1.0, options);

    PartitionReport report;
    report.phi_i = crossing.phi_i;
    report.method = crossing.method;
    report.ndp_area = std::max(ndp.value, 0.0);
    report.pdp_area = std::max(pdp.value, 0.0);
    report.quadrature_error_estimate = ndp.error_estimate + pdp.error_estimate;
    report.min_gap = std::min(ndp.min_integrand, pdp.min_integrand);

    if (!ndp.converged || !pdp.converged || report.quadrature_error_estimate > kPartitionTolerance) {
        throw ScreeningError(ErrorCode::QuadratureFailure,
                             "partition quadrature error estimate " + std::to_string(report.quadrature_error_estimate) +
                                 " exceeds " + std::to_string(kPartitionTolerance));
    }
    // ppv - npv is strictly increasing, so a displaced crossing can make the
    // gap negative by at most the crossing residual.
    if (report.min_gap < -(1e-12 + crossing.residual)) {
        throw ScreeningError(ErrorCode::NumericalFailure,
                             "curve gap changes sign inside a partition (min " + std::to_string(report.min_gap) + ")");
    }
    return report;
}

namespace {

template <typename Ppv, typename Npv>
CurveSample sample_grid(std::size_t n_points, Ppv&& ppv_at, Npv&& npv_at) {
    if (n_points < 2) {
        throw ScreeningError(ErrorCode::InvalidArgument, "a curve needs at least 2 points");
    }
    CurveSample sample;
    sample.phi_values.reserve(n_points);
    sample.ppv_values.reserve(n_points);
    sample.npv_values.reserve(n_points);
    const double last = static_cast<double>(n_points - 1);
    for (std::size_t k = 0; k < n_points; ++k) {
        const Probability phi(static_cast<double>(k) / last);
        sample.phi_values.push_back(phi);
        if (k == 0) {
            sample.ppv_values.push_back(Probability::zero());
            sample.npv_values.push_back(Probability::one());
        } else if (k + 1 == n_points) {
            sample.ppv_values.push_back(Probability::one());
            sample.npv_values.push_back(Probability::zero());
        } else {
            sample.ppv_values.push_back(ppv_at(phi));
            sample.npv_values.push_back(npv_at(phi));
        }
    }
    return sample;
}

}  // namespace

CurveSample sample_curves(const TestCharacteristics& test, std::size_t n_points) {
    return sample_grid(
        n_points, [&](Probability p) { return ppv(test, p); }, [&](Probability p) { return npv(test, p); });
}

CurveSample sample_serial_curves(std::span<const TestCharacteristics> tests, std::size_t n_points) {
    if (tests.empty()) {
        throw ScreeningError(ErrorCode::InvalidArgument, "at least one test is required for a curve");
    }
    return sample_grid(
        n_points, [&](Probability p) { return serial_ppv(tests, p); },
        [&](Probability p) { return serial_npv(tests, p); });
}

}  // namespace seqscreen
