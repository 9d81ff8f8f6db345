#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "seqscreen/screening.hpp"

namespace seqscreen {

// Coefficients of A·φ² + B·φ + C = 0, obtained by equating ppv and npv.
struct QuadraticCoefficients {
    double a;
    double b;
    double c;
};

QuadraticCoefficients quadratic_coefficients(const TestCharacteristics& test) noexcept;

// |A| at or below this selects the perturbed branch.
inline constexpr double kDegenerateLeadingCoefficient = 1e-10;
// Shift applied to the specificity on the perturbed branch.
inline constexpr double kSpecificityPerturbation = 1e-6;
inline constexpr double kMaxIntersectionResidual = 1e-9;
// The perturbed root is displaced by O(db); its residual is checked against this.
inline constexpr double kMaxPerturbedResidual = 1e-4;

enum class IntersectionMethod { ClosedForm, PerturbedClosedForm };

std::string_view to_string(IntersectionMethod method) noexcept;

struct IntersectionResult {
    Probability phi_i;
    IntersectionMethod method = IntersectionMethod::ClosedForm;
    double residual = 0.0;  // |ppv(φ_i) - npv(φ_i)|
};

// Pre-test probability where the PPV and NPV curves cross:
//   φ_i = (b - b² - √(ab(ab - a + 1 - b))) / (a² - b² - a + b)
// When the denominator vanishes (a ≈ b) the specificity is shifted by
// kSpecificityPerturbation and the same expression is used.
//
// Throws NoUniqueIntersection for uninformative tests and for tests with a
// sensitivity or specificity of exactly 0 or 1 (the curves then meet only at
// a boundary where one of them jumps), NumericalFailure when the residual
// check fails.
IntersectionResult intersection_point(const TestCharacteristics& test);

enum class Dominance { NegativeDominant, Balanced, PositiveDominant };

std::string_view to_string(Dominance dominance) noexcept;

inline constexpr double kBalancedTolerance = 1e-12;

Dominance classify_dominance(const TestCharacteristics& test, Probability pretest_probability);

inline constexpr double kPartitionTolerance = 1e-10;

struct PartitionReport {
    Probability phi_i;
    IntersectionMethod method = IntersectionMethod::ClosedForm;
    double ndp_area = 0.0;  // ∫₀^φi (npv - ppv)
    double pdp_area = 0.0;  // ∫φi^1 (ppv - npv)
    double quadrature_error_estimate = 0.0;
    double min_gap = 0.0;  // smallest integrand value sampled on either side
};

PartitionReport partition_areas(const TestCharacteristics& test);

struct CurveSample {
    std::vector<Probability> phi_values;
    std::vector<Probability> ppv_values;
    std::vector<Probability> npv_values;
};

// Uniform grid over [0, 1] inclusive, n_points >= 2. The endpoints take the
// pinned values ppv(0)=0, ppv(1)=1, npv(0)=1, npv(1)=0.
CurveSample sample_curves(const TestCharacteristics& test, std::size_t n_points);

// Same grid for the serial (all-positive / all-negative) curves of several
// tests applied one after another.
CurveSample sample_serial_curves(std::span<const TestCharacteristics> tests, std::size_t n_points);

}  // namespace seqscreen
