#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seqscreen/quadrature.hpp"

namespace seqscreen {
namespace {

TEST(Quadrature, LowDegreePolynomialsConvergeOnOnePanel) {
    // Both G7 and K15 are exact up to degree 13, so the first estimate is accepted.
    const auto r = integrate_adaptive([](double x) { return std::pow(x, 12) - 3 * x * x + 1; }, 0.0, 1.0);
    EXPECT_NEAR(r.value, 1.0 / 13.0, 1e-15);
    EXPECT_EQ(r.intervals, 1u);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.evaluations, 15u);
}

TEST(Quadrature, HigherDegreePolynomial) {
    const auto r = integrate_adaptive([](double x) { return std::pow(x, 20); }, 0.0, 1.0);
    EXPECT_NEAR(r.value, 1.0 / 21.0, 1e-15);
    EXPECT_TRUE(r.converged);
}

TEST(Quadrature, SmoothTranscendental) {
    const auto r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    EXPECT_NEAR(r.value, 2.0, 1e-13);
    EXPECT_LE(r.error_estimate, 1e-10);
}

TEST(Quadrature, SharpPeakNeedsSubdivision) {
    // ∫ 1/(1e-4 + x²) on [-1, 1] = 2·atan(100)/0.01
    const auto r = integrate_adaptive([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0);
    EXPECT_GT(r.intervals, 1u);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 200.0 * std::atan(100.0), 1e-9);
}

TEST(Quadrature, AgreesWithSimpsonOracle) {
    auto f = [](double x) { return std::exp(-x) * std::cos(5 * x); };
    const auto r = integrate_adaptive(f, 0.0, 2.0);
    EXPECT_NEAR(r.value, oracle::simpson(f, 0.0, 2.0, 200000), 1e-10);
}

TEST(Quadrature, EmptyIntervalAndMinimumTracking) {
    const auto empty = integrate_adaptive([](double) { return 5.0; }, 0.3, 0.3);
    EXPECT_EQ(empty.value, 0.0);
    EXPECT_TRUE(empty.converged);

    const auto r = integrate_adaptive([](double x) { return x - 0.5; }, 0.0, 1.0);
    EXPECT_NEAR(r.value, 0.0, 1e-16);
    EXPECT_LT(r.min_integrand, -0.49);
    EXPECT_GT(r.min_integrand, -0.5);
}

TEST(Quadrature, ReportsNonConvergenceWhenBudgetIsExhausted) {
    QuadratureOptions options;
    options.max_intervals = 3;
    options.absolute_tolerance = 1e-14;
    const auto r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, options);
    EXPECT_FALSE(r.converged);
    EXPECT_GT(r.error_estimate, 1e-14);
}

}  // namespace
}  // namespace seqscreen
