#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seqscreen/screening.hpp"

namespace seqscreen {
namespace {

TestCharacteristics make(double a, double b) { return TestCharacteristics("t", a, b); }
Probability P(double v) { return Probability(v); }

TEST(Probability, RejectsOutOfRangeAndNonFinite) {
    EXPECT_NO_THROW(P(0.0));
    EXPECT_NO_THROW(P(1.0));
    for (double bad : {-1e-300, 1.0000000000000002, std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}) {
        try {
            P(bad);
            FAIL() << "accepted " << bad;
        } catch (const ScreeningError& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidProbability);
        }
    }
}

TEST(Ppv, Examples) {
    EXPECT_EQ(ppv(make(1, 1), P(0.3)).value(), 1.0);
    EXPECT_NEAR(ppv(make(0.8, 0.85), P(0.5)).value(), 0.8 / 0.95, 1e-15);
    EXPECT_NEAR(ppv(make(0.8, 0.85), P(0.5)).value(), 0.842105, 1e-6);
    EXPECT_EQ(ppv(make(0.6, 0.8), P(0.0)).value(), 0.0);
}

TEST(Npv, Examples) {
    EXPECT_EQ(npv(make(1, 1), P(0.3)).value(), 1.0);
    EXPECT_NEAR(npv(make(0.8, 0.85), P(0.5)).value(), 0.85 / 1.05, 1e-15);
    EXPECT_NEAR(npv(make(0.8, 0.85), P(0.5)).value(), 0.809524, 1e-6);
    EXPECT_EQ(npv(make(0.6, 0.8), P(1.0)).value(), 0.0);
}

TEST(Ppv, DegenerateDenominator) {
    // a = 0, b = 1: a positive result cannot happen at all.
    try {
        ppv(make(0.0, 1.0), P(0.4));
        FAIL();
    } catch (const ScreeningError& e) {
        EXPECT_EQ(e.code(), ErrorCode::UndefinedPosterior);
    }
    // Zero prior: 0/0 resolves to 0.
    EXPECT_EQ(ppv(make(0.0, 1.0), P(0.0)).value(), 0.0);
    EXPECT_EQ(ppv(make(0.7, 1.0), P(0.0)).value(), 0.0);
}

TEST(Npv, DegenerateDenominator) {
    try {
        npv(make(1.0, 0.0), P(0.4));
        FAIL();
    } catch (const ScreeningError& e) {
        EXPECT_EQ(e.code(), ErrorCode::UndefinedPosterior);
    }
    EXPECT_EQ(npv(make(1.0, 0.0), P(1.0)).value(), 0.0);
}

TEST(Complements, Examples) {
    EXPECT_EQ(fnr(make(1, 0.5)).value(), 0.0);
    EXPECT_NEAR(fnr(make(0.8, 0.5)).value(), 0.2, 1e-16);
    EXPECT_EQ(fnr(make(0, 0.5)).value(), 1.0);
    EXPECT_EQ(fpr(make(0.5, 1)).value(), 0.0);
    EXPECT_NEAR(fpr(make(0.5, 0.95)).value(), 0.05, 1e-16);
    EXPECT_EQ(fpr(make(0.5, 0)).value(), 1.0);
}

TEST(Complements, SumToOneExactly) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const auto t = make(u(rng), u(rng));
        EXPECT_EQ(fnr(t).value() + t.sensitivity().value(), 1.0);
        EXPECT_EQ(fpr(t).value() + t.specificity().value(), 1.0);
    }
}

TEST(LikelihoodRatios, Examples) {
    const auto r = likelihood_ratios(make(0.9, 0.9));
    ASSERT_TRUE(r.positive_lr.is_finite());
    EXPECT_NEAR(r.positive_lr.value, 9.0, 1e-12);
    EXPECT_NEAR(r.negative_lr.value, 1.0 / 9.0, 1e-12);

    const auto flat = likelihood_ratios(make(0.5, 0.5));
    EXPECT_EQ(flat.positive_lr.value, 1.0);
    EXPECT_EQ(flat.negative_lr.value, 1.0);

    EXPECT_TRUE(likelihood_ratios(make(0.8, 1.0)).positive_lr.is_infinite());
    EXPECT_TRUE(likelihood_ratios(make(0.8, 0.0)).negative_lr.is_infinite());
    EXPECT_TRUE(likelihood_ratios(make(0.0, 1.0)).positive_lr.is_indeterminate());
    EXPECT_TRUE(likelihood_ratios(make(1.0, 0.0)).negative_lr.is_indeterminate());
    // Infinity only when the numerator is positive.
    EXPECT_TRUE(likelihood_ratios(make(1.0, 0.0)).positive_lr.is_finite());
}

TEST(TestCharacteristics, InformativeFlag) {
    EXPECT_FALSE(make(0.6, 0.4).informative());
    EXPECT_FALSE(make(0.5, 0.5).informative());
    EXPECT_TRUE(make(0.6, 0.41).informative());
    EXPECT_TRUE(make(0.3, 0.3).informative());
    // Tolerance absorbs decimal round-off.
    EXPECT_FALSE(make(0.7, 0.3 + 1e-13).informative());
}

TEST(PrevalenceThreshold, Examples) {
    EXPECT_NEAR(prevalence_threshold(make(0.8, 0.95)).value(), 0.2, 1e-15);
    EXPECT_EQ(prevalence_threshold(make(1, 1)).value(), 0.0);
    try {
        prevalence_threshold(make(0.6, 0.4));
        FAIL();
    } catch (const ScreeningError& e) {
        EXPECT_EQ(e.code(), ErrorCode::UninformativeTest);
    }
}

TEST(PrevalenceThreshold, InUnitIntervalForAnyInformativeTest) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const auto t = make(u(rng), u(rng));
        if (!t.informative()) continue;
        const double v = prevalence_threshold(t).value();
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
}

// d(ppv)/dφ at φ_e, by central differences, equals one.
TEST(PrevalenceThreshold, SlopeIdentity) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    int checked = 0;
    while (checked < 200) {
        const double a = u(rng);
        const double b = u(rng);
        if (a + b <= 1.05) continue;
        const auto t = make(a, b);
        const double phi_e = prevalence_threshold(t).value();
        const double h = 1e-6;
        if (phi_e - h < 0.0) continue;
        const double slope = (oracle::ppv(a, b, phi_e + h) - oracle::ppv(a, b, phi_e - h)) / (2 * h);
        EXPECT_NEAR(slope, 1.0, 1e-4) << "a=" << a << " b=" << b;
        ++checked;
    }
}

TEST(Ppv, MonotoneInPrior) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    int tests = 0;
    while (tests < 60) {
        const double a = u(rng);
        const double b = u(rng);
        if (a + b <= 1.0 + 1e-6) continue;
        const auto t = make(a, b);
        double prev_ppv = -1.0;
        double prev_npv = 2.0;
        for (int k = 1; k < 150; ++k) {
            const Probability phi(k / 150.0);
            const double p = ppv(t, phi).value();
            const double n = npv(t, phi).value();
            EXPECT_GT(p, prev_ppv);
            EXPECT_LT(n, prev_npv);
            prev_ppv = p;
            prev_npv = n;
        }
        ++tests;
    }
}

TEST(Ppv, BoundaryPinning) {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        double a = u(rng);
        double b = u(rng);
        if (a == 0.0 || b == 0.0) continue;
        const auto t = make(a, b);
        EXPECT_EQ(ppv(t, P(0)).value(), 0.0);
        EXPECT_EQ(ppv(t, P(1)).value(), 1.0);
        EXPECT_EQ(npv(t, P(0)).value(), 1.0);
        EXPECT_EQ(npv(t, P(1)).value(), 0.0);
    }
}

TEST(Ppv, MatchesSimulatedPopulation) {
    const double grid[] = {0.2, 0.5, 0.8};
    std::uint64_t seed = 100;
    for (double a : {0.6, 0.9}) {
        for (double b : {0.7, 0.95}) {
            for (double phi : grid) {
                const auto c = oracle::simulate_population(a, b, phi, 200000, seed++);
                const double pos = static_cast<double>(c.true_positive + c.false_positive);
                const double emp = c.true_positive / pos;
                const double expected = ppv(make(a, b), P(phi)).value();
                const double se = std::sqrt(expected * (1 - expected) / pos);
                EXPECT_LT(std::abs(emp - expected), 4 * se) << a << " " << b << " " << phi;

                const double neg = static_cast<double>(c.true_negative + c.false_negative);
                const double emp_n = c.true_negative / neg;
                const double expected_n = npv(make(a, b), P(phi)).value();
                const double se_n = std::sqrt(expected_n * (1 - expected_n) / neg);
                EXPECT_LT(std::abs(emp_n - expected_n), 4 * se_n);
            }
        }
    }
}

}  // namespace
}  // namespace seqscreen
