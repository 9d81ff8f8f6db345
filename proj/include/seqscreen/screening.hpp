#pragma once

#include <string>

#include "seqscreen/probability.hpp"

namespace seqscreen {

// |a + b - 1| at or below this is treated as an uninformative test.
inline constexpr double kUninformativeTolerance = 1e-12;

// Sensitivity / specificity of one named screening test.
class TestCharacteristics {
public:
    TestCharacteristics(std::string label, Probability sensitivity, Probability specificity)
        : label_(std::move(label)), sensitivity_(sensitivity), specificity_(specificity) {}

    TestCharacteristics(std::string label, double sensitivity, double specificity)
        : TestCharacteristics(std::move(label), Probability(sensitivity), Probability(specificity)) {}

    const std::string& label() const noexcept { return label_; }
    Probability sensitivity() const noexcept { return sensitivity_; }
    Probability specificity() const noexcept { return specificity_; }

    // False when the positive likelihood ratio is one, i.e. a result carries
    // no evidence either way.
    bool informative() const noexcept;

    friend bool operator==(const TestCharacteristics&, const TestCharacteristics&) = default;

private:
    std::string label_;
    Probability sensitivity_;
    Probability specificity_;
};

// A likelihood ratio that may be infinite. Infinity is an explicit flag, the
// stored magnitude is then meaningless and never exposed as a raw double.
// `indeterminate` marks a 0/0 ratio (the result is impossible under both
// hypotheses).
struct LikelihoodRatio {
    enum class Kind { Finite, Infinite, Indeterminate };

    Kind kind = Kind::Finite;
    double value = 0.0;

    static LikelihoodRatio finite(double v) noexcept { return {Kind::Finite, v}; }
    static LikelihoodRatio infinite() noexcept { return {Kind::Infinite, 0.0}; }
    static LikelihoodRatio indeterminate() noexcept { return {Kind::Indeterminate, 0.0}; }

    bool is_finite() const noexcept { return kind == Kind::Finite; }
    bool is_infinite() const noexcept { return kind == Kind::Infinite; }
    bool is_indeterminate() const noexcept { return kind == Kind::Indeterminate; }

    // Strict comparison against a finite threshold; infinity exceeds everything.
    bool exceeds(double threshold) const noexcept {
        return is_infinite() || (is_finite() && value > threshold);
    }
};

struct LikelihoodRatios {
    LikelihoodRatio positive_lr;  // a / (1 - b)
    LikelihoodRatio negative_lr;  // (1 - a) / b
};

// Posterior P(D | T+) = a·φ / (a·φ + (1 - b)(1 - φ)).
Probability ppv(const TestCharacteristics& test, Probability pretest_probability);

// Posterior P(¬D | T-) = b(1 - φ) / (φ(1 - a) + b(1 - φ)).
Probability npv(const TestCharacteristics& test, Probability pretest_probability);

Probability fnr(const TestCharacteristics& test) noexcept;
Probability fpr(const TestCharacteristics& test) noexcept;

LikelihoodRatios likelihood_ratios(const TestCharacteristics& test) noexcept;

// Prior at which d(ppv)/dφ = 1:
//   φ_e = (√(a(1 - b)) + b - 1) / (a + b - 1).
// Throws UninformativeTest when a + b = 1.
Probability prevalence_threshold(const TestCharacteristics& test);

}  // namespace seqscreen
