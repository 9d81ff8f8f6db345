#include "seqscreen/screening.hpp"

#include <algorithm>
#include <cmath>

#include "bayes_detail.hpp"

namespace seqscreen {

bool TestCharacteristics::informative() const noexcept {
    return std::abs(sensitivity_.value() + specificity_.value() - 1.0) > kUninformativeTolerance;
}

Probability ppv(const TestCharacteristics& test, Probability pretest_probability) {
    const double a = test.sensitivity().value();
    const double b = test.specificity().value();
    const double phi = pretest_probability.value();
    return Probability(detail::posterior_from_weights(a * phi, (1.0 - b) * (1.0 - phi), phi, 1.0 - phi, "ppv"));
}

Probability npv(const TestCharacteristics& test, Probability pretest_probability) {
    const double a = test.sensitivity().value();
    const double b = test.specificity().value();
    const double phi = pretest_probability.value();
    return Probability(detail::posterior_from_weights(b * (1.0 - phi), phi * (1.0 - a), 1.0 - phi, phi, "npv"));
}

Probability fnr(const TestCharacteristics& test) noexcept { return test.sensitivity().complement(); }

Probability fpr(const TestCharacteristics& test) noexcept { return test.specificity().complement(); }

namespace {

LikelihoodRatio ratio(double numerator, double denominator) noexcept {
    if (denominator == 0.0) {
        return numerator > 0.0 ? LikelihoodRatio::infinite() : LikelihoodRatio::indeterminate();
    }
    return LikelihoodRatio::finite(numerator / denominator);
}

}  // namespace

LikelihoodRatios likelihood_ratios(const TestCharacteristics& test) noexcept {
    const double a = test.sensitivity().value();
    const double b = test.specificity().value();
    return {ratio(a, 1.0 - b), ratio(1.0 - a, b)};
}

Probability prevalence_threshold(const TestCharacteristics& test) {
    if (!test.informative()) {
        throw ScreeningError(ErrorCode::UninformativeTest,
                             "prevalence threshold undefined for '" + test.label() + "': sensitivity + specificity = 1");
    }
    const double a = test.sensitivity().value();
    const double b = test.specificity().value();
    const double threshold = (std::sqrt(a * (1.0 - b)) + b - 1.0) / (a + b - 1.0);
    // The exact value is always inside [0, 1]; only rounding can push it out.
    return Probability(std::clamp(threshold, 0.0, 1.0));
}

}  // namespace seqscreen
