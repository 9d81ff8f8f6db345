#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "seqscreen/error.hpp"

namespace seqscreen::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// log(p) with log(0) = -inf, no floating-point exception noise.
inline double safe_log(double p) noexcept { return p > 0.0 ? std::log(p) : kNegInf; }

// log(1 - p), accurate for small p.
inline double safe_log1m(double p) noexcept { return p < 1.0 ? std::log1p(-p) : kNegInf; }

// 1 / (1 + e^-z), evaluated without overflow for either sign of z.
inline double logistic(double z) noexcept {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// Posterior of hypothesis H from the two unnormalised joint weights.
// A certain prior is never overturned: prior(H) = 0 gives 0 and
// prior(¬H) = 0 gives 1 even when the evidence is impossible under both.
inline double posterior_from_weights(double w_hypothesis, double w_other,
                                     double prior_hypothesis, double prior_other,
                                     const char* what) {
    if (prior_hypothesis == 0.0) return 0.0;
    if (prior_other == 0.0) return 1.0;
    const double denominator = w_hypothesis + w_other;
    if (denominator == 0.0) {
        throw ScreeningError(ErrorCode::UndefinedPosterior,
                             std::string(what) + ": evidence has zero probability under both hypotheses");
    }
    return w_hypothesis / denominator;
}

struct TwoSided {
    double hypothesis;
    double other;
};

// Both posteriors from joint log-weights (which may be -inf). Each side is
// evaluated directly so a value near 0 keeps its relative precision.
inline TwoSided two_sided_from_log_weights(double log_hypothesis, double log_other, double prior_hypothesis,
                                           double prior_other, const char* what) {
    if (prior_hypothesis == 0.0) return {0.0, 1.0};
    if (prior_other == 0.0) return {1.0, 0.0};
    if (log_hypothesis == kNegInf && log_other == kNegInf) {
        throw ScreeningError(ErrorCode::UndefinedPosterior,
                             std::string(what) + ": evidence has zero probability under both hypotheses");
    }
    if (log_other == kNegInf) return {1.0, 0.0};
    if (log_hypothesis == kNegInf) return {0.0, 1.0};
    const double z = log_hypothesis - log_other;
    return {logistic(z), logistic(-z)};
}

// Log-space counterpart. Joint log-weights may be -inf.
inline double posterior_from_log_weights(double log_hypothesis, double log_other,
                                         double prior_hypothesis, double prior_other,
                                         const char* what) {
    return two_sided_from_log_weights(log_hypothesis, log_other, prior_hypothesis, prior_other, what).hypothesis;
}

}  // namespace seqscreen::detail
