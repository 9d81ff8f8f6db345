#pragma once

#include <compare>
#include <string>

#include "seqscreen/error.hpp"

namespace seqscreen {

// A real number in [0, 1]. Construction rejects NaN, infinities and anything
// outside the closed unit interval; there is no clamping.
class Probability {
public:
    constexpr Probability() noexcept = default;

    explicit Probability(double value) : value_(checked(value)) {}

    static constexpr Probability zero() noexcept { return Probability(Unchecked{}, 0.0); }
    static constexpr Probability one() noexcept { return Probability(Unchecked{}, 1.0); }

    constexpr double value() const noexcept { return value_; }
    constexpr Probability complement() const noexcept { return Probability(Unchecked{}, 1.0 - value_); }

    friend constexpr auto operator<=>(const Probability&, const Probability&) = default;

private:
    struct Unchecked {};
    constexpr Probability(Unchecked, double value) noexcept : value_(value) {}

    static double checked(double value) {
        // NaN fails both comparisons.
        if (!(value >= 0.0 && value <= 1.0)) {
            throw ScreeningError(ErrorCode::InvalidProbability,
                                 "probability must lie in [0, 1], got " + std::to_string(value));
        }
        return value;
    }

    double value_ = 0.0;
};

}  // namespace seqscreen
