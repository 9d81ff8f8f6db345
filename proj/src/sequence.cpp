#include "seqscreen/sequence.hpp"

#include <cmath>
#include <optional>

#include "bayes_detail.hpp"

namespace seqscreen {

using detail::safe_log;
using detail::safe_log1m;

std::string_view to_string(TestResult result) noexcept {
    return result == TestResult::Positive ? "positive" : "negative";
}

std::string_view to_string(FormulaUsed formula) noexcept {
    switch (formula) {
        case FormulaUsed::SerialPPV: return "SerialPPV";
        case FormulaUsed::SerialNPV: return "SerialNPV";
        case FormulaUsed::Psi: return "Psi";
        case FormulaUsed::Lambda: return "Lambda";
        case FormulaUsed::GeneralFold: return "GeneralFold";
    }
    return "GeneralFold";
}

std::string TestOutcome::label() const {
    return test.label() + (result == TestResult::Positive ? "+" : "-");
}

TestSequence::TestSequence(std::vector<TestOutcome> outcomes) : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) {
        throw ScreeningError(ErrorCode::InvalidArgument, "test sequence must contain at least one outcome");
    }
    for (const auto& o : outcomes_) {
        if (o.result == TestResult::Positive) ++positives_;
    }
}

FormulaUsed classify_shape(const TestSequence& sequence) noexcept {
    const auto pos = sequence.positive_count();
    const auto neg = sequence.negative_count();
    if (neg == 0) return FormulaUsed::SerialPPV;
    if (pos == 0) return FormulaUsed::SerialNPV;
    if (pos == 1 && neg == 1) {
        return sequence.outcomes().back().result == TestResult::Negative ? FormulaUsed::Psi : FormulaUsed::Lambda;
    }
    if (neg == 1) return FormulaUsed::Psi;
    if (pos == 1) return FormulaUsed::Lambda;
    return FormulaUsed::GeneralFold;
}

namespace {

void require_nonempty(std::span<const TestCharacteristics> tests, const char* what) {
    if (tests.empty()) {
        throw ScreeningError(ErrorCode::InvalidArgument, std::string(what) + ": at least one test is required");
    }
}

// Joint log-probabilities log P(D, evidence) and log P(¬D, evidence).
struct LogMasses {
    double disease;
    double no_disease;
};

LogMasses prior_masses(Probability p) { return {safe_log(p.value()), safe_log1m(p.value())}; }

void add_positive(LogMasses& m, const TestCharacteristics& t) {
    m.disease += safe_log(t.sensitivity().value());
    m.no_disease += safe_log1m(t.specificity().value());
}

void add_negative(LogMasses& m, const TestCharacteristics& t) {
    m.disease += safe_log1m(t.sensitivity().value());
    m.no_disease += safe_log(t.specificity().value());
}

// {P(D | evidence), P(¬D | evidence)}
detail::TwoSided resolve(const LogMasses& m, Probability prior, const char* what) {
    const double phi = prior.value();
    return detail::two_sided_from_log_weights(m.disease, m.no_disease, phi, 1.0 - phi, what);
}

LogMasses serial_ppv_masses(std::span<const TestCharacteristics> tests, Probability prior) {
    LogMasses m = prior_masses(prior);
    for (const auto& t : tests) add_positive(m, t);
    return m;
}

LogMasses serial_npv_masses(std::span<const TestCharacteristics> tests, Probability prior) {
    LogMasses m = prior_masses(prior);
    for (const auto& t : tests) add_negative(m, t);
    return m;
}

// Disease-free mass (1-φ)·b₋·∏(1-b₊); diseased mass φ·(1-a₋)·∏a₊.
LogMasses psi_masses(std::span<const TestCharacteristics> positives, const TestCharacteristics& negative,
                     Probability prior) {
    LogMasses m = prior_masses(prior);
    add_negative(m, negative);
    for (const auto& t : positives) add_positive(m, t);
    return m;
}

// Diseased mass φ·a₊·∏(1-a₋); disease-free mass (1-φ)·(1-b₊)·∏b₋.
LogMasses lambda_masses(std::span<const TestCharacteristics> negatives, const TestCharacteristics& positive,
                        Probability prior) {
    LogMasses m = prior_masses(prior);
    add_positive(m, positive);
    for (const auto& t : negatives) add_negative(m, t);
    return m;
}

}  // namespace

Probability serial_ppv(std::span<const TestCharacteristics> tests, Probability pretest_probability) {
    require_nonempty(tests, "serial_ppv");
    return Probability(resolve(serial_ppv_masses(tests, pretest_probability), pretest_probability, "serial_ppv")
                           .hypothesis);
}

Probability serial_npv(std::span<const TestCharacteristics> tests, Probability pretest_probability) {
    require_nonempty(tests, "serial_npv");
    return Probability(
        resolve(serial_npv_masses(tests, pretest_probability), pretest_probability, "serial_npv").other);
}

Probability conflicted_npv_psi(std::span<const TestCharacteristics> positives,
                               const TestCharacteristics& negative, Probability pretest_probability) {
    return Probability(resolve(psi_masses(positives, negative, pretest_probability), pretest_probability,
                               "conflicted_npv_psi")
                           .other);
}

Probability conflicted_ppv_lambda(std::span<const TestCharacteristics> negatives,
                                  const TestCharacteristics& positive, Probability pretest_probability) {
    return Probability(resolve(lambda_masses(negatives, positive, pretest_probability), pretest_probability,
                               "conflicted_ppv_lambda")
                           .hypothesis);
}

ClosedFormResult closed_form_posterior(const TestSequence& sequence, Probability pretest_probability) {
    const FormulaUsed formula = classify_shape(sequence);
    std::vector<TestCharacteristics> positives;
    std::vector<TestCharacteristics> negatives;
    for (const auto& o : sequence.outcomes()) {
        (o.result == TestResult::Positive ? positives : negatives).push_back(o.test);
    }

    LogMasses masses{};
    switch (formula) {
        case FormulaUsed::SerialPPV: masses = serial_ppv_masses(positives, pretest_probability); break;
        case FormulaUsed::SerialNPV: masses = serial_npv_masses(negatives, pretest_probability); break;
        case FormulaUsed::Psi: masses = psi_masses(positives, negatives.front(), pretest_probability); break;
        case FormulaUsed::Lambda: masses = lambda_masses(negatives, positives.front(), pretest_probability); break;
        case FormulaUsed::GeneralFold:
            masses = prior_masses(pretest_probability);
            for (const auto& t : positives) add_positive(masses, t);
            for (const auto& t : negatives) add_negative(masses, t);
            break;
    }
    const auto both = resolve(masses, pretest_probability, "closed_form_posterior");
    return {formula, Probability(both.hypothesis), Probability(both.other)};
}

namespace {

enum class Certainty { None, Disease, NoDisease };

}  // namespace

PosteriorReport posterior_fold(const TestSequence& sequence, Probability pretest_probability) {
    PosteriorReport report;
    report.formula_used = classify_shape(sequence);
    report.per_step_trace.reserve(sequence.size());

    const double phi = pretest_probability.value();
    Certainty certainty = Certainty::None;
    std::optional<std::size_t> certain_at;
    if (phi == 0.0) certainty = Certainty::NoDisease;
    if (phi == 1.0) certainty = Certainty::Disease;
    const bool prior_certain = certainty != Certainty::None;

    double log_odds = prior_certain ? 0.0 : std::log(phi) - std::log1p(-phi);

    const auto outcomes = sequence.outcomes();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        if (!prior_certain) {
            const double a = o.test.sensitivity().value();
            const double b = o.test.specificity().value();
            const bool positive = o.result == TestResult::Positive;
            const double given_disease = positive ? a : 1.0 - a;
            const double given_no_disease = positive ? 1.0 - b : b;

            if (given_disease == 0.0 && given_no_disease == 0.0) {
                throw ScreeningError(ErrorCode::UndefinedPosterior,
                                     "outcome " + o.label() + " is impossible under both hypotheses");
            }
            const Certainty implied = given_no_disease == 0.0 ? Certainty::Disease
                                      : given_disease == 0.0  ? Certainty::NoDisease
                                                              : Certainty::None;
            if (implied != Certainty::None) {
                if (certainty != Certainty::None && certainty != implied) {
                    throw ScreeningError(ErrorCode::ConflictingCertainty,
                                         "outcomes " + outcomes[*certain_at].label() + " (step " +
                                             std::to_string(*certain_at + 1) + ") and " + o.label() + " (step " +
                                             std::to_string(i + 1) + ") are each conclusive in opposite directions");
                }
                if (certainty == Certainty::None) {
                    certainty = implied;
                    certain_at = i;
                }
            } else {
                log_odds += std::log(given_disease / given_no_disease);
            }
        }

        double running = 0.0;
        switch (certainty) {
            case Certainty::Disease: running = 1.0; break;
            case Certainty::NoDisease: running = 0.0; break;
            case Certainty::None: running = detail::logistic(log_odds); break;
        }
        report.per_step_trace.push_back({o.label(), Probability(running)});
    }

    switch (certainty) {
        case Certainty::Disease:
            report.posterior_disease = Probability::one();
            report.posterior_no_disease = Probability::zero();
            break;
        case Certainty::NoDisease:
            report.posterior_disease = Probability::zero();
            report.posterior_no_disease = Probability::one();
            break;
        case Certainty::None:
            report.posterior_disease = Probability(detail::logistic(log_odds));
            report.posterior_no_disease = Probability(detail::logistic(-log_odds));
            break;
    }
    return report;
}

namespace {

// Quotients this close above an integer are rounding artefacts of an exact hit.
constexpr double kCeilingGuard = 1e-9;

}  // namespace

std::uint64_t iterations_needed(const TestCharacteristics& test, Probability pretest_probability,
                                Probability target_ppv) {
    const auto lr = likelihood_ratios(test).positive_lr;
    if (!test.informative() || !lr.exceeds(1.0)) {
        throw ScreeningError(ErrorCode::TargetUnreachable,
                             "test '" + test.label() + "' has positive likelihood ratio <= 1; repeating it never raises the PPV");
    }
    const double phi = pretest_probability.value();
    const double rho = target_ppv.value();
    if (rho <= phi) {
        throw ScreeningError(ErrorCode::InvalidTarget, "target PPV " + std::to_string(rho) +
                                                           " does not exceed the pre-test probability " +
                                                           std::to_string(phi));
    }
    if (phi == 0.0) {
        throw ScreeningError(ErrorCode::TargetUnreachable, "a zero pre-test probability cannot be raised by testing");
    }
    if (lr.is_infinite()) return 1;  // one positive of a perfectly specific test is conclusive
    if (rho == 1.0) {
        throw ScreeningError(ErrorCode::TargetUnreachable,
                             "a PPV of exactly 1 is unreachable with a finite likelihood ratio");
    }

    const double a = test.sensitivity().value();
    const double b = test.specificity().value();
    const double quotient = std::log((rho * (phi - 1.0)) / (phi * (rho - 1.0))) / std::log(a / (1.0 - b));
    if (!std::isfinite(quotient) || quotient > 9.0e15) {
        throw ScreeningError(ErrorCode::NumericalFailure, "iteration count is not representable");
    }
    const double nearest = std::round(quotient);
    double n = std::abs(quotient - nearest) <= kCeilingGuard ? nearest : std::ceil(quotient);
    if (n < 1.0) n = 1.0;
    return static_cast<std::uint64_t>(n);
}

}  // namespace seqscreen
