#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqscreen/screening.hpp"

namespace seqscreen {

enum class TestResult { Positive, Negative };

std::string_view to_string(TestResult result) noexcept;

struct TestOutcome {
    TestCharacteristics test;
    TestResult result;

    // e.g. "rapid+" / "rapid-"
    std::string label() const;
};

// Non-empty ordered list of outcomes. Tests are assumed conditionally
// independent given disease status, so only the multiset matters for the
// posterior; order is kept for the audit trail.
class TestSequence {
public:
    explicit TestSequence(std::vector<TestOutcome> outcomes);

    std::span<const TestOutcome> outcomes() const noexcept { return outcomes_; }
    std::size_t size() const noexcept { return outcomes_.size(); }
    std::size_t positive_count() const noexcept { return positives_; }
    std::size_t negative_count() const noexcept { return outcomes_.size() - positives_; }

private:
    std::vector<TestOutcome> outcomes_;
    std::size_t positives_ = 0;
};

enum class FormulaUsed { SerialPPV, SerialNPV, Psi, Lambda, GeneralFold };

std::string_view to_string(FormulaUsed formula) noexcept;

struct TraceStep {
    std::string outcome;
    Probability posterior_disease;
};

struct PosteriorReport {
    Probability posterior_disease;
    Probability posterior_no_disease;
    FormulaUsed formula_used = FormulaUsed::GeneralFold;
    std::vector<TraceStep> per_step_trace;
};

// Which closed form describes a sequence of this shape:
//   all positive                  -> SerialPPV
//   all negative                  -> SerialNPV
//   positives plus one negative   -> Psi
//   negatives plus one positive   -> Lambda
//   anything else                 -> GeneralFold
// A single positive and a single negative match both conflicted forms; the
// sign of the last outcome decides which run was interrupted.
FormulaUsed classify_shape(const TestSequence& sequence) noexcept;

// P(D | n positives) = φ∏a / (φ∏a + (1-φ)∏(1-b)), accumulated in log space.
Probability serial_ppv(std::span<const TestCharacteristics> tests, Probability pretest_probability);

// P(¬D | n negatives) = (1-φ)∏b / ((1-φ)∏b + φ∏(1-a)).
Probability serial_npv(std::span<const TestCharacteristics> tests, Probability pretest_probability);

// ψ: P(¬D) after positive results `positives` and one negative result.
Probability conflicted_npv_psi(std::span<const TestCharacteristics> positives,
                               const TestCharacteristics& negative, Probability pretest_probability);

// λ: P(D) after negative results `negatives` and one positive result.
Probability conflicted_ppv_lambda(std::span<const TestCharacteristics> negatives,
                                  const TestCharacteristics& positive, Probability pretest_probability);

struct ClosedFormResult {
    FormulaUsed formula = FormulaUsed::GeneralFold;
    Probability posterior_disease;
    Probability posterior_no_disease;
};

// Evaluates whichever closed form classify_shape() selects. GeneralFold
// shapes use the two-product form generalised to mixed signs.
ClosedFormResult closed_form_posterior(const TestSequence& sequence, Probability pretest_probability);

// Bayes update in log-odds space, one likelihood ratio per outcome. Perfect
// results (infinite or zero likelihood ratio) pin the posterior; two opposing
// certainties raise ConflictingCertainty.
PosteriorReport posterior_fold(const TestSequence& sequence, Probability pretest_probability);

// Smallest number of repeated positive results of `test` that lifts the PPV
// from `pretest_probability` to at least `target_ppv`:
//   ⌈ ln[ρ(φ-1) / (φ(ρ-1))] / ln[a / (1-b)] ⌉
std::uint64_t iterations_needed(const TestCharacteristics& test, Probability pretest_probability,
                                Probability target_ppv);

}  // namespace seqscreen
