#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "seqscreen/sequence.hpp"

namespace seqscreen {

struct SequenceEntry {
    std::string test;
    TestResult result = TestResult::Positive;

    friend bool operator==(const SequenceEntry&, const SequenceEntry&) = default;
};

// Input document for `compute` and for session creation. The sequence may be
// empty (a session starts with the prior only).
struct ScenarioDocument {
    Probability pretest_probability;
    std::map<std::string, TestCharacteristics> tests;
    std::vector<SequenceEntry> sequence;
    std::optional<Probability> target_ppv;

    // Resolves names against `tests`; throws ValidationError for unknown names.
    TestOutcome resolve(const SequenceEntry& entry) const;
    std::vector<TestOutcome> outcomes() const;
};

struct Diagnostic {
    std::string location;  // "line 3, column 7" or a JSON pointer such as /tests/rapid/sensitivity
    std::string message;
};

class ValidationFailure : public ScreeningError {
public:
    explicit ValidationFailure(std::vector<Diagnostic> diagnostics);

    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

ScenarioDocument parse_scenario(std::string_view text);
ScenarioDocument scenario_from_json(const nlohmann::json& document);

// Wire form of one outcome: {"test": name, "result": "positive"|"negative"}.
// The parser also accepts "+" and "-".
SequenceEntry sequence_entry_from_json(const nlohmann::json& value, const std::string& location = "");
nlohmann::json to_json(const SequenceEntry& entry);

nlohmann::json to_json(const ScenarioDocument& scenario);

// Canonical text: sorted keys, two-space indent, shortest round-trip doubles,
// trailing LF.
std::string serialize_scenario(const ScenarioDocument& scenario);
std::string render_json(const nlohmann::json& value);

}  // namespace seqscreen
