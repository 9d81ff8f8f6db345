#include "seqscreen/scenario.hpp"

#include <algorithm>
#include <set>

namespace seqscreen {

using nlohmann::json;

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
    std::string text = "invalid scenario";
    for (const auto& d : diagnostics) {
        text += "\n  " + (d.location.empty() ? std::string("/") : d.location) + ": " + d.message;
    }
    return text;
}

// Accumulates field errors so a document reports all of them at once.
class Checker {
public:
    void fail(std::string location, std::string message) {
        diagnostics_.push_back({std::move(location), std::move(message)});
    }

    std::optional<Probability> probability(const json& parent, const char* key, const std::string& location) {
        const auto it = parent.find(key);
        const std::string where = location + "/" + key;
        if (it == parent.end()) {
            fail(where, "required field is missing");
            return std::nullopt;
        }
        return probability_value(*it, where);
    }

    std::optional<Probability> probability_value(const json& value, const std::string& where) {
        if (!value.is_number()) {
            fail(where, "expected a number in [0, 1]");
            return std::nullopt;
        }
        const double v = value.get<double>();
        if (!(v >= 0.0 && v <= 1.0)) {
            fail(where, "value " + value.dump() + " is outside [0, 1]");
            return std::nullopt;
        }
        return Probability(v);
    }

    void only_keys(const json& object, std::initializer_list<std::string_view> allowed, const std::string& location) {
        for (const auto& [key, _] : object.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                fail(location + "/" + key, "unknown field");
            }
        }
    }

    void throw_if_failed() const {
        if (!diagnostics_.empty()) throw ValidationFailure(diagnostics_);
    }

private:
    std::vector<Diagnostic> diagnostics_;
};

std::optional<TestResult> parse_result(const json& value) {
    if (!value.is_string()) return std::nullopt;
    const auto& s = value.get_ref<const std::string&>();
    if (s == "positive" || s == "+") return TestResult::Positive;
    if (s == "negative" || s == "-") return TestResult::Negative;
    return std::nullopt;
}

std::string line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

ValidationFailure::ValidationFailure(std::vector<Diagnostic> diagnostics)
    : ScreeningError(ErrorCode::ValidationError, summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

TestOutcome ScenarioDocument::resolve(const SequenceEntry& entry) const {
    const auto it = tests.find(entry.test);
    if (it == tests.end()) {
        throw ValidationFailure({{"/test", "test '" + entry.test + "' is not declared"}});
    }
    return {it->second, entry.result};
}

std::vector<TestOutcome> ScenarioDocument::outcomes() const {
    std::vector<TestOutcome> resolved;
    resolved.reserve(sequence.size());
    for (const auto& entry : sequence) resolved.push_back(resolve(entry));
    return resolved;
}

SequenceEntry sequence_entry_from_json(const json& value, const std::string& location) {
    Checker check;
    SequenceEntry entry;
    if (!value.is_object()) {
        check.fail(location, "expected an object {\"test\": name, \"result\": \"positive\"|\"negative\"}");
        check.throw_if_failed();
    }
    check.only_keys(value, {"test", "result"}, location);
    const auto test = value.find("test");
    if (test == value.end() || !test->is_string()) {
        check.fail(location + "/test", "expected a test name string");
    } else {
        entry.test = test->get<std::string>();
    }
    const auto result = value.find("result");
    const auto parsed = result == value.end() ? std::nullopt : parse_result(*result);
    if (!parsed) {
        check.fail(location + "/result", "expected \"positive\" or \"negative\"");
    } else {
        entry.result = *parsed;
    }
    check.throw_if_failed();
    return entry;
}

json to_json(const SequenceEntry& entry) {
    return json{{"test", entry.test}, {"result", std::string(to_string(entry.result))}};
}

ScenarioDocument scenario_from_json(const json& document) {
    Checker check;
    if (!document.is_object()) {
        check.fail("", "scenario must be a JSON object");
        check.throw_if_failed();
    }
    check.only_keys(document, {"pretest_probability", "tests", "sequence", "targets"}, "");

    ScenarioDocument scenario;
    if (auto p = check.probability(document, "pretest_probability", "")) scenario.pretest_probability = *p;

    const auto tests = document.find("tests");
    if (tests == document.end() || !tests->is_object()) {
        check.fail("/tests", "expected an object mapping test names to {sensitivity, specificity}");
    } else {
        for (const auto& [name, spec] : tests->items()) {
            const std::string where = "/tests/" + name;
            if (name.empty()) {
                check.fail(where, "test names must be non-empty");
                continue;
            }
            if (!spec.is_object()) {
                check.fail(where, "expected an object with sensitivity and specificity");
                continue;
            }
            check.only_keys(spec, {"sensitivity", "specificity"}, where);
            const auto sens = check.probability(spec, "sensitivity", where);
            const auto spec_ = check.probability(spec, "specificity", where);
            if (sens && spec_) scenario.tests.emplace(name, TestCharacteristics(name, *sens, *spec_));
        }
    }

    const auto sequence = document.find("sequence");
    if (sequence != document.end()) {
        if (!sequence->is_array()) {
            check.fail("/sequence", "expected an array of outcomes");
        } else {
            for (std::size_t i = 0; i < sequence->size(); ++i) {
                const std::string where = "/sequence/" + std::to_string(i);
                try {
                    SequenceEntry entry = sequence_entry_from_json((*sequence)[i], where);
                    if (tests != document.end() && tests->is_object() && !tests->contains(entry.test)) {
                        check.fail(where + "/test", "test '" + entry.test + "' is not declared in /tests");
                    }
                    scenario.sequence.push_back(std::move(entry));
                } catch (const ValidationFailure& e) {
                    for (const auto& d : e.diagnostics()) check.fail(d.location, d.message);
                }
            }
        }
    }

    const auto targets = document.find("targets");
    if (targets != document.end() && !targets->is_null()) {
        if (!targets->is_object()) {
            check.fail("/targets", "expected an object");
        } else {
            check.only_keys(*targets, {"target_ppv"}, "/targets");
            if (auto p = check.probability(*targets, "target_ppv", "/targets")) scenario.target_ppv = *p;
        }
    }

    check.throw_if_failed();
    return scenario;
}

ScenarioDocument parse_scenario(std::string_view text) {
    json document;
    try {
        document = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ValidationFailure({{line_and_column(text, e.byte), e.what()}});
    }
    return scenario_from_json(document);
}

json to_json(const ScenarioDocument& scenario) {
    json tests = json::object();
    for (const auto& [name, t] : scenario.tests) {
        tests[name] = {{"sensitivity", t.sensitivity().value()}, {"specificity", t.specificity().value()}};
    }
    json sequence = json::array();
    for (const auto& entry : scenario.sequence) sequence.push_back(to_json(entry));

    json document = {
        {"pretest_probability", scenario.pretest_probability.value()},
        {"tests", std::move(tests)},
        {"sequence", std::move(sequence)},
    };
    if (scenario.target_ppv) document["targets"] = {{"target_ppv", scenario.target_ppv->value()}};
    return document;
}

std::string render_json(const json& value) { return value.dump(2) + "\n"; }

std::string serialize_scenario(const ScenarioDocument& scenario) { return render_json(to_json(scenario)); }

}  // namespace seqscreen
