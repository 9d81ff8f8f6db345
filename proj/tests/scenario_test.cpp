#include <filesystem>
#include <random>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "seqscreen/scenario.hpp"

namespace seqscreen {
namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<Diagnostic> diagnostics_of(std::string_view text) {
    try {
        parse_scenario(text);
    } catch (const ValidationFailure& e) {
        return e.diagnostics();
    }
    ADD_FAILURE() << "document was accepted: " << text;
    return {};
}

bool mentions(const std::vector<Diagnostic>& ds, std::string_view location) {
    for (const auto& d : ds) {
        if (d.location == location) return true;
    }
    return false;
}

TEST(Scenario, ParsesMinimalDocument) {
    const auto s = parse_scenario(R"({
        "pretest_probability": 0.01,
        "tests": {"rapid": {"sensitivity": 0.9, "specificity": 0.9}},
        "sequence": [{"test": "rapid", "result": "positive"}, {"test": "rapid", "result": "-"}],
        "targets": {"target_ppv": 0.95}
    })");
    EXPECT_DOUBLE_EQ(s.pretest_probability.value(), 0.01);
    ASSERT_EQ(s.tests.size(), 1u);
    EXPECT_EQ(s.tests.at("rapid").label(), "rapid");
    ASSERT_EQ(s.sequence.size(), 2u);
    EXPECT_EQ(s.sequence[1].result, TestResult::Negative);
    ASSERT_TRUE(s.target_ppv);
    EXPECT_DOUBLE_EQ(s.target_ppv->value(), 0.95);

    const auto outcomes = s.outcomes();
    ASSERT_EQ(outcomes.size(), 2u);
    EXPECT_EQ(outcomes[0].label(), "rapid+");
}

TEST(Scenario, SequenceAndTargetsAreOptional) {
    const auto s = parse_scenario(R"({"pretest_probability": 0.2, "tests": {}})");
    EXPECT_TRUE(s.sequence.empty());
    EXPECT_FALSE(s.target_ppv);
}

TEST(Scenario, SyntaxErrorsCarryLineAndColumn) {
    const auto ds = diagnostics_of("{\n  \"pretest_probability\": 0.2,\n  \"tests\": {\n}");
    ASSERT_EQ(ds.size(), 1u);
    EXPECT_EQ(ds[0].location.rfind("line ", 0), 0u) << ds[0].location;
    EXPECT_NE(ds[0].location.find("line 4"), std::string::npos) << ds[0].location;
}

TEST(Scenario, FieldErrorsAreAllReported) {
    const auto ds = diagnostics_of(R"({
        "pretest_probability": 1.5,
        "tests": {"a": {"sensitivity": -0.1, "specificity": "high"}},
        "sequence": [{"test": "b", "result": "positive"}, {"test": "a", "result": "maybe"}],
        "targets": {"target_ppv": 2},
        "extra": true
    })");
    EXPECT_TRUE(mentions(ds, "/pretest_probability"));
    EXPECT_TRUE(mentions(ds, "/tests/a/sensitivity"));
    EXPECT_TRUE(mentions(ds, "/tests/a/specificity"));
    EXPECT_TRUE(mentions(ds, "/sequence/0/test"));
    EXPECT_TRUE(mentions(ds, "/sequence/1/result"));
    EXPECT_TRUE(mentions(ds, "/targets/target_ppv"));
    EXPECT_TRUE(mentions(ds, "/extra"));
    EXPECT_EQ(ds.size(), 7u);
}

TEST(Scenario, RejectsWrongShapes) {
    EXPECT_TRUE(mentions(diagnostics_of("[1, 2]"), ""));
    EXPECT_TRUE(mentions(diagnostics_of(R"({"tests": {}})"), "/pretest_probability"));
    EXPECT_TRUE(mentions(diagnostics_of(R"({"pretest_probability": 0.1})"), "/tests"));
    EXPECT_TRUE(mentions(diagnostics_of(R"({"pretest_probability": 0.1, "tests": {}, "sequence": {}})"), "/sequence"));
    EXPECT_TRUE(mentions(diagnostics_of(R"({"pretest_probability": 0.1, "tests": {"a": 3}})"), "/tests/a"));
    EXPECT_TRUE(mentions(diagnostics_of(R"({"pretest_probability": 0.1, "tests": {"a": {"sensitivity": 0.5}}})"),
                         "/tests/a/specificity"));
}

TEST(Scenario, ValidationFailureIsTyped) {
    try {
        parse_scenario("not json");
        FAIL();
    } catch (const ScreeningError& e) {
        EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    }
}

TEST(Scenario, ResolveRejectsUnknownTest) {
    const auto s = parse_scenario(R"({"pretest_probability": 0.2, "tests": {}})");
    EXPECT_THROW(s.resolve({"ghost", TestResult::Positive}), ValidationFailure);
}

TEST(Scenario, SequenceEntryWireForm) {
    const auto e = sequence_entry_from_json(nlohmann::json{{"test", "x"}, {"result", "+"}});
    EXPECT_EQ(e.result, TestResult::Positive);
    EXPECT_EQ(to_json(e), (nlohmann::json{{"test", "x"}, {"result", "positive"}}));
    EXPECT_THROW(sequence_entry_from_json(nlohmann::json{{"test", "x"}}), ValidationFailure);
    EXPECT_THROW(sequence_entry_from_json(nlohmann::json::array()), ValidationFailure);
}

TEST(Scenario, CanonicalFormIsSortedAndStable) {
    const auto s = parse_scenario(R"({"tests": {"z": {"specificity": 0.3, "sensitivity": 0.1}, "a": {"sensitivity": 0.1, "specificity": 0.30000000000000004}},
                                       "pretest_probability": 0.1, "sequence": [{"result": "-", "test": "z"}]})");
    const std::string text = serialize_scenario(s);
    EXPECT_LT(text.find("\"pretest_probability\""), text.find("\"sequence\""));
    EXPECT_LT(text.find("\"sequence\""), text.find("\"tests\""));
    EXPECT_LT(text.find("\"a\": {"), text.find("\"z\": {"));
    EXPECT_NE(text.find("0.30000000000000004"), std::string::npos);
    EXPECT_NE(text.find("\"negative\""), std::string::npos);
    EXPECT_EQ(text.back(), '\n');
    EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(Scenario, FixturesRoundTripByteIdentically) {
    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(SEQSCREEN_FIXTURES)) {
        const auto first = serialize_scenario(parse_scenario(read_file(entry.path())));
        const auto second = serialize_scenario(parse_scenario(first));
        EXPECT_EQ(first, second) << entry.path();
        EXPECT_EQ(parse_scenario(first).sequence, parse_scenario(read_file(entry.path())).sequence);
        ++seen;
    }
    EXPECT_EQ(seen, 20);
}

TEST(Scenario, RandomDocumentsRoundTrip) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        ScenarioDocument s;
        s.pretest_probability = Probability(u(rng));
        const int n_tests = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < n_tests; ++k) {
            const std::string name = "test_" + std::to_string(k);
            s.tests.emplace(name, TestCharacteristics(name, u(rng), u(rng)));
        }
        const int n_seq = static_cast<int>(rng() % 10);
        for (int k = 0; k < n_seq; ++k) {
            s.sequence.push_back({"test_" + std::to_string(rng() % n_tests),
                                  rng() % 2 ? TestResult::Positive : TestResult::Negative});
        }
        if (rng() % 2) s.target_ppv = Probability(u(rng));

        const std::string text = serialize_scenario(s);
        const auto parsed = parse_scenario(text);
        EXPECT_EQ(serialize_scenario(parsed), text);
        EXPECT_EQ(parsed.pretest_probability, s.pretest_probability);
        EXPECT_EQ(parsed.tests, s.tests);
        EXPECT_EQ(parsed.sequence, s.sequence);
        EXPECT_EQ(parsed.target_ppv, s.target_ppv);
    }
}

}  // namespace
}  // namespace seqscreen
