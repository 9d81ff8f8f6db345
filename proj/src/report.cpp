#include "seqscreen/report.hpp"

#include <cstdio>
#include <sstream>

namespace seqscreen {

using nlohmann::json;

json error_body(ErrorCode code, const std::string& message) {
    return json{{"error", {{"code", std::string(to_string(code))}, {"message", message}}}};
}

json error_body(const ScreeningError& error) { return error_body(error.code(), error.what()); }

json to_json(const LikelihoodRatio& ratio) {
    switch (ratio.kind) {
        case LikelihoodRatio::Kind::Finite: return ratio.value;
        case LikelihoodRatio::Kind::Infinite: return "inf";
        case LikelihoodRatio::Kind::Indeterminate: return "indeterminate";
    }
    return nullptr;
}

json to_json(const PosteriorReport& report) {
    json trace = json::array();
    for (const auto& step : report.per_step_trace) {
        trace.push_back({{"outcome", step.outcome}, {"posterior_disease", step.posterior_disease.value()}});
    }
    return json{
        {"posterior_disease", report.posterior_disease.value()},
        {"posterior_no_disease", report.posterior_no_disease.value()},
        {"formula_used", std::string(to_string(report.formula_used))},
        {"trace", std::move(trace)},
    };
}

json to_json(const CurveSample& sample) {
    auto values = [](const std::vector<Probability>& v) {
        json out = json::array();
        for (const auto& p : v) out.push_back(p.value());
        return out;
    };
    return json{{"phi", values(sample.phi_values)},
                {"ppv", values(sample.ppv_values)},
                {"npv", values(sample.npv_values)}};
}

namespace {

template <typename F>
json value_or_error(F&& f) {
    try {
        return f();
    } catch (const ScreeningError& e) {
        return error_body(e);
    }
}

json intersection_json(const IntersectionResult& r) {
    return json{{"phi_i", r.phi_i.value()},
                {"method", std::string(to_string(r.method))},
                {"residual", r.residual}};
}

}  // namespace

json compute_report(const ScenarioDocument& scenario) {
    const Probability prior = scenario.pretest_probability;

    json tests = json::object();
    for (const auto& [name, test] : scenario.tests) {
        const auto lrs = likelihood_ratios(test);
        json entry = {
            {"sensitivity", test.sensitivity().value()},
            {"specificity", test.specificity().value()},
            {"ppv", ppv(test, prior).value()},
            {"npv", npv(test, prior).value()},
            {"fnr", fnr(test).value()},
            {"fpr", fpr(test).value()},
            {"likelihood_ratios", {{"positive", to_json(lrs.positive_lr)}, {"negative", to_json(lrs.negative_lr)}}},
            {"prevalence_threshold", value_or_error([&] { return json(prevalence_threshold(test).value()); })},
            {"intersection", value_or_error([&] { return intersection_json(intersection_point(test)); })},
            {"dominance",
             value_or_error([&] { return json(std::string(to_string(classify_dominance(test, prior)))); })},
        };
        if (scenario.target_ppv) {
            entry["iterations_needed"] = iterations_needed(test, prior, *scenario.target_ppv);
        }
        tests[name] = std::move(entry);
    }

    json report = {
        {"pretest_probability", prior.value()},
        {"tests", std::move(tests)},
        {"sequence", nullptr},
    };
    if (scenario.target_ppv) report["targets"] = {{"target_ppv", scenario.target_ppv->value()}};

    if (!scenario.sequence.empty()) {
        const TestSequence sequence(scenario.outcomes());
        json posterior = to_json(posterior_fold(sequence, prior));
        const auto closed = closed_form_posterior(sequence, prior);
        posterior["closed_form"] = {
            {"formula", std::string(to_string(closed.formula))},
            {"posterior_disease", closed.posterior_disease.value()},
            {"posterior_no_disease", closed.posterior_no_disease.value()},
        };
        posterior["positive_count"] = sequence.positive_count();
        posterior["negative_count"] = sequence.negative_count();
        report["sequence"] = std::move(posterior);
    }
    return report;
}

json geometry_report(const TestCharacteristics& test) {
    const Probability threshold = prevalence_threshold(test);
    const PartitionReport partition = partition_areas(test);
    const IntersectionResult crossing = intersection_point(test);
    return json{
        {"sensitivity", test.sensitivity().value()},
        {"specificity", test.specificity().value()},
        {"phi_e", threshold.value()},
        {"phi_i", partition.phi_i.value()},
        {"method", std::string(to_string(partition.method))},
        {"residual", crossing.residual},
        {"ndp_area", partition.ndp_area},
        {"pdp_area", partition.pdp_area},
        {"quadrature_error_estimate", partition.quadrature_error_estimate},
    };
}

namespace {

std::string fixed(double v, int precision = 6) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", precision, v);
    return buffer;
}

std::string cell(const json& v) {
    if (v.is_number_float()) return fixed(v.get<double>());
    if (v.is_number()) return v.dump();
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object() && v.contains("error")) return v["error"]["code"].get<std::string>();
    return v.dump();
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

std::string compute_table(const json& report) {
    std::ostringstream out;
    out << "pre-test probability  " << fixed(report["pretest_probability"].get<double>()) << "\n\n";

    const bool planned = report.contains("targets");
    out << pad("test", 14) << pad("sens", 10) << pad("spec", 10) << pad("ppv", 10) << pad("npv", 10)
        << pad("LR+", 12) << pad("LR-", 12) << pad("phi_e", 22) << pad("phi_i", 22) << pad("dominance", 22);
    if (planned) out << "n_needed";
    out << "\n";
    for (const auto& [name, t] : report["tests"].items()) {
        const json& crossing = t["intersection"];
        out << pad(name, 14) << pad(cell(t["sensitivity"]), 10) << pad(cell(t["specificity"]), 10)
            << pad(cell(t["ppv"]), 10) << pad(cell(t["npv"]), 10)
            << pad(cell(t["likelihood_ratios"]["positive"]), 12) << pad(cell(t["likelihood_ratios"]["negative"]), 12)
            << pad(cell(t["prevalence_threshold"]), 22)
            << pad(crossing.contains("phi_i") ? cell(crossing["phi_i"]) : cell(crossing), 22)
            << pad(cell(t["dominance"]), 22);
        if (planned) out << cell(t["iterations_needed"]);
        out << "\n";
    }

    const json& seq = report["sequence"];
    if (!seq.is_null()) {
        out << "\nsequence  (" << seq["formula_used"].get<std::string>() << ")\n";
        out << pad("step", 6) << pad("outcome", 20) << "P(disease)\n";
        std::size_t step = 1;
        for (const auto& s : seq["trace"]) {
            out << pad(std::to_string(step++), 6) << pad(s["outcome"].get<std::string>(), 20)
                << fixed(s["posterior_disease"].get<double>(), 10) << "\n";
        }
        out << "posterior P(disease)     " << fixed(seq["posterior_disease"].get<double>(), 10) << "\n";
        out << "posterior P(no disease)  " << fixed(seq["posterior_no_disease"].get<double>(), 10) << "\n";
    }
    return out.str();
}

std::string geometry_table(const json& report) {
    std::ostringstream out;
    auto row = [&](const char* key, const std::string& v) { out << pad(key, 28) << v << "\n"; };
    row("sensitivity", cell(report["sensitivity"]));
    row("specificity", cell(report["specificity"]));
    row("prevalence threshold", fixed(report["phi_e"].get<double>(), 10));
    row("intersection", fixed(report["phi_i"].get<double>(), 10) + "  (" + report["method"].get<std::string>() + ")");
    row("negative-dominant area", fixed(report["ndp_area"].get<double>(), 10));
    row("positive-dominant area", fixed(report["pdp_area"].get<double>(), 10));
    char err[32];
    std::snprintf(err, sizeof err, "%.3e", report["quadrature_error_estimate"].get<double>());
    row("quadrature error estimate", err);
    return out.str();
}

std::string curve_csv(const CurveSample& sample) {
    std::string out = "phi,ppv,npv\n";
    char line[128];
    for (std::size_t i = 0; i < sample.phi_values.size(); ++i) {
        std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g\n", sample.phi_values[i].value(),
                      sample.ppv_values[i].value(), sample.npv_values[i].value());
        out += line;
    }
    return out;
}

}  // namespace seqscreen
