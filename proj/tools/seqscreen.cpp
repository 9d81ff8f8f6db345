// seqscreen: command-line front end for the screening library.
//
//   seqscreen compute  --input scenario.json [--format json|table] [--output PATH]
//   seqscreen curve    --test 0.8,0.85 [--test ...] [--points N] [--format csv|json] [--output PATH]
//   seqscreen geometry --sensitivity 0.8 --specificity 0.95 [--format json|table]
//   seqscreen serve    [--bind ADDR] [--port N]      (SEQSCREEN_SNAPSHOT=journal.json)
//
// Exit codes: 0 ok, 2 invalid input, 3 computation error, 4 output not writable.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "seqscreen/report.hpp"
#include "seqscreen/service.hpp"

namespace {

using namespace seqscreen;

constexpr int kExitInvalid = 2;
constexpr int kExitComputation = 3;
constexpr int kExitUnwritable = 4;

struct Invalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty() || output_path == "-") {
        std::cout << text << std::flush;
        return 0;
    }
    std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        std::cerr << "error: cannot write " << output_path << "\n";
        return kExitUnwritable;
    }
    return 0;
}

int computation_failure(const ScreeningError& e) {
    std::cout << render_json(error_body(e)) << std::flush;
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitComputation;
}

std::string read_input(const std::string& path) {
    std::stringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Invalid("cannot read " + path);
        buffer << in.rdbuf();
    }
    return buffer.str();
}

TestCharacteristics parse_test_spec(const std::string& spec, std::size_t index) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos) throw Invalid("--test expects SENSITIVITY,SPECIFICITY, got '" + spec + "'");
    auto number = [&](const std::string& text) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != text.size()) throw Invalid("not a number: '" + text + "'");
        return v;
    };
    return TestCharacteristics("T" + std::to_string(index + 1), number(spec.substr(0, comma)),
                               number(spec.substr(comma + 1)));
}

struct TestArgs {
    std::vector<std::string> specs;
    std::optional<double> sensitivity;
    std::optional<double> specificity;

    void attach(CLI::App& cmd) {
        cmd.add_option("--test", specs, "Test as SENSITIVITY,SPECIFICITY; repeat for serial testing");
        cmd.add_option("-a,--sensitivity", sensitivity, "Sensitivity of a single test");
        cmd.add_option("-b,--specificity", specificity, "Specificity of a single test");
    }

    std::vector<TestCharacteristics> resolve() const {
        std::vector<TestCharacteristics> tests;
        if (sensitivity || specificity) {
            if (!sensitivity || !specificity) throw Invalid("--sensitivity and --specificity go together");
            if (!specs.empty()) throw Invalid("use either --test or --sensitivity/--specificity");
            tests.emplace_back("T1", *sensitivity, *specificity);
        }
        for (std::size_t i = 0; i < specs.size(); ++i) tests.push_back(parse_test_spec(specs[i], i));
        if (tests.empty()) throw Invalid("no test given (use --test A,B or --sensitivity/--specificity)");
        return tests;
    }
};

int run_compute(const std::string& input, const std::string& format, const std::string& output) {
    const ScenarioDocument scenario = parse_scenario(read_input(input));
    nlohmann::json report;
    try {
        report = compute_report(scenario);
    } catch (const ValidationFailure&) {
        throw;
    } catch (const ScreeningError& e) {
        return computation_failure(e);
    }
    return emit(format == "table" ? compute_table(report) : render_json(report), output);
}

int run_curve(const TestArgs& args, std::size_t points, const std::string& format, const std::string& output) {
    const auto tests = args.resolve();
    const CurveSample sample = tests.size() == 1 ? sample_curves(tests.front(), points)
                                                 : sample_serial_curves(tests, points);
    return emit(format == "json" ? render_json(to_json(sample)) : curve_csv(sample), output);
}

int run_geometry(const TestArgs& args, const std::string& format, const std::string& output) {
    const auto tests = args.resolve();
    if (tests.size() != 1) throw Invalid("geometry takes exactly one test");
    nlohmann::json report;
    try {
        report = geometry_report(tests.front());
    } catch (const ScreeningError& e) {
        return computation_failure(e);
    }
    return emit(format == "table" ? geometry_table(report) : render_json(report), output);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian predictive values for sequential and orthogonal screening tests"};
    app.require_subcommand(1);

    std::string input;
    std::string output;
    std::string format;
    std::size_t points = 101;
    std::string bind = "127.0.0.1";
    int port = 8080;

    auto* compute = app.add_subcommand("compute", "Analyse a scenario document");
    compute->add_option("--input", input, "Scenario JSON file ('-' for stdin)")->required();
    compute->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
    compute->add_option("--output", output, "Write the report here instead of stdout");

    TestArgs curve_tests;
    auto* curve = app.add_subcommand("curve", "Sample the PPV/NPV curves over [0, 1]");
    curve_tests.attach(*curve);
    curve->add_option("--points", points, "Number of grid points (>= 2)")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    curve->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    curve->add_option("--output", output, "CSV destination (stdout when omitted)");

    TestArgs geometry_tests;
    auto* geometry = app.add_subcommand("geometry", "Prevalence threshold, crossing point and partition areas");
    geometry_tests.attach(*geometry);
    geometry->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
    geometry->add_option("--output", output, "Write the report here instead of stdout");

    auto* serve = app.add_subcommand("serve", "Run the HTTP JSON service");
    serve->add_option("--bind", bind, "Listen address");
    serve->add_option("--port", port, "Listen port")->check(CLI::Range(0, 65535));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*compute) return run_compute(input, format, output);
        if (*curve) return run_curve(curve_tests, points, format, output);
        if (*geometry) return run_geometry(geometry_tests, format, output);
        if (*serve) {
            ServiceOptions options;
            options.bind_address = bind;
            options.port = port;
            if (const char* snapshot = std::getenv("SEQSCREEN_SNAPSHOT"); snapshot && *snapshot) {
                options.snapshot_path = snapshot;
            }
            return run_service(options);
        }
    } catch (const ValidationFailure& e) {
        for (const auto& d : e.diagnostics()) {
            std::cerr << "invalid: " << (d.location.empty() ? "/" : d.location) << ": " << d.message << "\n";
        }
        return kExitInvalid;
    } catch (const Invalid& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ScreeningError& e) {
        const bool bad_input = e.code() == ErrorCode::InvalidProbability || e.code() == ErrorCode::InvalidArgument ||
                               e.code() == ErrorCode::ValidationError;
        if (bad_input) {
            std::cerr << "invalid: " << e.what() << "\n";
            return kExitInvalid;
        }
        return computation_failure(e);
    }
    return 0;
}
