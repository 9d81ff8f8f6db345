#pragma once

#include <span>
#include <string>

#include "json.hpp"

#include "seqscreen/geometry.hpp"
#include "seqscreen/scenario.hpp"

namespace seqscreen {

// {"error": {"code": ..., "message": ...}}
nlohmann::json error_body(ErrorCode code, const std::string& message);
nlohmann::json error_body(const ScreeningError& error);

nlohmann::json to_json(const LikelihoodRatio& ratio);
nlohmann::json to_json(const PosteriorReport& report);
nlohmann::json to_json(const CurveSample& sample);

// Full analysis of a scenario: per-test single-result quantities, the
// sequence posterior and, when a target is given, the iteration plan.
// Quantities that are merely undefined for a test (threshold, crossing) are
// reported inline as error objects; failures of the sequence posterior or of
// the plan throw.
nlohmann::json compute_report(const ScenarioDocument& scenario);

// Prevalence threshold, crossing point and partition areas of one test.
// Throws the first failure.
nlohmann::json geometry_report(const TestCharacteristics& test);

std::string compute_table(const nlohmann::json& report);
std::string geometry_table(const nlohmann::json& report);

// "phi,ppv,npv" header, 12 significant digits, LF line endings.
std::string curve_csv(const CurveSample& sample);

}  // namespace seqscreen
