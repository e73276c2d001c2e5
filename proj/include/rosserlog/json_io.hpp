#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "rosserlog/countermodel.hpp"
#include "rosserlog/decide.hpp"
#include "rosserlog/interpolate.hpp"

namespace rosserlog {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"worlds":[...], "box":[[w,v],...],
//  "rosser":{"default":[[w,v],...],
//            "overrides":[{"formula":"...","rel":[[w,v],...]}]},
//  "valuation":{"0":["p","q"]}}
// World entries may be numbers or names; they are normalized to dense
// integers in the order of the worlds array. The loader validates the
// frame and reports the first failing condition with its witnesses.
nlohmann::json model_to_json(const GRoModel& m);
GRoModel model_from_json(const nlohmann::json& j);
GRoModel load_model_file(const std::string& path);

nlohmann::json certificate_to_json(const Certificate& c);
nlohmann::json search_outcome_to_json(const SearchOutcome& o);
nlohmann::json outcome_to_json(Logic logic, Fml formula, const DecisionOutcome& o);
nlohmann::json interpolant_report_to_json(Logic logic, Fml a, Fml b,
                                          const InterpolantReport& rep);
nlohmann::json uniform_report_to_json(const UniformReport& rep);

}  // namespace rosserlog
