#pragma once

#include "qec/pipeline.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace qec {

struct InputError : QecError { using QecError::QecError; };

struct ProblemInput {
    ProblemInstance instance;
    std::optional<FermatInstance> fermat;
};

// "Q" or {"Fp": p}
Field field_from_json(const nlohmann::json& j);
nlohmann::json field_to_json(const Field& k);
// rationals are given as integers or strings such as "-3/4"
Scalar scalar_from_json(const Field& k, const nlohmann::json& j);
std::vector<Scalar> parse_scalar_list(const Field& k, const std::string& csv);

ProblemInput problem_from_json(const nlohmann::json& j);
ProblemInput read_problem(const std::string& path);

nlohmann::json gw_to_json(const GWForm& f);
nlohmann::json result_to_json(const ChiResult& res);
nlohmann::json diagnostics_to_json(const ChiDiagnostics& d);
nlohmann::json checks_to_json(const std::vector<OracleCheck>& checks);

}  // namespace qec
