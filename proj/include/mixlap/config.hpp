#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixlap/domain.hpp"

namespace mixlap {

struct LambdaPolicy {
    enum class Kind { Fixed, AutoThreshold };
    Kind kind = Kind::Fixed;
    double value = 10.0;   // Fixed
    double factor = 2.0;   // AutoThreshold: factor * empirical lambda_1
};

/// Validated experiment description (schema_version 1, JSON).
struct ExperimentConfig {
    int schema_version = 1;
    Domain domain = Domain::interval(0.0, 1.0);
    double s = 0.25;
    std::vector<double> h_list;  // one entry when "h" was given
    LambdaPolicy lambda;
    nlohmann::json nonlinearity = {{"name", "zero"}};
    std::vector<std::string> audits;
    std::uint64_t seed = 0;
    std::string report_path = "report.json";
    std::string csv_dir;
    bool advisory = false;

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
    nlohmann::json echo() const;
};

}  // namespace mixlap
