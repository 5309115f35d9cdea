#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "mixlap/config.hpp"

namespace mixlap {

struct RunResult {
    int exit_code = 0;  // 0 pass, 1 audit failure, 2 config error
    nlohmann::json report;
};

/// Grid -> assembly -> solve -> requested audits, report written to
/// cfg.report_path (also on audit failure). Deterministic for a fixed
/// (config, seed) up to the timestamp field.
RunResult run_experiment(const ExperimentConfig& cfg);

int run_config_file(const std::string& path);
int export_matrix(const std::string& config_path, const std::string& which,
                  const std::string& out_path);

}  // namespace mixlap
