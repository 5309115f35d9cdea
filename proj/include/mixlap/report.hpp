#pragma once

#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mixlap {

/// One audited inequality: both sides, verdict, where the tolerance comes from.
struct AuditCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
    std::string tolerance_provenance;
};

struct AuditReport {
    std::string audit;
    bool pass = true;
    bool advisory = false;
    double fitted_constant = std::numeric_limits<double>::quiet_NaN();
    std::vector<AuditCheck> checks;
    nlohmann::json details = nlohmann::json::object();

    void add(const std::string& name, double lhs, double rhs, bool ok,
             const std::string& provenance) {
        checks.push_back({name, lhs, rhs, ok, provenance});
        pass = pass && ok;
    }
    nlohmann::json to_json() const;
};

/// JSON writer with every float at 17 significant digits (report contract).
std::string dump_json_17(const nlohmann::json& j, int indent = 2);

}  // namespace mixlap
