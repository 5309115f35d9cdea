#include "mixlap/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mixlap {

nlohmann::json AuditReport::to_json() const {
    nlohmann::json j;
    j["audit"] = audit;
    j["pass"] = pass;
    j["advisory"] = advisory;
    if (std::isfinite(fitted_constant)) j["fitted_constant"] = fitted_constant;
    auto arr = nlohmann::json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"lhs", c.lhs},
                       {"rhs", c.rhs},
                       {"pass", c.pass},
                       {"tolerance_provenance", c.tolerance_provenance}});
    }
    j["checks"] = arr;
    j["details"] = details;
    return j;
}

namespace {

void write_indent(std::ostringstream& os, int depth, int indent) {
    os << '\n';
    for (int i = 0; i < depth * indent; ++i) os << ' ';
}

void write_value(std::ostringstream& os, const nlohmann::json& j, int depth,
                 int indent) {
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',';
                first = false;
                write_indent(os, depth + 1, indent);
                os << nlohmann::json(it.key()).dump() << ": ";
                write_value(os, it.value(), depth + 1, indent);
            }
            write_indent(os, depth, indent);
            os << '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << '[';
            bool first = true;
            for (const auto& el : j) {
                if (!first) os << ',';
                first = false;
                write_indent(os, depth + 1, indent);
                write_value(os, el, depth + 1, indent);
            }
            write_indent(os, depth, indent);
            os << ']';
            return;
        }
        case nlohmann::json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                os << "null";  // JSON has no inf/nan
            } else {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", v);
                os << buf;
            }
            return;
        }
        default:
            os << j.dump();
            return;
    }
}

}  // namespace

std::string dump_json_17(const nlohmann::json& j, int indent) {
    std::ostringstream os;
    write_value(os, j, 0, indent);
    os << '\n';
    return os.str();
}

}  // namespace mixlap
