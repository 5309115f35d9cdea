#include "mixlap/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "mixlap/errors.hpp"
#include "mixlap/semilinear.hpp"

namespace mixlap {

namespace {

const std::set<std::string> kKnownAudits = {
    "moser", "barrier", "comparison", "interpolation",
    "stability", "holder", "contraction"};

Domain parse_domain(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("domain: missing \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "interval")
        return Domain::interval(j.at("a").get<double>(), j.at("b").get<double>());
    if (kind == "ball") {
        Point c{0.0, 0.0};
        if (j.contains("center")) {
            c[0] = j.at("center").at(0).get<double>();
            c[1] = j.at("center").at(1).get<double>();
        }
        return Domain::ball(c, j.at("radius").get<double>());
    }
    if (kind == "rectangle") {
        const auto& lo = j.at("lo");
        const auto& hi = j.at("hi");
        return Domain::rectangle({lo.at(0).get<double>(), lo.at(1).get<double>()},
                                 {hi.at(0).get<double>(), hi.at(1).get<double>()});
    }
    throw ConfigError("domain.kind: unknown value \"" + kind + "\"");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    try {
        if (j.contains("schema_version"))
            cfg.schema_version = j.at("schema_version").get<int>();
        if (cfg.schema_version != 1)
            throw ConfigError("schema_version: expected 1");
        cfg.domain = parse_domain(j.at("domain"));

        cfg.s = j.at("s").get<double>();
        if (!(cfg.s > 0.0 && cfg.s < 1.0))
            throw ConfigError("s: must lie in (0,1), got " + std::to_string(cfg.s));
        // n > 2s is needed only by the critical-exponent machinery

        if (j.contains("h")) cfg.h_list = {j.at("h").get<double>()};
        if (j.contains("h_list"))
            cfg.h_list = j.at("h_list").get<std::vector<double>>();
        if (cfg.h_list.empty()) throw ConfigError("h: provide \"h\" or \"h_list\"");
        for (double h : cfg.h_list)
            if (!(h > 0.0)) throw ConfigError("h: spacings must be positive");
        std::sort(cfg.h_list.begin(), cfg.h_list.end(), std::greater<double>());

        if (j.contains("lambda")) {
            const auto& lj = j.at("lambda");
            const std::string policy = lj.value("policy", std::string("fixed"));
            if (policy == "fixed") {
                cfg.lambda.kind = LambdaPolicy::Kind::Fixed;
                cfg.lambda.value = lj.value("value", 10.0);
                if (!(cfg.lambda.value >= 0.0))
                    throw ConfigError("lambda.value: must be >= 0");
            } else if (policy == "auto-threshold") {
                cfg.lambda.kind = LambdaPolicy::Kind::AutoThreshold;
                cfg.lambda.factor = lj.value("factor", 2.0);
                if (!(cfg.lambda.factor >= 1.0))
                    throw ConfigError("lambda.factor: must be >= 1");
            } else {
                throw ConfigError("lambda.policy: unknown value \"" + policy + "\"");
            }
        }

        if (j.contains("nonlinearity")) cfg.nonlinearity = j.at("nonlinearity");
        make_nonlinearity(cfg.nonlinearity);  // validates the catalog entry

        if (j.contains("audits"))
            cfg.audits = j.at("audits").get<std::vector<std::string>>();
        for (const auto& a : cfg.audits)
            if (!kKnownAudits.count(a))
                throw ConfigError("audits: unknown audit \"" + a + "\"");

        for (const auto& a : (j.contains("audits")
                                   ? j.at("audits").get<std::vector<std::string>>()
                                   : std::vector<std::string>{}))
            if (a == "moser" && !(cfg.domain.dim() > 2.0 * cfg.s))
                throw ConfigError("audits: moser requires n > 2s");

        cfg.advisory = j.value("advisory", false);
        if (cfg.s > 0.5 && !cfg.advisory) {
            for (const auto& a : cfg.audits)
                if (a == "stability" || a == "holder")
                    throw ConfigError("audits: \"" + a +
                                      "\" requires s <= 0.5 unless advisory=true");
        }

        cfg.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("output")) {
            const auto& oj = j.at("output");
            cfg.report_path = oj.value("report", cfg.report_path);
            cfg.csv_dir = oj.value("csv_dir", cfg.csv_dir);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(j);
}

nlohmann::json ExperimentConfig::echo() const {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    switch (domain.kind()) {
        case DomainKind::Interval:
            j["domain"] = {{"kind", "interval"}, {"a", domain.a()}, {"b", domain.b()}};
            break;
        case DomainKind::Ball:
            j["domain"] = {{"kind", "ball"},
                           {"center", {domain.ball_center()[0], domain.ball_center()[1]}},
                           {"radius", domain.radius()}};
            break;
        case DomainKind::Rectangle:
            j["domain"] = {{"kind", "rectangle"},
                           {"lo", {domain.lo()[0], domain.lo()[1]}},
                           {"hi", {domain.hi()[0], domain.hi()[1]}}};
            break;
    }
    j["s"] = s;
    j["n"] = domain.dim();
    j["h_list"] = h_list;
    j["lambda"] = (lambda.kind == LambdaPolicy::Kind::Fixed)
                      ? nlohmann::json{{"policy", "fixed"}, {"value", lambda.value}}
                      : nlohmann::json{{"policy", "auto-threshold"},
                                       {"factor", lambda.factor}};
    j["nonlinearity"] = nonlinearity;
    j["audits"] = audits;
    j["seed"] = seed;
    j["advisory"] = advisory;
    return j;
}

}  // namespace mixlap
