#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mixlap/config.hpp"
#include "mixlap/errors.hpp"
#include "mixlap/matrix_market.hpp"
#include "mixlap/operators.hpp"
#include "mixlap/reference.hpp"
#include "mixlap/report.hpp"
#include "mixlap/runner.hpp"

using namespace mixlap;

namespace {

nlohmann::json base_config() {
    return {
        {"schema_version", 1},
        {"domain", {{"kind", "interval"}, {"a", 0.0}, {"b", 1.0}}},
        {"s", 0.25},
        {"h", 1.0 / 64},
        {"lambda", {{"policy", "fixed"}, {"value", 10.0}}},
        {"nonlinearity", {{"name", "linear"}, {"a", 1.0}, {"b", -1.0}}},
        {"audits", {"moser", "comparison"}},
        {"seed", 7},
        {"output", {{"report", "/tmp/mixlap_test_report.json"}}},
    };
}

std::string strip_timestamp(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("\"timestamp\"") != std::string::npos) continue;
        out << line << "\n";
    }
    return out.str();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE_BEGIN("cli_report");

TEST_CASE("config validation failures name the field") {
    auto bad_s = base_config();
    bad_s["s"] = 1.5;
    try {
        ExperimentConfig::from_json(bad_s);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("s") != std::string::npos);
    }

    auto bad_audit = base_config();
    bad_audit["audits"] = {"frobnicate"};
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad_audit), ConfigError);

    auto bad_domain = base_config();
    bad_domain["domain"] = {{"kind", "cube"}};
    CHECK_THROWS_AS(ExperimentConfig::from_json(bad_domain), ConfigError);

    auto no_h = base_config();
    no_h.erase("h");
    CHECK_THROWS_AS(ExperimentConfig::from_json(no_h), ConfigError);

    // s > 1/2 with holder requires advisory
    auto adv = base_config();
    adv["domain"] = {{"kind", "rectangle"}, {"lo", {0.0, 0.0}}, {"hi", {1.0, 1.0}}};
    adv["s"] = 0.75;
    adv["audits"] = {"holder"};
    CHECK_THROWS_AS(ExperimentConfig::from_json(adv), ConfigError);
    adv["advisory"] = true;
    CHECK_NOTHROW(ExperimentConfig::from_json(adv));

    // moser needs n > 2s
    auto sub = base_config();
    sub["s"] = 0.5;
    sub["audits"] = {"moser"};
    CHECK_THROWS_AS(ExperimentConfig::from_json(sub), ConfigError);
}

TEST_CASE("runner: trivial zero config passes with exit 0") {
    auto j = base_config();
    j["nonlinearity"] = {{"name", "zero"}};
    j["audits"] = {"moser", "comparison", "interpolation"};
    j["output"] = {{"report", "/tmp/mixlap_zero_report.json"}};
    const RunResult r = run_experiment(ExperimentConfig::from_json(j));
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("pass").get<bool>());
}

TEST_CASE("runner: full interval config produces a passing Moser certificate") {
    auto j = base_config();
    j["audits"] = {"moser", "comparison", "interpolation", "contraction"};
    const RunResult r = run_experiment(ExperimentConfig::from_json(j));
    CHECK(r.exit_code == 0);
    const auto& cert =
        r.report.at("audits").at("moser").at("details").at("certificate");
    CHECK(cert.at("pass").get<bool>());
}

TEST_CASE("determinism: identical config + seed gives byte-identical reports") {
    auto j = base_config();
    j["audits"] = {"moser", "comparison", "interpolation"};
    j["output"] = {{"report", "/tmp/mixlap_det_a.json"}};
    run_experiment(ExperimentConfig::from_json(j));
    j["output"] = {{"report", "/tmp/mixlap_det_b.json"}};
    run_experiment(ExperimentConfig::from_json(j));
    const std::string a = strip_timestamp(slurp("/tmp/mixlap_det_a.json"));
    const std::string b = strip_timestamp(slurp("/tmp/mixlap_det_b.json"));
    CHECK(a == b);
    CHECK(!a.empty());
}

TEST_CASE("floats serialize at 17 significant digits and round-trip") {
    nlohmann::json j;
    j["x"] = 0.1 + 0.2;
    j["y"] = 1.0 / 3.0;
    const std::string text = dump_json_17(j);
    const auto parsed = nlohmann::json::parse(text);
    CHECK(parsed.at("x").get<double>() == 0.1 + 0.2);
    CHECK(parsed.at("y").get<double>() == 1.0 / 3.0);
    CHECK(text.find("0.30000000000000004") != std::string::npos);
}

TEST_CASE("matrix market: 1D laplacian h=0.25 (3x3, 7 logical nonzeros)") {
    const Grid g = build_grid(Domain::interval(0, 1), 0.25);
    const auto A = assemble_laplacian(g);
    std::ostringstream os;
    write_matrix_market_sym(os, A);
    const std::string text = os.str();
    CHECK(text.rfind("%%MatrixMarket matrix coordinate real symmetric", 0) == 0);

    std::istringstream is(text);
    const Eigen::MatrixXd B = read_matrix_market_sym(is);
    REQUIRE(B.rows() == 3);
    int nnz = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (B(i, j) != 0.0) ++nnz;
    CHECK(nnz == 7);  // expanded logical nonzeros
    // stored entries: diag (3) + sub-diagonal (2)
    int lines = 0;
    std::istringstream count(text);
    std::string line;
    while (std::getline(count, line)) ++lines;
    CHECK(lines == 2 + 5);

    CHECK((B - Eigen::MatrixXd(A)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix market: dense fractional export round-trips the matvec") {
    const GridPtr grid = make_grid(Domain::interval(0, 1), 1.0 / 16);
    const auto A = assemble_fractional(*grid, FractionalParams(1, 0.25));
    std::ostringstream os;
    write_matrix_market_sym(os, A);
    // N(N+1)/2 stored entries
    std::istringstream count(os.str());
    std::string line;
    int lines = 0;
    while (std::getline(count, line)) ++lines;
    const int n = static_cast<int>(A.rows());
    CHECK(lines == 2 + n * (n + 1) / 2);

    std::istringstream is(os.str());
    const Eigen::MatrixXd B = read_matrix_market_sym(is);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = std::sin(1.0 + i);
    const Eigen::VectorXd ya = reference::matvec(A, x);
    const Eigen::VectorXd yb = reference::matvec(B, x);
    CHECK((ya - yb).cwiseAbs().maxCoeff() <= 1e-15 * ya.cwiseAbs().maxCoeff());
}

TEST_CASE("export_matrix subcommand writes the requested operator") {
    const std::string cfg_path = "/tmp/mixlap_export_cfg.json";
    {
        std::ofstream out(cfg_path);
        out << base_config().dump(2);
    }
    CHECK(export_matrix(cfg_path, "loc", "/tmp/mixlap_loc.mtx") == 0);
    CHECK(export_matrix(cfg_path, "frac", "/tmp/mixlap_frac.mtx") == 0);
    CHECK(export_matrix(cfg_path, "nope", "/tmp/mixlap_x.mtx") == 2);
    std::ifstream in("/tmp/mixlap_frac.mtx");
    const Eigen::MatrixXd B = read_matrix_market_sym(in);
    CHECK(B.rows() == 63);
}

TEST_CASE("run_config_file: exit 2 on malformed config") {
    const std::string path = "/tmp/mixlap_bad_cfg.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK(run_config_file(path) == 2);
    {
        auto j = base_config();
        j["s"] = 1.5;
        std::ofstream out(path);
        out << j.dump(2);
    }
    CHECK(run_config_file(path) == 2);
}

TEST_SUITE_END();
