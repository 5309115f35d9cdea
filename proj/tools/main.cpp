#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mixlap/errors.hpp"
#include "mixlap/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"mixlap — mixed local–nonlocal Dirichlet solver and audit suite"};
    app.require_subcommand(1);

    std::string config_path;
    bool advisory = false;

    auto* run = app.add_subcommand("run", "run the experiment described by a config");
    run->add_option("config", config_path, "JSON config path")->required();
    run->add_flag("--advisory", advisory,
                  "permit s > 1/2 for the stability/holder audits");

    std::string which = "loc", out_path;
    auto* exp = app.add_subcommand("export-matrix",
                                   "write an assembled operator in MatrixMarket form");
    exp->add_option("config", config_path, "JSON config path")->required();
    exp->add_option("--which", which, "loc | frac")->required();
    exp->add_option("--out", out_path, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (advisory) {
                // the flag must take effect before validation
                std::ifstream in(config_path);
                if (!in) throw mixlap::ConfigError("cannot open config: " + config_path);
                nlohmann::json j;
                in >> j;
                j["advisory"] = true;
                return mixlap::run_experiment(mixlap::ExperimentConfig::from_json(j))
                    .exit_code;
            }
            return mixlap::run_config_file(config_path);
        }
        return mixlap::export_matrix(config_path, which, out_path);
    } catch (const mixlap::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config is not valid JSON: " << e.what() << "\n";
        return 2;
    } catch (const mixlap::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
