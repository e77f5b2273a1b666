#include <iostream>

#include "CLI11.hpp"
#include "sbm/cli/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Super-Brownian motion simulation and limit-theorem checks"};
    app.require_subcommand(1);

    sbm::cli::Overrides ov;
    std::string config_path;
    auto* run = app.add_subcommand("run", "Run the checks in a config file");
    run->add_option("config", config_path, "Config file")->required();
    run->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { ov.seed = v; }, "Master seed");
    run->add_option_function<int>("--replicates", [&](const int& v) { ov.replicates = v; }, "Replicate count");
    run->add_option_function<std::string>("--out-dir", [&](const std::string& v) { ov.out_dir = v; },
                                          "Output directory");
    run->add_option_function<unsigned>("--threads", [&](const unsigned& v) { ov.threads = v; },
                                       "Worker threads (1 runs sequentially)");

    std::string summary_path;
    auto* report = app.add_subcommand("report", "Print the verdict table of a summary.json");
    report->add_option("summary", summary_path, "summary.json")->required();

    auto* selftest = app.add_subcommand("selftest", "Run the analytic identity suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : sbm::cli::kConfigError;
    }

    if (*run) return sbm::cli::run_command(config_path, ov, std::cout, std::cerr);
    if (*report) return sbm::cli::report_command(summary_path, std::cout, std::cerr);
    if (*selftest) return sbm::cli::selftest_command(std::cout);
    return sbm::cli::kConfigError;
}
