#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"
#include "sbm/harness/checks.hpp"

namespace sbm::cli {

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kConfigError = 2, kResourceError = 3 };

inline constexpr const char* kOutDirEnv = "SBM_OUT_DIR";

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> replicates;
    std::optional<std::string> out_dir;
    std::optional<unsigned> threads;
};

// Long format: check,replicate,time,statistic,value with %.17g numbers. Returns rows written.
std::size_t write_results_csv(std::ostream& os, const harness::RunSummary& summary);
nlohmann::json summary_json(const harness::RunSummary& summary, const harness::ExperimentPlan& plan);
void write_plotdata(const std::filesystem::path& dir, const harness::RunSummary& summary);

// One row per check from a parsed summary. Throws ConfigError when the document is malformed.
// Returns kPass iff every verdict is PASS.
int print_report(const nlohmann::json& summary, std::ostream& os);

int run_command(const std::string& config_path, const Overrides& overrides, std::ostream& out, std::ostream& err);
int report_command(const std::string& summary_path, std::ostream& out, std::ostream& err);
int selftest_command(std::ostream& out);

}  // namespace sbm::cli
