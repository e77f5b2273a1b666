#include "sbm/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "sbm/analytic/identities.hpp"
#include "sbm/cli/config.hpp"
#include "sbm/errors.hpp"

namespace sbm::cli {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

double as_number(const nlohmann::json& j) { return j.is_number() ? j.get<double>() : NAN; }

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw ResourceError("cannot write " + p.string(), 0);
    return os;
}

std::string cell(double v, int width, int prec = 6) {
    std::ostringstream os;
    os << std::setw(width);
    if (std::isnan(v)) os << "-";
    else os << std::setprecision(prec) << v;
    return os.str();
}

}  // namespace

std::size_t write_results_csv(std::ostream& os, const harness::RunSummary& summary) {
    os << "check,replicate,time,statistic,value\n";
    std::size_t rows = 0;
    for (const auto& c : summary.checks) {
        const std::string name = c.name();
        const std::size_t T = c.times.size(), S = c.statistics.size();
        if (T == 0 || S == 0) continue;
        const std::size_t R = c.values.size() / (T * S);
        for (std::size_t r = 0; r < R; ++r)
            for (std::size_t k = 0; k < T; ++k) {
                const std::string prefix = name + "," + std::to_string(r) + "," + g17(c.times[k]) + ",";
                for (std::size_t s = 0; s < S; ++s) {
                    os << prefix << c.statistics[s] << ',' << g17(c.value(r, k, s)) << '\n';
                    ++rows;
                }
            }
    }
    return rows;
}

nlohmann::json summary_json(const harness::RunSummary& s, const harness::ExperimentPlan& plan) {
    nlohmann::json meta{
        {"seed", s.seed},
        {"N", s.N},
        {"dt", s.dt},
        {"t_max", plan.config.t_max},
        {"snapshot_times", plan.times()},
        {"replicates", s.replicates},
        {"threads", s.threads},
        {"engine", s.engine},
        {"model", s.model},
        {"initial", s.initial},
        {"eps", plan.eps},
        {"delta", plan.delta},
        {"wall_seconds", s.wall_seconds},
    };
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : s.checks) {
        nlohmann::json metrics = nlohmann::json::array();
        for (const auto& m : c.metrics)
            metrics.push_back({{"name", m.name},
                               {"value", number_or_null(m.value)},
                               {"target", number_or_null(m.target)},
                               {"se", number_or_null(m.se)},
                               {"z", number_or_null(m.z)},
                               {"tolerance", number_or_null(m.tolerance)},
                               {"pass", m.pass},
                               {"gating", m.gating}});
        checks.push_back({{"name", c.name()},
                          {"verdict", c.pass ? "PASS" : "FAIL"},
                          {"headline", c.headline},
                          {"primary", c.primary},
                          {"metrics", metrics},
                          {"notes", c.notes}});
    }
    return {{"metadata", meta}, {"checks", checks}, {"all_pass", s.all_pass()}};
}

void write_plotdata(const std::filesystem::path& dir, const harness::RunSummary& summary) {
    std::filesystem::create_directories(dir);
    for (const auto& c : summary.checks)
        for (const auto& series : c.plots) {
            auto os = open_out(dir / (series.name + ".csv"));
            for (std::size_t j = 0; j < series.columns.size(); ++j) os << (j ? "," : "") << series.columns[j];
            os << '\n';
            for (const auto& row : series.rows) {
                for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << g17(row[j]);
                os << '\n';
            }
        }
}

int print_report(const nlohmann::json& summary, std::ostream& os) {
    if (!summary.is_object() || !summary.contains("checks") || !summary["checks"].is_array())
        throw ConfigError("summary: missing checks array");
    os << std::left << std::setw(12) << "check" << std::setw(34) << "statistic" << std::right << std::setw(14)
       << "value" << std::setw(14) << "target" << std::setw(14) << "deviation" << "  verdict\n";
    bool all = true;
    for (const auto& c : summary["checks"]) {
        if (!c.is_object() || !c.contains("name") || !c["name"].is_string() || !c.contains("verdict") ||
            !c["verdict"].is_string() || !c.contains("metrics") || !c["metrics"].is_array())
            throw ConfigError("summary: malformed check entry");
        const auto verdict = c["verdict"].get<std::string>();
        if (verdict != "PASS" && verdict != "FAIL") throw ConfigError("summary: verdict must be PASS or FAIL");
        all = all && verdict == "PASS";

        const nlohmann::json* shown = nullptr;
        const std::string primary = c.value("primary", std::string());
        for (const auto& m : c["metrics"]) {
            if (!m.is_object() || !m.contains("name") || !m["name"].is_string())
                throw ConfigError("summary: malformed metric in " + c["name"].get<std::string>());
            if (!shown || m["name"] == primary) shown = &m;
            if (m["name"] == primary) break;
        }
        std::string stat = "-";
        double value = NAN, target = NAN;
        if (shown) {
            stat = (*shown)["name"].get<std::string>();
            value = as_number(shown->value("value", nlohmann::json()));
            target = as_number(shown->value("target", nlohmann::json()));
        }
        os << std::left << std::setw(12) << c["name"].get<std::string>() << std::setw(34) << stat << std::right
           << cell(value, 14) << cell(target, 14) << cell(value - target, 14, 3) << "  " << verdict << '\n';
    }
    return all ? kPass : kCheckFailure;
}

int run_command(const std::string& config_path, const Overrides& overrides, std::ostream& out, std::ostream& err) {
    RunSettings settings;
    try {
        settings = load_config(config_path);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    auto& plan = settings.plan;
    if (overrides.seed) plan.config.seed = *overrides.seed;
    if (overrides.replicates) plan.replicates = *overrides.replicates;
    if (overrides.threads) plan.threads = *overrides.threads;
    std::string out_dir = settings.out_dir;
    if (const char* env = std::getenv(kOutDirEnv); env && *env) out_dir = env;
    if (overrides.out_dir) out_dir = *overrides.out_dir;
    const std::filesystem::path dir(out_dir);
    if (settings.dump_snapshots) plan.dump_dir = (dir / "snapshots").string();

    harness::RunSummary summary;
    try {
        summary = harness::run_plan(plan);
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return kResourceError;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kResourceError;
    } catch (const Error& e) {
        err << "config error: " << locate(settings, e.what()) << '\n';
        return kConfigError;
    }

    try {
        std::filesystem::create_directories(dir);
        const auto json = summary_json(summary, plan);
        {
            auto os = open_out(dir / "results.csv");
            const std::size_t rows = write_results_csv(os, summary);
            if (rows != harness::expected_rows(plan))
                throw std::logic_error("results.csv row count " + std::to_string(rows) + " differs from " +
                                       std::to_string(harness::expected_rows(plan)));
        }
        {
            auto os = open_out(dir / "summary.json");
            os << json.dump(2) << '\n';
        }
        write_plotdata(dir / "plotdata", summary);
        const int code = print_report(json, out);
        out << "wrote " << (dir / "results.csv").string() << ", summary.json and plotdata/ ("
            << std::setprecision(3) << summary.wall_seconds << " s, " << summary.threads << " threads)\n";
        return code;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return kResourceError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "resource error: " << e.what() << '\n';
        return kResourceError;
    }
}

int report_command(const std::string& summary_path, std::ostream& out, std::ostream& err) {
    std::ifstream in(summary_path);
    if (!in) {
        err << "cannot read " << summary_path << '\n';
        return kConfigError;
    }
    try {
        const auto json = nlohmann::json::parse(in);
        return print_report(json, out);
    } catch (const nlohmann::json::exception& e) {
        err << "malformed summary: " << e.what() << '\n';
    } catch (const ConfigError& e) {
        err << "malformed summary: " << e.what() << '\n';
    }
    return kConfigError;
}

int selftest_command(std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto results = analytic::run_identity_suite();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool all = true;
    for (const auto& r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(40) << r.name << " error " << std::setw(12)
            << std::setprecision(3) << r.error << " tolerance " << r.tolerance << '\n';
        all = all && r.pass;
    }
    out << results.size() << " identities in " << std::setprecision(3) << secs << " s\n";
    return all ? kPass : kCheckFailure;
}

}  // namespace sbm::cli
