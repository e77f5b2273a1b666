// Acceptance runner. One PASS/FAIL line per criterion:
//   acceptance selftest
//   acceptance fullspace <desk_fullspace.cfg>
//   acceptance orthant <desk_orthant.cfg>
//   acceptance determinism <sbm binary> <config> <scratch dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"
#include "sbm/analytic/identities.hpp"
#include "sbm/analytic/moments.hpp"
#include "sbm/cli/config.hpp"
#include "sbm/errors.hpp"
#include "sbm/harness/checks.hpp"

using namespace sbm;
using harness::Check;
using harness::CheckReport;

namespace {

int failures = 0;

void criterion(int n, bool pass, const std::string& what) {
    std::printf("criterion %d %s  %s\n", n, pass ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

void info(const std::string& line) { std::printf("    %s\n", line.c_str()); }

std::string num(double v, const char* format = "%.6g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

void show(const harness::Metric& m) {
    info(m.name + " = " + num(m.value) + " target " + num(m.target) + " se " + num(m.se, "%.3g") + " tol " +
         num(m.tolerance, "%.3g") + (m.pass ? " ok" : " out") + (m.gating ? "" : " (info)"));
}

const CheckReport& find(const harness::RunSummary& s, Check c) {
    for (const auto& r : s.checks)
        if (r.check == c) return r;
    throw ConfigError("check " + std::string(harness::check_name(c)) + " missing from the run");
}

bool metrics_pass(const CheckReport& r, const std::string& prefix) {
    bool ok = true, any = false;
    for (const auto& m : r.metrics)
        if (m.name.rfind(prefix, 0) == 0) {
            any = true;
            ok = ok && m.pass;
            show(m);
        }
    return any && ok;
}

int run_selftest() {
    const auto start = std::chrono::steady_clock::now();
    const auto results = analytic::run_identity_suite();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = secs < 5.0;
    for (const auto& r : results) {
        const double limit = r.name == "images_chapman_kolmogorov" ? 1e-8 : 1e-10;
        ok = ok && r.pass && r.error <= limit;
        info(r.name + " error " + num(r.error, "%.3g") + " (limit " + num(std::min(limit, r.tolerance), "%g") + ")");
    }
    criterion(1, ok, "identity suite, " + std::to_string(results.size()) + " identities in " + num(secs, "%.3f") + " s");
    return failures;
}

harness::RunSummary run_config(const std::string& path) {
    auto settings = cli::load_config(path);
    std::printf("running %s: %d replicates, N = %lld\n", path.c_str(), settings.plan.replicates,
                static_cast<long long>(settings.plan.config.N));
    std::fflush(stdout);
    auto s = harness::run_plan(settings.plan);
    std::printf("simulation and reports took %.1f s on %u threads\n", s.wall_seconds, s.threads);
    return s;
}

int run_fullspace(const std::string& path) {
    const auto s = run_config(path);

    const auto& moments = find(s, Check::Moments);
    criterion(2, metrics_pass(moments, "normalized_mass_mean"), "first-moment gate at t = 1, 2, 4");

    const bool second = metrics_pass(moments, "mass_second_moment");
    const ModelParams unit{1, 1.0, 1.0, FullSpace{}};
    info("closed form at alpha = beta = 1, t = 1: " +
         num(analytic::second_moment(TestFunction::constant_one(1), 1.0, InitialMeasure::point({0.0}), unit), "%.7g"));
    criterion(3, second, "second-moment gate at t = 1");

    const auto& mart = find(s, Check::Martingale);
    const auto& var = find(s, Check::Variance);
    const bool drift = metrics_pass(mart, "drift");
    const bool vmatch = metrics_pass(var, "abs2_W");
    criterion(4, drift && vmatch, "zero drift and E|W_t|^2 on lambda = 0, mid-grid node, critical shell");

    const auto& uni = find(s, Check::Uniform);
    criterion(5, metrics_pass(uni, "sup_decay_slope"), uni.headline);

    const auto& sc = find(s, Check::Scaling);
    const auto& sl = find(s, Check::Slln);
    const bool a = metrics_pass(sc, "slope") && metrics_pass(sc, "intercept");
    const bool b = metrics_pass(sl, "slope");
    for (const auto& m : sc.metrics)
        if (!m.gating) show(m);
    criterion(6, a && b, "pairing: " + sc.headline + "; ratio " + sl.headline);

    const auto& sp = find(s, Check::Spectral);
    for (const auto& m : sp.metrics) show(m);
    criterion(7, sp.pass, sp.headline);
    return failures;
}

int run_orthant(const std::string& path) {
    const auto s = run_config(path);
    const auto& o = find(s, Check::Orthant);
    const bool drift = metrics_pass(o, "drift");
    const harness::Metric* slope = o.metric("slope");
    for (const auto& m : o.metrics)
        if (m.name.rfind("drift", 0) != 0) show(m);
    for (const auto& n : o.notes) info(n);
    criterion(8, drift && slope && slope->pass, "zero drift of the weighted mass; " + o.headline);
    return failures;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_cli(const std::string& bin, const std::string& config, const std::filesystem::path& out, int threads) {
    const std::string cmd = "\"" + bin + "\" run \"" + config + "\" --threads " + std::to_string(threads) +
                            " --out-dir \"" + out.string() + "\" > \"" + out.string() + ".log\" 2>&1";
    std::filesystem::create_directories(out.parent_path());
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> verdicts(const std::filesystem::path& summary) {
    std::vector<std::string> v;
    const auto j = nlohmann::json::parse(slurp(summary));
    for (const auto& c : j["checks"]) v.push_back(c["name"].get<std::string>() + "=" + c["verdict"].get<std::string>());
    return v;
}

int run_determinism(const std::string& bin, const std::string& config, const std::string& scratch) {
    const std::filesystem::path root(scratch);
    std::filesystem::remove_all(root);
    const int c1 = run_cli(bin, config, root / "a", 1);
    const int c2 = run_cli(bin, config, root / "b", 1);
    const int c4 = run_cli(bin, config, root / "c", 4);
    info("exit codes " + std::to_string(c1) + " " + std::to_string(c2) + " " + std::to_string(c4));
    const bool ran = c1 >= 0 && c1 <= 1 && c2 == c1 && c4 == c1;
    bool same_csv = false, same_verdicts = false;
    if (ran) {
        const auto a = slurp(root / "a" / "results.csv"), b = slurp(root / "b" / "results.csv");
        same_csv = !a.empty() && a == b;
        same_verdicts = verdicts(root / "a" / "summary.json") == verdicts(root / "c" / "summary.json");
        info("results.csv " + std::to_string(a.size()) + " bytes, identical at --threads 1: " + (same_csv ? "yes" : "no"));
        info("results.csv identical at --threads 4: " +
             std::string(slurp(root / "c" / "results.csv") == a ? "yes" : "no"));
        std::string vs;
        for (const auto& v : verdicts(root / "a" / "summary.json")) vs += v + " ";
        info("verdicts " + vs + (same_verdicts ? "(same at --threads 4)" : "(differ at --threads 4)"));
    }
    criterion(9, ran && same_csv && same_verdicts, "byte-identical results.csv and thread-independent verdicts");
    return failures;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (args.size() == 1 && args[0] == "selftest") return run_selftest();
        if (args.size() == 2 && args[0] == "fullspace") return run_fullspace(args[1]);
        if (args.size() == 2 && args[0] == "orthant") return run_orthant(args[1]);
        if (args.size() == 4 && args[0] == "determinism") return run_determinism(args[1], args[2], args[3]);
    } catch (const std::exception& e) {
        std::printf("error: %s\n", e.what());
        return 2;
    }
    std::fprintf(stderr, "usage: acceptance selftest | fullspace <cfg> | orthant <cfg> | determinism <bin> <cfg> <dir>\n");
    return 2;
}
