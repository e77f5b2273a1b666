#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sbm/analytic/generalized_fourier.hpp"
#include "sbm/harness/plan.hpp"
#include "sbm/harness/replicates.hpp"

namespace sbm::harness {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Metric {
    std::string name;
    double value = 0.0;
    double target = kNaN;
    double se = kNaN;
    double z = kNaN;
    double tolerance = kNaN;
    bool pass = true;
    bool gating = true;  // informational metrics do not enter the verdict
};

// Plot data: one table per diagnostic.
struct Series {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct CheckReport {
    Check check = Check::Moments;
    bool pass = false;
    std::string headline;
    std::string primary;  // metric shown in the one-line report
    std::vector<Metric> metrics;
    std::vector<std::string> notes;

    // Long-format values: values[(r * times.size() + k) * statistics.size() + s].
    std::vector<std::string> statistics;
    std::vector<double> times;
    std::vector<double> values;
    std::vector<Series> plots;

    std::string name() const { return std::string(check_name(check)); }
    double value(std::size_t r, std::size_t k, std::size_t s) const {
        return values[(r * times.size() + k) * statistics.size() + s];
    }
    const Metric* metric(const std::string& name) const;
    void finish();  // pass = all gating metrics pass
};

CheckReport moment_validation(const ExperimentPlan& plan, const RunData& data);
CheckReport martingale_report(const ExperimentPlan& plan, const RunData& data);
CheckReport variance_report(const ExperimentPlan& plan, const RunData& data);
CheckReport uniform_report(const ExperimentPlan& plan, const RunData& data);
CheckReport spectral_reconstruction(const ExperimentPlan& plan, const RunData& data);
CheckReport scaling_statistic(const ExperimentPlan& plan, const RunData& data);
CheckReport slln_statistic(const ExperimentPlan& plan, const RunData& data);
CheckReport orthant_statistic(const ExperimentPlan& plan, const RunData& data);

CheckReport run_check(Check c, const ExperimentPlan& plan, const RunData& data);

// Multilinear interpolation of per-node values on the cube lattice with `points` nodes per
// axis on [-radius, radius]^d; values are ordered with the first coordinate slowest.
class LatticeSurface {
public:
    LatticeSurface(int dim, int points, double radius, std::vector<std::complex<double>> values);
    std::complex<double> operator()(const FourierMode& mode) const;

private:
    int dim_;
    int points_;
    double radius_;
    std::vector<std::complex<double>> values_;
};

// (2 pi)^{-d} int_{|lambda|^2 <= beta - eps} surface(lambda) e^{t rho(lambda)} fhat(lambda) dlambda.
std::complex<double> band_limited_integral(const analytic::SpectralFunction& surface,
                                           const analytic::SpectralFunction& fhat, double t,
                                           const ModelParams& params, double eps);

// Expected long-format row count of each check for the plan.
std::size_t statistic_count(Check c, const ExperimentPlan& plan);
std::size_t expected_rows(const ExperimentPlan& plan);

struct RunSummary {
    std::uint64_t seed = 0;
    std::int64_t N = 0;
    double dt = 0.0;
    int replicates = 0;
    unsigned threads = 0;
    double wall_seconds = 0.0;
    std::string engine;
    std::string model;
    std::string initial;
    std::vector<CheckReport> checks;

    bool all_pass() const;
};

RunSummary run_plan(const ExperimentPlan& plan);

}  // namespace sbm::harness
