#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sbm/analytic/model.hpp"
#include "sbm/analytic/test_function.hpp"
#include "sbm/martingale/tracker.hpp"
#include "sbm/sim/particle_cloud.hpp"

namespace sbm::harness {

enum class Check { Moments, Martingale, Variance, Uniform, Spectral, Scaling, Slln, Orthant };

std::string_view check_name(Check c);
std::optional<Check> parse_check(std::string_view name);
const std::vector<Check>& all_checks();

struct ExperimentPlan {
    SimConfig config;
    InitialMeasure init;
    int replicates = 200;
    unsigned threads = 0;  // 0 picks std::thread::hardware_concurrency
    std::vector<Check> checks;

    TestFunction f = TestFunction::box({0.0}, {1.0});           // moments, scaling, orthant
    TestFunction spectral_f = TestFunction::gaussian({0.0}, 1.0);
    IndicatorBox slln_box{{0.0}, {1.0}};

    double eps = 0.25;
    double delta = 0.0625;
    int grid_points = 5;
    int spectral_points = 5;  // per axis, for the limit surface

    std::vector<double> moment_times{1.0, 2.0, 4.0};
    double second_moment_time = 1.0;
    std::vector<std::pair<double, double>> drift_pairs{{0.0, 1.0}, {1.0, 2.0}, {2.0, 4.0}, {4.0, 6.0}};
    std::vector<double> variance_times{1.0, 2.0, 4.0, 6.0};
    std::vector<double> spectral_times{2.0, 4.0, 6.0};

    std::string dump_dir;  // one snapshot file per replicate when non-empty

    // Desk-scale defaults for the given model: full space starts at the origin with every
    // full-space check enabled; the orthant starts at x = 1 in each absorbed coordinate and
    // runs the orthant check on the box [1, 2] in those coordinates.
    static ExperimentPlan defaults(const ModelParams& params);

    // Rescales the default schedules to the horizon T: snapshots every T/12 and the moment,
    // drift, variance and spectral times at the multiples T/6, T/3, 2T/3, T.
    void set_horizon(double t_max);

    // Snapshot times with 0 prepended when missing.
    std::vector<double> times() const;
    bool enabled(Check c) const;

    // Throws ConfigError or PreconditionError when a requested check cannot run.
    void validate() const;

    // lambda = 0, a mid-grid node and a point on the critical shell 2 rho - beta = 0.
    std::vector<FourierMode> probe_modes() const;
    LambdaGrid uniform_grid() const;
    // Full cube lattice carrying the interpolated limit surface.
    std::vector<FourierMode> spectral_lattice() const;
    // Every mode whose W has to be recorded, without duplicates.
    std::vector<FourierMode> tracked_modes() const;
};

}  // namespace sbm::harness
