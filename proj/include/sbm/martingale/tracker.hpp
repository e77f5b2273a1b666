#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sbm/analytic/model.hpp"
#include "sbm/sim/particle_cloud.hpp"

namespace sbm {

// W_t(lambda) = e^{-rho(lambda) t} <X_t, conj(phi_lambda)>, with phi the plane wave in full
// space and the sine-product mode in the orthant.
std::complex<double> w_value(const ParticleCloud& cloud, const FourierMode& mode, const ModelParams& params);

// Time series of W_t(lambda) for every replicate; samples[r][k] is replicate r at times[k].
struct WTrack {
    FourierMode mode;
    ModelParams params;
    std::vector<double> times;
    std::vector<std::vector<std::complex<double>>> samples;

    std::size_t replicates() const { return samples.size(); }
    std::size_t time_index(double t) const;  // exact match required
};

// Lattice of modes inside Lambda_eps = {|lambda|^2 <= beta - eps}: the cube lattice with
// `points_per_axis` nodes on [-r, r]^d, r = sqrt(beta - eps), restricted to the ball.
struct LambdaGrid {
    double eps = 0.0;
    int points_per_axis = 5;
    double radius = 0.0;
    std::vector<FourierMode> nodes;

    static LambdaGrid lattice(const ModelParams& params, double eps, int points_per_axis = 5);
    // Throws PreconditionError if a node lies outside Lambda_eps.
    void require_members(const ModelParams& params) const;
};

struct DriftRow {
    double s = 0.0;
    double t = 0.0;
    std::complex<double> mean;
    double se_re = 0.0;
    double se_im = 0.0;
    double z = 0.0;  // worse of the two component z-scores
    bool pass = false;
};

struct DriftReport {
    FourierMode mode;
    std::vector<DriftRow> rows;
    bool pass = false;
};

// Replicate mean of W_t - W_s per pair with a 3 SE gate on each component. Needs at least
// two snapshot times and 30 replicates (ConfigError otherwise).
DriftReport martingale_drift_test(const WTrack& track, const std::vector<std::pair<double, double>>& pairs);

struct VarianceRow {
    double t = 0.0;
    double mean_sq = 0.0;
    double se = 0.0;
    double target = 0.0;
    double allowance = 0.0;  // beta / (2 alpha N) * (target - 1)
    double z = 0.0;
    bool pass = false;
};

struct VarianceReport {
    FourierMode mode;
    std::vector<VarianceRow> rows;
    bool pass = false;
};

// Replicate mean of |W_t|^2 against the unit-point-mass oracle, gated at 3 SE plus the
// O(1/N) allowance.
VarianceReport variance_match_test(const WTrack& track, const std::vector<double>& times, std::int64_t N);

struct LimitEstimate {
    FourierMode mode;
    double t_final = 0.0;
    double t_half = 0.0;
    std::vector<std::complex<double>> values;  // W_{t_max} per replicate
    std::vector<double> tail_increment;        // |W_{t_max} - W_{t_max/2}|
};

// Final-time value as the limit estimate. PreconditionError naming 2 rho - beta when the
// mode is outside the convergence region.
LimitEstimate estimate_limit(const WTrack& track);

// Replicate mean of |W_{t_to} - W_{t_from}|^2.
double mean_square_increment(const WTrack& track, double t_from, double t_to);

struct UniformReport {
    double eps = 0.0;
    std::vector<double> times;
    std::vector<double> mean_sup;     // replicate mean of the grid sup of |W_t - W_{t_max}|
    std::vector<double> fit_times;    // times entering the log-linear fit
    double slope = 0.0;
    double slope_se = 0.0;
    double threshold = 0.0;           // -eps/2 + 2 slope_se
    bool degenerate = false;          // sup identically zero
    bool pass = false;
    std::vector<std::vector<double>> sup;  // [replicate][time]
};

// Fits log(mean sup) against t on the second half of the time range, excluding t_max.
// Needs at least 4 snapshot times (ConfigError otherwise).
UniformReport uniform_convergence_check(const LambdaGrid& grid, const std::vector<WTrack>& tracks);

}  // namespace sbm
