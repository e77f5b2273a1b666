#include "sbm/martingale/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sbm/analytic/moments.hpp"
#include "sbm/errors.hpp"
#include "sbm/util/stats.hpp"

namespace sbm {

std::complex<double> w_value(const ParticleCloud& cloud, const FourierMode& mode, const ModelParams& params) {
    return std::exp(-rho(mode, params) * cloud.time) * std::conj(integrate_mode(cloud, mode, params));
}

std::size_t WTrack::time_index(double t) const {
    const auto it = std::find(times.begin(), times.end(), t);
    if (it == times.end()) {
        std::ostringstream os;
        os << "time " << t << " is not a snapshot time";
        throw ConfigError(os.str());
    }
    return static_cast<std::size_t>(it - times.begin());
}

LambdaGrid LambdaGrid::lattice(const ModelParams& params, double eps, int points_per_axis) {
    if (!(eps > 0.0 && eps < params.beta)) throw ArgumentError("Lambda_eps grid needs 0 < eps < beta");
    if (points_per_axis < 1) throw ArgumentError("grid needs at least one point per axis");
    const double r2 = params.beta - eps;
    double r = std::sqrt(r2);
    while (r * r > r2) r = std::nextafter(r, 0.0);

    LambdaGrid grid;
    grid.eps = eps;
    grid.points_per_axis = points_per_axis;
    grid.radius = r;
    std::vector<double> axis(static_cast<std::size_t>(points_per_axis));
    for (int k = 0; k < points_per_axis; ++k)
        axis[k] = points_per_axis == 1 ? 0.0 : -r + 2.0 * r * k / (points_per_axis - 1);
    if (points_per_axis > 1) axis.back() = r;

    const int d = params.dim;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (;;) {
        FourierMode m;
        for (int j = 0; j < d; ++j) m.lambda.push_back(axis[idx[j]]);
        if (in_lambda_eps(m, eps, params)) grid.nodes.push_back(std::move(m));
        int j = d - 1;
        while (j >= 0 && ++idx[j] == points_per_axis) idx[j--] = 0;
        if (j < 0) break;
    }
    return grid;
}

void LambdaGrid::require_members(const ModelParams& params) const {
    for (const auto& m : nodes)
        if (!in_lambda_eps(m, eps, params)) throw PreconditionError("grid node lies outside Lambda_eps");
}

namespace {

void require_replicates(const WTrack& track) {
    if (track.times.size() < 2) throw ConfigError("martingale tests need at least two snapshot times");
    if (track.replicates() < 30) throw ConfigError("martingale tests need at least 30 replicates");
}

}  // namespace

DriftReport martingale_drift_test(const WTrack& track, const std::vector<std::pair<double, double>>& pairs) {
    require_replicates(track);
    DriftReport rep;
    rep.mode = track.mode;
    rep.pass = true;
    for (const auto& [s, t] : pairs) {
        const std::size_t ks = track.time_index(s), kt = track.time_index(t);
        std::vector<double> re, im;
        for (const auto& series : track.samples) {
            const auto diff = series[kt] - series[ks];
            re.push_back(diff.real());
            im.push_back(diff.imag());
        }
        const auto mr = stats::mean_se(re), mi = stats::mean_se(im);
        DriftRow row;
        row.s = s;
        row.t = t;
        row.mean = {mr.mean, mi.mean};
        row.se_re = mr.se;
        row.se_im = mi.se;
        row.z = std::max(stats::z_score(mr.mean, 0.0, mr.se), stats::z_score(mi.mean, 0.0, mi.se));
        row.pass = row.z <= 3.0;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

VarianceReport variance_match_test(const WTrack& track, const std::vector<double>& times, std::int64_t N) {
    require_replicates(track);
    VarianceReport rep;
    rep.mode = track.mode;
    rep.pass = true;
    const ModelParams& p = track.params;
    for (double t : times) {
        const std::size_t k = track.time_index(t);
        std::vector<double> sq;
        for (const auto& series : track.samples) sq.push_back(std::norm(series[k]));
        const auto m = stats::mean_se(sq);
        VarianceRow row;
        row.t = t;
        row.mean_sq = m.mean;
        row.se = m.se;
        row.target = analytic::w_second_moment_oracle(track.mode, t, p);
        row.allowance = p.beta / (2.0 * p.alpha * static_cast<double>(N)) * std::abs(row.target - 1.0);
        row.z = stats::z_score(m.mean, row.target, m.se);
        row.pass = std::abs(m.mean - row.target) <= 3.0 * m.se + row.allowance;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

LimitEstimate estimate_limit(const WTrack& track) {
    const double k = convergence_exponent(track.mode, track.params);
    if (!(k > 0.0)) {
        std::ostringstream os;
        os << "mode lies outside the convergence region: 2 rho - beta = " << k;
        throw PreconditionError(os.str());
    }
    if (track.times.empty()) throw ConfigError("limit estimate needs at least one snapshot time");
    LimitEstimate est;
    est.mode = track.mode;
    const std::size_t last = track.times.size() - 1;
    est.t_final = track.times[last];
    std::size_t half = 0;
    for (std::size_t j = 0; j < track.times.size(); ++j)
        if (std::abs(track.times[j] - 0.5 * est.t_final) < std::abs(track.times[half] - 0.5 * est.t_final)) half = j;
    est.t_half = track.times[half];
    for (const auto& series : track.samples) {
        est.values.push_back(series[last]);
        est.tail_increment.push_back(std::abs(series[last] - series[half]));
    }
    return est;
}

double mean_square_increment(const WTrack& track, double t_from, double t_to) {
    const std::size_t a = track.time_index(t_from), b = track.time_index(t_to);
    std::vector<double> v;
    for (const auto& series : track.samples) v.push_back(std::norm(series[b] - series[a]));
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

UniformReport uniform_convergence_check(const LambdaGrid& grid, const std::vector<WTrack>& tracks) {
    if (grid.nodes.empty()) throw ConfigError("uniform convergence needs a nonempty grid");
    if (tracks.size() != grid.nodes.size()) throw ConfigError("one track per grid node is required");
    grid.require_members(tracks.front().params);
    const auto& times = tracks.front().times;
    if (times.size() < 4) throw ConfigError("uniform convergence needs at least 4 snapshot times");
    for (const auto& tr : tracks)
        if (tr.times != times || tr.replicates() != tracks.front().replicates())
            throw ConfigError("grid tracks must share snapshot times and replicates");

    UniformReport rep;
    rep.eps = grid.eps;
    rep.times = times;
    const std::size_t last = times.size() - 1;
    const std::size_t reps = tracks.front().replicates();
    rep.sup.assign(reps, std::vector<double>(times.size(), 0.0));
    for (std::size_t r = 0; r < reps; ++r)
        for (std::size_t k = 0; k < times.size(); ++k) {
            double s = 0.0;
            for (const auto& tr : tracks) s = std::max(s, std::abs(tr.samples[r][k] - tr.samples[r][last]));
            rep.sup[r][k] = s;
        }
    rep.mean_sup.assign(times.size(), 0.0);
    for (std::size_t k = 0; k < times.size(); ++k) {
        double s = 0.0;
        for (std::size_t r = 0; r < reps; ++r) s += rep.sup[r][k];
        rep.mean_sup[k] = reps ? s / static_cast<double>(reps) : 0.0;
    }

    const double t_mid = times.front() + 0.5 * (times[last] - times.front());
    std::vector<double> xs, ys;
    bool all_zero = true;
    for (std::size_t k = 0; k < last; ++k) {
        if (times[k] < t_mid) continue;
        rep.fit_times.push_back(times[k]);
        if (rep.mean_sup[k] > 0.0) all_zero = false;
        xs.push_back(times[k]);
        ys.push_back(std::log(rep.mean_sup[k]));
    }
    if (all_zero) {
        rep.degenerate = true;
        rep.slope = -std::numeric_limits<double>::infinity();
        rep.threshold = -0.5 * grid.eps;
        rep.pass = true;
        return rep;
    }
    if (xs.size() < 3) throw ConfigError("uniform convergence fit needs three times in the second half of the range");
    const auto fit = stats::ols(xs, ys);
    rep.slope = fit.slope;
    rep.slope_se = fit.slope_se;
    rep.threshold = -0.5 * grid.eps + 2.0 * fit.slope_se;
    rep.pass = std::isfinite(fit.slope) && fit.slope <= rep.threshold;
    return rep;
}

}  // namespace sbm
