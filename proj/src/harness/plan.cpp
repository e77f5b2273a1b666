#include "sbm/harness/plan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "sbm/analytic/moments.hpp"
#include "sbm/errors.hpp"

namespace sbm::harness {

namespace {

constexpr std::array<std::pair<Check, std::string_view>, 8> kNames{{
    {Check::Moments, "moments"},
    {Check::Martingale, "martingale"},
    {Check::Variance, "variance"},
    {Check::Uniform, "uniform"},
    {Check::Spectral, "spectral"},
    {Check::Scaling, "scaling"},
    {Check::Slln, "slln"},
    {Check::Orthant, "orthant"},
}};

bool full_space_only(Check c) { return c != Check::Orthant; }

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void require_snapshot(const std::vector<double>& times, double t, const char* key) {
    if (std::find(times.begin(), times.end(), t) == times.end())
        throw ConfigError(std::string(key) + ": " + fmt(t) + " is not a snapshot time");
}

void require_dim(const TestFunction& f, int dim, const char* key) {
    if (f.dim() != dim) throw ConfigError(std::string(key) + ": test function dimension does not match d");
}

}  // namespace

std::string_view check_name(Check c) {
    for (const auto& [k, n] : kNames)
        if (k == c) return n;
    return "unknown";
}

std::optional<Check> parse_check(std::string_view name) {
    for (const auto& [k, n] : kNames)
        if (n == name) return k;
    return std::nullopt;
}

const std::vector<Check>& all_checks() {
    static const std::vector<Check> all = [] {
        std::vector<Check> v;
        for (const auto& [k, n] : kNames) v.push_back(k);
        return v;
    }();
    return all;
}

ExperimentPlan ExperimentPlan::defaults(const ModelParams& params) {
    ExperimentPlan plan;
    plan.config.params = params;
    plan.set_horizon(6.0);
    plan.eps = params.beta / 4.0;
    plan.delta = params.beta / 16.0;

    const auto d = static_cast<std::size_t>(params.dim);
    if (params.is_orthant()) {
        Point x0(d, 0.0);
        std::vector<double> lo(d, 0.0), hi(d, 1.0);
        for (int j = params.first_absorbed(); j < params.dim; ++j) {
            x0[j] = 1.0;
            lo[j] = 1.0;
            hi[j] = 2.0;
        }
        plan.init = InitialMeasure::point(x0);
        plan.f = TestFunction::box(lo, hi);
        plan.checks = {Check::Orthant};
    } else {
        plan.init = InitialMeasure::point(Point(d, 0.0));
        plan.f = TestFunction::box(std::vector<double>(d, 0.0), std::vector<double>(d, 1.0));
        plan.checks = {Check::Moments, Check::Martingale, Check::Variance, Check::Uniform,
                       Check::Spectral, Check::Scaling, Check::Slln};
    }
    plan.spectral_f = TestFunction::gaussian(std::vector<double>(d, 0.0), 1.0);
    plan.slln_box = IndicatorBox{std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)};
    return plan;
}

void ExperimentPlan::set_horizon(double t_max) {
    const auto at = [t_max](int k) { return t_max * k / 12.0; };
    config.t_max = t_max;
    config.snapshot_times.clear();
    for (int k = 0; k <= 12; ++k) config.snapshot_times.push_back(at(k));
    moment_times = {at(2), at(4), at(8)};
    second_moment_time = at(2);
    drift_pairs = {{0.0, at(2)}, {at(2), at(4)}, {at(4), at(8)}, {at(8), at(12)}};
    variance_times = {at(2), at(4), at(8), at(12)};
    spectral_times = {at(4), at(8), at(12)};
}

std::vector<double> ExperimentPlan::times() const {
    std::vector<double> t = config.snapshot_times;
    if (t.empty() || t.front() != 0.0) t.insert(t.begin(), 0.0);
    return t;
}

bool ExperimentPlan::enabled(Check c) const { return std::find(checks.begin(), checks.end(), c) != checks.end(); }

void ExperimentPlan::validate() const {
    const auto& p = config.params;
    config.validate();
    init.validate(p);
    if (replicates < 30) throw ConfigError("replicates: need at least 30, got " + std::to_string(replicates));
    if (grid_points < 2) throw ConfigError("grid_points: need at least 2");
    if (spectral_points < 2) throw ConfigError("spectral_points: need at least 2");
    if (!(eps > 0.0 && eps < p.beta / 2.0)) throw ConfigError("eps: need 0 < eps < beta/2");
    if (!(delta > 0.0 && delta < std::min(eps / 2.0, p.beta / 2.0 - eps)))
        throw ConfigError("delta: need 0 < delta < min(eps/2, beta/2 - eps)");
    require_dim(f, p.dim, "f");
    require_dim(spectral_f, p.dim, "spectral_f");

    const auto t = times();
    for (std::size_t k = 1; k < t.size(); ++k)
        if (!(t[k] > t[k - 1])) throw ConfigError("snapshot_times: must be strictly increasing");
    if (t.back() > config.t_max) throw ConfigError("snapshot_times: exceeds t_max");

    for (Check c : checks) {
        if (full_space_only(c) && p.is_orthant())
            throw ConfigError("checks: " + std::string(check_name(c)) + " needs domain = full");
        if (c == Check::Orthant && !p.is_orthant()) throw ConfigError("checks: orthant needs domain = orthant");
    }

    if (enabled(Check::Moments)) {
        for (double m : moment_times) require_snapshot(t, m, "moment_times");
        require_snapshot(t, second_moment_time, "second_moment_time");
    }
    if (enabled(Check::Martingale) || enabled(Check::Orthant)) {
        if (drift_pairs.empty()) throw ConfigError("drift_pairs: empty");
        for (const auto& [s, u] : drift_pairs) {
            require_snapshot(t, s, "drift_pairs");
            require_snapshot(t, u, "drift_pairs");
            if (!(s < u)) throw ConfigError("drift_pairs: need s < t in every pair");
        }
    }
    if (enabled(Check::Variance)) {
        for (double v : variance_times) require_snapshot(t, v, "variance_times");
        if (init.atoms.size() != 1 || init.atoms[0].mass != 1.0)
            throw ConfigError("variance: the second-moment oracle needs a single unit point mass");
    }
    if (enabled(Check::Uniform) && t.size() < 4) throw ConfigError("uniform: needs at least 4 snapshot times");
    if (enabled(Check::Spectral)) {
        if (spectral_times.size() < 2) throw ConfigError("spectral_times: need at least two times");
        for (std::size_t k = 0; k < spectral_times.size(); ++k) {
            require_snapshot(t, spectral_times[k], "spectral_times");
            if (k > 0 && !(spectral_times[k] > spectral_times[k - 1]))
                throw ConfigError("spectral_times: must be strictly increasing");
        }
        if (p.dim > 3) throw ConfigError("spectral: supported for d <= 3");
        const auto bound = analytic::class_A_bound(spectral_f, eps, p);
        if (!bound.member)
            throw PreconditionError("spectral: class_A_bound rejects " + spectral_f.describe() + ": " + bound.reason);
    }
    if (enabled(Check::Scaling)) {
        if (!f.is_box() && !f.is_gaussian())
            throw PreconditionError("scaling: f = " + f.name() + " is not compactly supported or integrable");
    }
    if (enabled(Check::Slln)) {
        if (slln_box.lo.size() != static_cast<std::size_t>(p.dim) || slln_box.hi.size() != slln_box.lo.size())
            throw ConfigError("slln_box: dimension does not match d");
        for (std::size_t j = 0; j < slln_box.lo.size(); ++j)
            if (!(slln_box.hi[j] > slln_box.lo[j])) throw ArgumentError("slln_box: zero volume");
    }
    if (enabled(Check::Orthant)) {
        if (!f.is_box() && !f.is_gaussian())
            throw PreconditionError("orthant: f = " + f.name() + " is not integrable against the weight");
        analytic::require_supported_in_domain(f, p);
    }
}

LambdaGrid ExperimentPlan::uniform_grid() const {
    return LambdaGrid::lattice(config.params, eps, grid_points);
}

std::vector<FourierMode> ExperimentPlan::probe_modes() const {
    const auto d = static_cast<std::size_t>(config.params.dim);
    const auto grid = uniform_grid();
    FourierMode zero{std::vector<double>(d, 0.0)};

    FourierMode mid = zero;
    double best = INFINITY;
    for (const auto& n : grid.nodes) {
        if (n.lambda[0] <= 0.0 || std::any_of(n.lambda.begin() + 1, n.lambda.end(), [](double v) { return v != 0.0; }))
            continue;
        const double gap = std::abs(n.lambda[0] - 0.5 * grid.radius);
        if (gap < best) {
            best = gap;
            mid = n;
        }
    }
    FourierMode shell = zero;
    shell.lambda[0] = std::sqrt(config.params.beta);
    return {zero, mid, shell};
}

std::vector<FourierMode> ExperimentPlan::spectral_lattice() const {
    const auto grid = uniform_grid();
    const double r = grid.radius;
    const int n = spectral_points;
    std::vector<double> axis(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) axis[k] = -r + 2.0 * r * k / (n - 1);
    axis.back() = r;

    const int d = config.params.dim;
    std::vector<FourierMode> out;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (;;) {
        FourierMode m;
        for (int j = 0; j < d; ++j) m.lambda.push_back(axis[idx[j]]);
        out.push_back(std::move(m));
        int j = d - 1;
        while (j >= 0 && ++idx[j] == n) idx[j--] = 0;
        if (j < 0) break;
    }
    return out;
}

std::vector<FourierMode> ExperimentPlan::tracked_modes() const {
    std::vector<FourierMode> modes;
    auto add = [&](const FourierMode& m) {
        if (std::none_of(modes.begin(), modes.end(), [&](const FourierMode& o) { return o.lambda == m.lambda; }))
            modes.push_back(m);
    };
    add(FourierMode{std::vector<double>(static_cast<std::size_t>(config.params.dim), 0.0)});
    if (enabled(Check::Martingale) || enabled(Check::Variance))
        for (const auto& m : probe_modes()) add(m);
    if (enabled(Check::Uniform))
        for (const auto& m : uniform_grid().nodes) add(m);
    if (enabled(Check::Spectral))
        for (const auto& m : spectral_lattice()) add(m);
    return modes;
}

}  // namespace sbm::harness
