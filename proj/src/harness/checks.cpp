#include "sbm/harness/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numbers>

#include "sbm/analytic/moments.hpp"
#include "sbm/analytic/quadrature.hpp"
#include "sbm/errors.hpp"
#include "sbm/util/stats.hpp"

namespace sbm::harness {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string label(const FourierMode& m) {
    std::string s;
    for (std::size_t j = 0; j < m.lambda.size(); ++j) {
        if (j) s += ';';
        s += fmt("%.6g", m.lambda[j]);
    }
    return "[" + s + "]";
}

std::string at(double t) { return "@t=" + fmt("%g", t); }

// Fills report.values from value(r, k, s).
template <class F>
void fill(CheckReport& rep, const RunData& data, F&& value) {
    rep.times = data.times;
    const std::size_t R = data.reps.size(), T = data.times.size(), S = rep.statistics.size();
    rep.values.resize(R * T * S);
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t k = 0; k < T; ++k)
            for (std::size_t s = 0; s < S; ++s) rep.values[(r * T + k) * S + s] = value(r, k, s);
}

std::vector<double> column(const CheckReport& rep, std::size_t k, std::size_t s) {
    std::vector<double> v(rep.values.size() / (rep.times.size() * rep.statistics.size()));
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = rep.value(r, k, s);
    return v;
}

// |value - target| <= tolerance.
Metric gate(std::string name, double value, double target, double se, double tolerance, bool gating = true) {
    Metric m{std::move(name), value, target, se, stats::z_score(value, target, se), tolerance, false, gating};
    m.pass = std::abs(value - target) <= tolerance;
    return m;
}

Metric mean_gate(std::string name, const std::vector<double>& v, double target, bool gating = true) {
    const auto ms = stats::mean_se(v);
    return gate(std::move(name), ms.mean, target, ms.se, 3.0 * ms.se, gating);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> drift_metrics(CheckReport& rep, const WTrack& track,
                                  const std::vector<std::pair<double, double>>& pairs) {
    const auto drift = martingale_drift_test(track, pairs);
    std::vector<double> z;
    for (const auto& row : drift.rows) {
        const double se = std::max(row.se_re, row.se_im);
        Metric m{"drift" + label(track.mode) + " " + fmt("%g", row.s) + "->" + fmt("%g", row.t),
                 std::abs(row.mean), 0.0, se, row.z, 3.0 * se, row.pass, true};
        rep.metrics.push_back(m);
        z.push_back(row.z);
    }
    return z;
}

struct Pairing {
    stats::LinearFit fit;
    std::vector<double> x, y;
};

Pairing pair_at_end(const CheckReport& rep, std::size_t y_stat, std::size_t x_stat) {
    const std::size_t k = rep.times.size() - 1;
    Pairing p;
    p.x = column(rep, k, x_stat);
    p.y = column(rep, k, y_stat);
    p.fit = stats::ols(p.x, p.y);
    return p;
}

void add_slope(CheckReport& rep, const std::string& name, const stats::LinearFit& fit, double target,
               double rel_tol, bool gating) {
    rep.metrics.push_back(gate(name, fit.slope, target, fit.slope_se, rel_tol * std::abs(target), gating));
}

void add_intercept(CheckReport& rep, const stats::LinearFit& fit, bool gating) {
    rep.metrics.push_back(gate("intercept", fit.intercept, 0.0, fit.intercept_se, 3.0 * fit.intercept_se, gating));
}

std::string slope_headline(const stats::LinearFit& fit, double target, double rel_tol) {
    return "slope " + fmt("%.6g", fit.slope) + " vs " + fmt("%.6g", target) + " (tol " +
           fmt("%g", 100.0 * rel_tol) + "%)";
}

}  // namespace

const Metric* CheckReport::metric(const std::string& n) const {
    for (const auto& m : metrics)
        if (m.name == n) return &m;
    return nullptr;
}

void CheckReport::finish() {
    pass = std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return !m.gating || m.pass; });
    if (!primary.empty()) return;
    double worst = -1.0;
    for (const auto& m : metrics) {
        const double z = std::isnan(m.z) ? 0.0 : std::abs(m.z);
        if (m.gating && z > worst) {
            worst = z;
            primary = m.name;
        }
    }
}

CheckReport moment_validation(const ExperimentPlan& plan, const RunData& data) {
    const auto& p = plan.config.params;
    const auto one = TestFunction::constant_one(p.dim);
    CheckReport rep;
    rep.check = Check::Moments;
    rep.statistics = {"mass", "f"};
    fill(rep, data, [&](std::size_t r, std::size_t k, std::size_t s) {
        return s == 0 ? data.reps[r].mass[k] : data.reps[r].f[k];
    });

    for (double t : plan.moment_times) {
        const std::size_t k = data.time_index(t);
        const double g = std::exp(-p.beta * t);
        auto mass = column(rep, k, 0);
        for (double& v : mass) v *= g;
        rep.metrics.push_back(mean_gate("normalized_mass_mean" + at(t), mass,
                                        g * analytic::first_moment(one, t, plan.init, p)));
        rep.metrics.push_back(mean_gate("f_mean" + at(t), column(rep, k, 1),
                                        analytic::first_moment(plan.f, t, plan.init, p)));
    }

    const double t2 = plan.second_moment_time;
    const std::size_t k2 = data.time_index(t2);
    const double bias_scale = p.beta / (2.0 * p.alpha * static_cast<double>(plan.config.N));
    const std::pair<const char*, const TestFunction*> fs[] = {{"mass", &one}, {"f", &plan.f}};
    for (std::size_t s = 0; s < 2; ++s) {
        auto sq = column(rep, k2, s);
        for (double& v : sq) v *= v;
        const auto ms = stats::mean_se(sq);
        const double m1 = analytic::first_moment(*fs[s].second, t2, plan.init, p);
        const double target = analytic::second_moment(*fs[s].second, t2, plan.init, p);
        const double allowance = bias_scale * std::abs(target - m1 * m1);
        rep.metrics.push_back(gate(std::string(fs[s].first) + "_second_moment" + at(t2), ms.mean, target, ms.se,
                                   3.0 * ms.se + allowance));
    }

    Series plot{"moments", {"time", "normalized_mass_mean", "normalized_mass_se", "normalized_mass_target",
                            "f_mean", "f_se", "f_target"}, {}};
    for (std::size_t k = 0; k < data.times.size(); ++k) {
        const double t = data.times[k];
        const double g = std::exp(-p.beta * t);
        auto mass = column(rep, k, 0);
        for (double& v : mass) v *= g;
        const auto a = stats::mean_se(mass);
        const auto b = stats::mean_se(column(rep, k, 1));
        plot.rows.push_back({t, a.mean, a.se, g * analytic::first_moment(one, t, plan.init, p), b.mean, b.se,
                             analytic::first_moment(plan.f, t, plan.init, p)});
    }
    rep.plots.push_back(std::move(plot));
    rep.finish();
    const Metric* worst = rep.metric(rep.primary);
    rep.headline = "largest |z| " + fmt("%.3g", worst ? std::abs(worst->z) : 0.0) + " (" + rep.primary + ")";
    return rep;
}

CheckReport martingale_report(const ExperimentPlan& plan, const RunData& data) {
    const auto probes = plan.probe_modes();
    CheckReport rep;
    rep.check = Check::Martingale;
    std::vector<std::size_t> idx;
    for (const auto& m : probes) {
        rep.statistics.push_back("W_re" + label(m));
        rep.statistics.push_back("W_im" + label(m));
        idx.push_back(data.mode_index(m));
    }
    fill(rep, data, [&](std::size_t r, std::size_t k, std::size_t s) {
        const auto w = data.reps[r].w[idx[s / 2]][k];
        return s % 2 ? w.imag() : w.real();
    });

    double worst = 0.0;
    for (const auto& m : probes)
        for (double z : drift_metrics(rep, data.track(m), plan.drift_pairs)) worst = std::max(worst, z);

    Series plot{"martingale", {"time"}, {}};
    for (const auto& m : probes)
        for (const char* c : {"mean_re", "se_re", "mean_im", "se_im"}) plot.columns.push_back(c + label(m));
    for (std::size_t k = 0; k < data.times.size(); ++k) {
        std::vector<double> row{data.times[k]};
        for (std::size_t s = 0; s < rep.statistics.size(); ++s) {
            const auto ms = stats::mean_se(column(rep, k, s));
            row.push_back(ms.mean);
            row.push_back(ms.se);
        }
        plot.rows.push_back(std::move(row));
    }
    rep.plots.push_back(std::move(plot));
    rep.finish();
    rep.headline = "largest drift z " + fmt("%.3g", worst) + " over " + std::to_string(rep.metrics.size()) + " pairs";
    return rep;
}

CheckReport variance_report(const ExperimentPlan& plan, const RunData& data) {
    const auto& p = plan.config.params;
    const auto probes = plan.probe_modes();
    CheckReport rep;
    rep.check = Check::Variance;
    std::vector<std::size_t> idx;
    for (const auto& m : probes) {
        rep.statistics.push_back("abs2_W" + label(m));
        idx.push_back(data.mode_index(m));
    }
    fill(rep, data, [&](std::size_t r, std::size_t k, std::size_t s) { return std::norm(data.reps[r].w[idx[s]][k]); });

    double worst = 0.0;
    for (const auto& m : probes) {
        const auto v = variance_match_test(data.track(m), plan.variance_times, plan.config.N);
        for (const auto& row : v.rows) {
            rep.metrics.push_back(Metric{"abs2_W" + label(m) + at(row.t), row.mean_sq, row.target, row.se, row.z,
                                         3.0 * row.se + row.allowance, row.pass, true});
            worst = std::max(worst, std::abs(row.z));
        }
    }

    Series plot{"variance", {"time"}, {}};
    for (const auto& m : probes)
        for (const char* c : {"mean_abs2", "se", "target"}) plot.columns.push_back(c + label(m));
    for (std::size_t k = 0; k < data.times.size(); ++k) {
        std::vector<double> row{data.times[k]};
        for (std::size_t s = 0; s < probes.size(); ++s) {
            const auto ms = stats::mean_se(column(rep, k, s));
            row.insert(row.end(), {ms.mean, ms.se, analytic::w_second_moment_oracle(probes[s], data.times[k], p)});
        }
        plot.rows.push_back(std::move(row));
    }
    rep.plots.push_back(std::move(plot));
    rep.finish();
    rep.headline = "largest |z| " + fmt("%.3g", worst) + " over " + std::to_string(rep.metrics.size()) + " rows";
    return rep;
}

CheckReport uniform_report(const ExperimentPlan& plan, const RunData& data) {
    const auto grid = plan.uniform_grid();
    grid.require_members(plan.config.params);
    std::vector<WTrack> tracks;
    for (const auto& m : grid.nodes) tracks.push_back(data.track(m));
    const auto u = uniform_convergence_check(grid, tracks);

    CheckReport rep;
    rep.check = Check::Uniform;
    rep.statistics = {"sup_dW"};
    fill(rep, data, [&](std::size_t r, std::size_t k, std::size_t) { return u.sup[r][k]; });

    Metric m{"sup_decay_slope", u.slope, -plan.eps / 2.0, u.slope_se,
             stats::z_score(u.slope, -plan.eps / 2.0, u.slope_se), 2.0 * u.slope_se, u.pass, true};
    rep.metrics.push_back(m);
    if (u.degenerate) rep.notes.push_back("grid sup identically zero (every replicate extinct)");
    rep.notes.push_back(std::to_string(grid.nodes.size()) + " grid nodes, radius " + fmt("%.6g", grid.radius));

    Series plot{"uniform", {"time", "mean_sup", "in_fit"}, {}};
    for (std::size_t k = 0; k < u.times.size(); ++k) {
        const bool in_fit = std::find(u.fit_times.begin(), u.fit_times.end(), u.times[k]) != u.fit_times.end();
        plot.rows.push_back({u.times[k], u.mean_sup[k], in_fit ? 1.0 : 0.0});
    }
    rep.plots.push_back(std::move(plot));
    rep.primary = "sup_decay_slope";
    rep.finish();
    rep.headline = "decay slope " + fmt("%.4g", u.slope) + " <= " + fmt("%.4g", u.threshold) + " required";
    return rep;
}

LatticeSurface::LatticeSurface(int dim, int points, double radius, std::vector<std::complex<double>> values)
    : dim_(dim), points_(points), radius_(radius), values_(std::move(values)) {
    std::size_t n = 1;
    for (int j = 0; j < dim; ++j) n *= static_cast<std::size_t>(points);
    if (points < 2 || values_.size() != n) throw ArgumentError("lattice surface: value count does not match lattice");
}

std::complex<double> LatticeSurface::operator()(const FourierMode& mode) const {
    std::vector<int> cell(static_cast<std::size_t>(dim_));
    std::vector<double> frac(static_cast<std::size_t>(dim_));
    for (int j = 0; j < dim_; ++j) {
        const double u = (mode.lambda[j] + radius_) / (2.0 * radius_) * (points_ - 1);
        const int c = std::clamp(static_cast<int>(std::floor(u)), 0, points_ - 2);
        cell[j] = c;
        frac[j] = std::clamp(u - c, 0.0, 1.0);
    }
    std::complex<double> out{};
    for (int corner = 0; corner < (1 << dim_); ++corner) {
        double w = 1.0;
        std::size_t flat = 0;
        for (int j = 0; j < dim_; ++j) {
            const int bit = (corner >> (dim_ - 1 - j)) & 1;
            w *= bit ? frac[j] : 1.0 - frac[j];
            flat = flat * static_cast<std::size_t>(points_) + static_cast<std::size_t>(cell[j] + bit);
        }
        if (w != 0.0) out += w * values_[flat];
    }
    return out;
}

std::complex<double> band_limited_integral(const analytic::SpectralFunction& surface,
                                           const analytic::SpectralFunction& fhat, double t,
                                           const ModelParams& params, double eps) {
    const double r2 = params.beta - eps;
    double r = std::sqrt(r2);
    while (r * r > r2) r = std::nextafter(r, 0.0);
    const auto integrand = [&](const FourierMode& m) {
        return surface(m) * std::exp(t * rho(m, params)) * fhat(m);
    };
    return quad::ball_integrate(integrand, params.dim, r) / std::pow(kTwoPi, params.dim);
}

CheckReport spectral_reconstruction(const ExperimentPlan& plan, const RunData& data) {
    const auto& p = plan.config.params;
    const auto lattice = plan.spectral_lattice();
    const double radius = plan.uniform_grid().radius;
    std::vector<std::size_t> idx;
    for (const auto& m : lattice) idx.push_back(data.mode_index(m));
    const std::size_t last = data.times.size() - 1;
    const analytic::SpectralFunction fhat = [&](const FourierMode& m) {
        return analytic::fourier_transform(plan.spectral_f, m);
    };

    CheckReport rep;
    rep.check = Check::Spectral;
    rep.statistics = {"x_f", "I1", "residual_ratio"};
    std::vector<std::vector<std::complex<double>>> i1(data.reps.size());
    for (std::size_t r = 0; r < data.reps.size(); ++r) {
        std::vector<std::complex<double>> nodes;
        for (std::size_t j : idx) nodes.push_back(data.reps[r].w[j][last]);
        const LatticeSurface surface(p.dim, plan.spectral_points, radius, std::move(nodes));
        const analytic::SpectralFunction sf = [&](const FourierMode& m) { return surface(m); };
        for (double t : data.times) i1[r].push_back(band_limited_integral(sf, fhat, t, p, plan.eps));
    }
    fill(rep, data, [&](std::size_t r, std::size_t k, std::size_t s) {
        const double x = data.reps[r].spectral_f[k];
        if (s == 0) return x;
        if (s == 1) return i1[r][k].real();
        return std::abs(x - i1[r][k]) / std::exp((p.beta - plan.delta) * data.times[k]);
    });

    std::vector<std::size_t> ks;
    for (double t : plan.spectral_times) ks.push_back(data.time_index(t));
    std::size_t decreasing = 0, end_to_end = 0;
    for (std::size_t r = 0; r < data.reps.size(); ++r) {
        bool ok = true;
        for (std::size_t a = 1; a < ks.size(); ++a) ok = ok && rep.value(r, ks[a], 2) <= rep.value(r, ks[a - 1], 2);
        decreasing += ok;
        end_to_end += rep.value(r, ks.back(), 2) <= rep.value(r, ks.front(), 2);
    }
    const double n_reps = static_cast<double>(data.reps.size());
    const double frac = static_cast<double>(decreasing) / n_reps;
    rep.metrics.push_back(Metric{"fraction_decreasing", frac, 0.8, kNaN, kNaN, kNaN, frac >= 0.8, true});
    rep.metrics.push_back(Metric{"fraction_first_above_last", static_cast<double>(end_to_end) / n_reps, kNaN, kNaN,
                                 kNaN, kNaN, true, false});
    for (std::size_t k : ks)
        rep.metrics.push_back(Metric{"median_residual_ratio" + at(data.times[k]), median(column(rep, k, 2)), kNaN,
                                     kNaN, kNaN, kNaN, true, false});
    rep.notes.push_back("limit surface from W at t=" + fmt("%g", data.times[last]) + " on " +
                        std::to_string(lattice.size()) + " lattice nodes");

    Series plot{"spectral", {"time", "median_residual_ratio", "mean_residual_ratio", "mean_x_f", "mean_I1"}, {}};
    for (std::size_t k = 0; k < data.times.size(); ++k) {
        const auto ratio = column(rep, k, 2);
        plot.rows.push_back({data.times[k], median(ratio), stats::mean_se(ratio).mean,
                             stats::mean_se(column(rep, k, 0)).mean, stats::mean_se(column(rep, k, 1)).mean});
    }
    rep.plots.push_back(std::move(plot));
    rep.primary = "fraction_decreasing";
    rep.finish();
    rep.headline = "residual ratio non-increasing in " + fmt("%.1f", 100.0 * frac) + "% of replicates (>= 80% required)";
    return rep;
}

CheckReport scaling_statistic(const ExperimentPlan& plan, const RunData& data) {
    const auto& p = plan.config.params;
    const double half_d = 0.5 * p.dim;
    const double target = std::pow(kTwoPi, -half_d) * analytic::integral(plan.f);
    const std::size_t w0 = data.mode_index(FourierMode{std::vector<double>(static_cast<std::size_t>(p.dim), 0.0)});
    const auto scale = [&](double t) { return std::exp(-p.beta * t) * std::pow(t, half_d); };

    CheckReport rep;
    rep.check = Check::Scaling;
    rep.statistics = {"R", "W0"};
    fill(rep, data, [&](std::size_t r, std::size_t k, std::size_t s) {
        return s == 0 ? data.reps[r].f[k] * scale(data.times[k]) : data.reps[r].w[w0][k].real();
    });

    const auto pr = pair_at_end(rep, 0, 1);
    add_slope(rep, "slope", pr.fit, target, 0.10, true);
    add_intercept(rep, pr.fit, true);
    const double T = data.times.back();
    rep.metrics.push_back(mean_gate("mean_R" + at(T), pr.y, target, false));
    rep.metrics.push_back(
        mean_gate("mean_R_finite_horizon" + at(T), pr.y, scale(T) * analytic::first_moment(plan.f, T, plan.init, p), false));

    Series plot{"scaling", {"time", "mean_R", "se_R", "finite_horizon_target", "asymptotic_target"}, {}};
    for (std::size_t k = 0; k < data.times.size(); ++k) {
        const auto ms = stats::mean_se(column(rep, k, 0));
        const double t = data.times[k];
        plot.rows.push_back({t, ms.mean, ms.se, scale(t) * analytic::first_moment(plan.f, t, plan.init, p), target});
    }
    rep.plots.push_back(std::move(plot));
    Series scatter{"scaling_pairs", {"W0", "R"}, {}};
    for (std::size_t r = 0; r < pr.x.size(); ++r) scatter.rows.push_back({pr.x[r], pr.y[r]});
    rep.plots.push_back(std::move(scatter));
    rep.primary = "slope";
    rep.finish();
    rep.headline = slope_headline(pr.fit, target, 0.10) + ", intercept " + fmt("%.3g", pr.fit.intercept);
    return rep;
}

CheckReport slln_statistic(const ExperimentPlan& plan, const RunData& data) {
    const auto& p = plan.config.params;
    const TestFunction box(p.dim, plan.slln_box);
    const std::size_t w0 = data.mode_index(FourierMode{std::vector<double>(static_cast<std::size_t>(p.dim), 0.0)});
    std::vector<double> den;
    for (double t : data.times) den.push_back(analytic::first_moment(box, t, plan.init, p));

    CheckReport rep;
    rep.check = Check::Slln;
    rep.statistics = {"ratio", "W0"};
    fill(rep, data, [&](std::size_t r, std::size_t k, std::size_t s) {
        if (s == 1) return data.reps[r].w[w0][k].real();
        return den[k] > 0.0 ? data.reps[r].slln[k] / den[k] : 0.0;
    });

    const auto pr = pair_at_end(rep, 0, 1);
    add_slope(rep, "slope", pr.fit, 1.0, 0.10, true);
    add_intercept(rep, pr.fit, false);
    rep.metrics.push_back(mean_gate("mean_ratio" + at(data.times.back()), pr.y, 1.0, false));

    Series plot{"slln", {"time", "mean_ratio", "se_ratio", "denominator"}, {}};
    for (std::size_t k = 0; k < data.times.size(); ++k) {
        const auto ms = stats::mean_se(column(rep, k, 0));
        plot.rows.push_back({data.times[k], ms.mean, ms.se, den[k]});
    }
    rep.plots.push_back(std::move(plot));
    rep.primary = "slope";
    rep.finish();
    rep.headline = slope_headline(pr.fit, 1.0, 0.10);
    return rep;
}

CheckReport orthant_statistic(const ExperimentPlan& plan, const RunData& data) {
    const auto& p = plan.config.params;
    analytic::require_supported_in_domain(plan.f, p);
    const int i = p.absorbed();
    const double power = 0.5 * p.dim + i;
    const double stated = std::pow(kTwoPi, -0.5 * p.dim) * analytic::orthant_moment_integral(plan.f, p);
    const double corrected = std::ldexp(stated, i);
    double start_weight = 0.0;
    for (const auto& a : plan.init.atoms) {
        double w = a.mass;
        for (int j = p.first_absorbed(); j < p.dim; ++j) w *= a.x[j];
        start_weight += w;
    }
    const auto scale = [&](double t) { return std::exp(-p.beta * t) * std::pow(t, power); };
    const auto finite = [&](double t) {
        return scale(t) * analytic::first_moment_orthant(plan.f, t, plan.init, p) / start_weight;
    };
    const FourierMode zero{std::vector<double>(static_cast<std::size_t>(p.dim), 0.0)};
    const std::size_t w0 = data.mode_index(zero);

    CheckReport rep;
    rep.check = Check::Orthant;
    rep.statistics = {"R", "W0", "W0_mass"};
    fill(rep, data, [&](std::size_t r, std::size_t k, std::size_t s) {
        const double t = data.times[k];
        if (s == 0) return data.reps[r].f[k] * scale(t);
        if (s == 1) return data.reps[r].w[w0][k].real();
        return std::exp(-p.beta * t) * data.reps[r].mass[k];
    });

    drift_metrics(rep, data.track(zero), plan.drift_pairs);
    const auto pr = pair_at_end(rep, 0, 1);
    const double T = data.times.back();
    add_slope(rep, "slope", pr.fit, stated, 0.15, true);
    add_slope(rep, "slope_vs_image_constant", pr.fit, corrected, 0.15, false);
    add_slope(rep, "slope_vs_finite_horizon" + at(T), pr.fit, finite(T), 0.15, false);
    add_intercept(rep, pr.fit, false);
    rep.notes.push_back("image-method asymptotic constant " + fmt("%.6g", corrected) + ", value at t=" +
                        fmt("%g", T) + " " + fmt("%.6g", finite(T)));

    Series plot{"orthant", {"time", "mean_R", "se_R", "finite_horizon_curve", "stated_target",
                            "image_constant", "mean_W0"}, {}};
    for (std::size_t k = 0; k < data.times.size(); ++k) {
        const auto ms = stats::mean_se(column(rep, k, 0));
        const double t = data.times[k];
        plot.rows.push_back({t, ms.mean, ms.se, t > 0.0 ? finite(t) : 0.0, stated, corrected,
                             stats::mean_se(column(rep, k, 1)).mean});
    }
    rep.plots.push_back(std::move(plot));
    Series scatter{"orthant_pairs", {"W0", "R"}, {}};
    for (std::size_t r = 0; r < pr.x.size(); ++r) scatter.rows.push_back({pr.x[r], pr.y[r]});
    rep.plots.push_back(std::move(scatter));
    rep.primary = "slope";
    rep.finish();
    rep.headline = slope_headline(pr.fit, stated, 0.15);
    return rep;
}

CheckReport run_check(Check c, const ExperimentPlan& plan, const RunData& data) {
    switch (c) {
        case Check::Moments: return moment_validation(plan, data);
        case Check::Martingale: return martingale_report(plan, data);
        case Check::Variance: return variance_report(plan, data);
        case Check::Uniform: return uniform_report(plan, data);
        case Check::Spectral: return spectral_reconstruction(plan, data);
        case Check::Scaling: return scaling_statistic(plan, data);
        case Check::Slln: return slln_statistic(plan, data);
        case Check::Orthant: return orthant_statistic(plan, data);
    }
    throw ArgumentError("unknown check");
}

std::size_t statistic_count(Check c, const ExperimentPlan& plan) {
    switch (c) {
        case Check::Moments: return 2;
        case Check::Martingale: return 2 * plan.probe_modes().size();
        case Check::Variance: return plan.probe_modes().size();
        case Check::Uniform: return 1;
        case Check::Spectral: return 3;
        case Check::Scaling: return 2;
        case Check::Slln: return 2;
        case Check::Orthant: return 3;
    }
    return 0;
}

std::size_t expected_rows(const ExperimentPlan& plan) {
    std::size_t n = 0;
    for (Check c : plan.checks)
        n += static_cast<std::size_t>(plan.replicates) * plan.times().size() * statistic_count(c, plan);
    return n;
}

bool RunSummary::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.pass; });
}

RunSummary run_plan(const ExperimentPlan& plan) {
    plan.validate();
    const auto start = std::chrono::steady_clock::now();
    const auto data = run_replicates(plan);

    RunSummary s;
    s.seed = plan.config.seed;
    s.N = plan.config.N;
    s.dt = plan.config.dt;
    s.replicates = plan.replicates;
    s.threads = data.threads_used;
    s.engine = plan.config.engine == Engine::Genealogy ? "genealogy" : "event";
    s.model = plan.config.params.describe();
    for (const auto& a : plan.init.atoms) {
        if (!s.initial.empty()) s.initial += " + ";
        s.initial += fmt("%g", a.mass) + " delta(";
        for (std::size_t j = 0; j < a.x.size(); ++j) s.initial += (j ? "," : "") + fmt("%g", a.x[j]);
        s.initial += ")";
    }
    for (Check c : plan.checks) s.checks.push_back(run_check(c, plan, data));
    s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

}  // namespace sbm::harness
