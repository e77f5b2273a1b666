#include "sbm/util/stats.hpp"

#include <cmath>
#include <limits>

#include "sbm/errors.hpp"
#include "sbm/util/compensated_sum.hpp"

namespace sbm::stats {

MeanSE mean_se(std::span<const double> v) {
    if (v.size() < 2) throw ArgumentError("standard error needs at least two samples");
    const auto n = static_cast<double>(v.size());
    CompensatedSum s;
    for (double x : v) s.add(x);
    const double mean = s.value() / n;
    CompensatedSum ss;
    for (double x : v) ss.add((x - mean) * (x - mean));
    const double sd = std::sqrt(ss.value() / (n - 1.0));
    return {mean, sd / std::sqrt(n), sd, v.size()};
}

LinearFit ols(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ArgumentError("regression needs paired samples");
    if (x.size() < 3) throw ArgumentError("regression needs at least three points");
    const auto n = static_cast<double>(x.size());
    CompensatedSum sx, sy;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx.add(x[k]);
        sy.add(y[k]);
    }
    const double mx = sx.value() / n, my = sy.value() / n;
    CompensatedSum sxx, sxy;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx.add((x[k] - mx) * (x[k] - mx));
        sxy.add((x[k] - mx) * (y[k] - my));
    }
    if (!(sxx.value() > 0.0)) throw ArgumentError("regression needs a non-constant regressor");
    LinearFit fit;
    fit.n = x.size();
    fit.slope = sxy.value() / sxx.value();
    fit.intercept = my - fit.slope * mx;
    CompensatedSum rss;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double r = y[k] - fit.intercept - fit.slope * x[k];
        rss.add(r * r);
    }
    const double s2 = rss.value() / (n - 2.0);
    fit.residual_sd = std::sqrt(s2);
    fit.slope_se = std::sqrt(s2 / sxx.value());
    fit.intercept_se = std::sqrt(s2 * (1.0 / n + mx * mx / sxx.value()));
    return fit;
}

double z_score(double value, double target, double se) {
    const double dev = std::abs(value - target);
    if (dev == 0.0) return 0.0;
    if (!(se > 0.0)) return std::numeric_limits<double>::infinity();
    return dev / se;
}

}  // namespace sbm::stats
