#pragma once

#include <cstddef>
#include <span>

namespace sbm::stats {

struct MeanSE {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean
    double sd = 0.0;
    std::size_t n = 0;
};

// Compensated, order-fixed mean and standard error. Requires n >= 2.
MeanSE mean_se(std::span<const double> v);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double intercept_se = 0.0;
    double residual_sd = 0.0;
    std::size_t n = 0;
};

// Ordinary least squares y = intercept + slope x with classical standard errors. Requires
// n >= 3 and non-constant x.
LinearFit ols(std::span<const double> x, std::span<const double> y);

// |value - target| in units of se; 0 when both the deviation and se vanish.
double z_score(double value, double target, double se);

}  // namespace sbm::stats
