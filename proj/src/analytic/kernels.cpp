#include "sbm/analytic/kernels.hpp"

#include <cmath>
#include <numbers>

#include "sbm/errors.hpp"

namespace sbm::analytic {

double sin_ratio(double lambda, double x) {
    const double u = lambda * x;
    if (std::abs(u) < kSinRatioSeriesCutoff) {
        const double u2 = u * u;
        return x * (1.0 - u2 / 6.0 + u2 * u2 / 120.0);
    }
    return std::sin(u) / lambda;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

std::complex<double> heat_mode_action(const FourierMode& mode, double t, std::span<const double> x) {
    double phase = 0.0;
    for (std::size_t j = 0; j < mode.lambda.size(); ++j) phase += mode.lambda[j] * x[j];
    return std::polar(std::exp(-0.5 * mode.norm_sq() * t), phase);
}

double heat_kernel(std::span<const double> x, std::span<const double> y, double t) {
    if (!(t > 0.0)) throw ArgumentError("heat kernel needs t > 0");
    double r2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) r2 += (y[j] - x[j]) * (y[j] - x[j]);
    const double d = static_cast<double>(x.size());
    return std::pow(2.0 * std::numbers::pi * t, -0.5 * d) * std::exp(-r2 / (2.0 * t));
}

double images_kernel(std::span<const double> x, std::span<const double> y, double t,
                     const ModelParams& params) {
    if (!(t > 0.0)) throw ArgumentError("images kernel needs t > 0");
    const int d = params.dim;
    const int first = params.first_absorbed();
    double value = std::pow(2.0 * std::numbers::pi * t, -0.5 * d);
    for (int j = 0; j < first; ++j) {
        const double dy = y[j] - x[j];
        value *= std::exp(-dy * dy / (2.0 * t));
    }
    for (int j = first; j < d; ++j) {
        // e^{-(y-x)^2/2t} - e^{-(y+x)^2/2t} = e^{-(y-x)^2/2t} (1 - e^{-2xy/t})
        const double dy = y[j] - x[j];
        value *= -std::exp(-dy * dy / (2.0 * t)) * std::expm1(-2.0 * x[j] * y[j] / t);
    }
    return value;
}

std::complex<double> generalized_mode(const FourierMode& mode, std::span<const double> x,
                                      const ModelParams& params) {
    const int d = params.dim;
    const int first = params.first_absorbed();
    double phase = 0.0;
    for (int j = 0; j < first; ++j) phase += mode.lambda[j] * x[j];
    double amplitude = 1.0;
    for (int j = first; j < d; ++j) amplitude *= sin_ratio(mode.lambda[j], x[j]);
    return std::polar(1.0, phase) * amplitude;
}

}  // namespace sbm::analytic
