#pragma once

#include <complex>
#include <span>

#include "sbm/analytic/model.hpp"

namespace sbm::analytic {

// Below this |lambda x| the ratio sin(lambda x)/lambda is evaluated by its Taylor series.
inline constexpr double kSinRatioSeriesCutoff = 1e-4;

// sin(lambda x) / lambda, continuously extended by x at lambda = 0.
double sin_ratio(double lambda, double x);

// Standard normal CDF.
double normal_cdf(double z);

// P_t applied to the plane wave e^{i lambda.x}: e^{i lambda.x} e^{-|lambda|^2 t / 2}.
std::complex<double> heat_mode_action(const FourierMode& mode, double t, std::span<const double> x);

// Free Brownian transition density (2 pi t)^{-d/2} exp(-|y - x|^2 / 2t).
double heat_kernel(std::span<const double> x, std::span<const double> y, double t);

// Transition density of Brownian motion killed on leaving the domain. Free Gaussian
// factors on the first d - i coordinates, image differences on the absorbed ones.
// Throws ArgumentError for t <= 0.
double images_kernel(std::span<const double> x, std::span<const double> y, double t,
                     const ModelParams& params);

// Eigenmode of the killed semigroup:
//   prod_{j < d-i} e^{i lambda_j x_j} * prod_{j >= d-i} sin(lambda_j x_j) / lambda_j.
// Reduces to the plane wave e^{i lambda.x} in full space.
std::complex<double> generalized_mode(const FourierMode& mode, std::span<const double> x,
                                      const ModelParams& params);

}  // namespace sbm::analytic
