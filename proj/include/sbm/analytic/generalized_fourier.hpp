#pragma once

#include <complex>
#include <functional>
#include <span>

#include "sbm/analytic/model.hpp"
#include "sbm/analytic/test_function.hpp"

namespace sbm::analytic {

using SpectralFunction = std::function<std::complex<double>(const FourierMode&)>;

// f^(lambda) = int_D f(x) phi_lambda(x) dx with phi_lambda the generalized mode. Box
// coordinates are closed form; absorbed Gaussian coordinates use adaptive quadrature.
// In full space this is the ordinary transform.
std::complex<double> generalized_fourier(const TestFunction& f, const FourierMode& mode,
                                         const ModelParams& params);

// 2^i (2 pi)^{-d} int fhat(lambda) conj(phi_lambda(x)) prod_{absorbed} lambda_j^2 dlambda over the
// cube |lambda_j| <= radius, by nested adaptive Simpson (d <= 3).
double inverse_generalized_fourier(const SpectralFunction& fhat, std::span<const double> x,
                                   const ModelParams& params, double radius, double abs_tol = 1e-10);

}  // namespace sbm::analytic
