#include "sbm/analytic/generalized_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include "sbm/analytic/kernels.hpp"
#include "sbm/analytic/quadrature.hpp"
#include "sbm/errors.hpp"

namespace sbm::analytic {

namespace {

using C = std::complex<double>;

// int_0^inf e^{-(x-c)^2/2w^2} sin(lambda x)/lambda dx by composite Gauss-Legendre, with at
// least two panels per half-period of the sine.
double gaussian_sine_factor(double lambda, double c, double w) {
    const double hi = c + 14.0 * w;
    const double lo = std::max(0.0, c - 14.0 * w);
    auto g = [&](double x) { return std::exp(-(x - c) * (x - c) / (2.0 * w * w)) * sin_ratio(lambda, x); };
    const int panels = std::max(16, static_cast<int>(std::ceil(2.0 * std::abs(lambda) * (hi - lo) / std::numbers::pi)));
    const double h = (hi - lo) / panels;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) total += quad::gauss_legendre<20>(g, lo + k * h, lo + (k + 1) * h);
    return total;
}

}  // namespace

C generalized_fourier(const TestFunction& f, const FourierMode& mode, const ModelParams& params) {
    if (!params.is_orthant()) return fourier_transform(f, mode);
    require_supported_in_domain(f, params);
    const int first = params.first_absorbed();
    const double a = f.amplitude();
    if (const auto* b = std::get_if<IndicatorBox>(&f.kind())) {
        C v{a, 0.0};
        for (int j = 0; j < params.dim; ++j) {
            const double l = mode.lambda[j];
            const double mid = 0.5 * (b->lo[j] + b->hi[j]);
            const double half = 0.5 * (b->hi[j] - b->lo[j]);
            if (j < first) v *= std::polar(2.0 * sin_ratio(l, half), l * mid);
            // (cos(l lo) - cos(l hi)) / l^2
            else v *= 2.0 * sin_ratio(l, mid) * sin_ratio(l, half);
        }
        return v;
    }
    if (const auto* g = std::get_if<GaussianBump>(&f.kind())) {
        const double w = g->width;
        C v{a, 0.0};
        for (int j = 0; j < params.dim; ++j) {
            const double l = mode.lambda[j];
            if (j < first)
                v *= std::polar(w * std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5 * w * w * l * l),
                                l * g->center[j]);
            else v *= gaussian_sine_factor(l, g->center[j], w);
        }
        return v;
    }
    throw CatalogError("generalized transform is defined for boxes and gaussians only");
}

double inverse_generalized_fourier(const SpectralFunction& fhat, std::span<const double> x,
                                   const ModelParams& params, double radius, double abs_tol) {
    const int d = params.dim;
    if (d > 3) throw ArgumentError("inverse transform supports d <= 3");
    if (!(radius > 0.0)) throw ArgumentError("inverse transform needs a positive radius");
    const int first = params.first_absorbed();
    FourierMode mode;
    mode.lambda.assign(static_cast<std::size_t>(d), 0.0);

    std::function<double(int, double)> level = [&](int j, double tol) -> double {
        auto slice = [&](double l) {
            mode.lambda[j] = l;
            if (j + 1 < d) return level(j + 1, tol / (2.0 * radius));
            double weight = 1.0;
            for (int k = first; k < d; ++k) weight *= mode.lambda[k] * mode.lambda[k];
            const C integrand = fhat(mode) * std::conj(generalized_mode(mode, x, params)) * weight;
            return integrand.real();
        };
        return quad::require(quad::adaptive_simpson(slice, -radius, radius, tol, 64),
                             "inverse generalized transform");
    };
    const double norm = std::pow(2.0, params.absorbed()) / std::pow(2.0 * std::numbers::pi, d);
    return norm * level(0, abs_tol / norm);
}

}  // namespace sbm::analytic
