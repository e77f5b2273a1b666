#include "sbm/analytic/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "sbm/analytic/kernels.hpp"
#include "sbm/analytic/moments.hpp"
#include "sbm/analytic/quadrature.hpp"

namespace sbm::analytic {

namespace {

IdentityResult make(std::string name, double error, double tol) {
    return IdentityResult{std::move(name), error, tol, error <= tol};
}

double semigroup_error() {
    double worst = 0.0;
    const std::array<double, 4> lambdas{0.0, 0.3, 1.0, 2.5};
    const std::array<double, 3> times{0.1, 1.0, 3.0};
    const std::array<double, 3> xs{-1.7, 0.0, 2.2};
    for (double l : lambdas)
        for (double t : times)
            for (double s : times)
                for (double x : xs) {
                    const FourierMode m{{l}};
                    const Point p{x};
                    // P_s P_t e_lambda = e^{-|lambda|^2 t/2} P_s e_lambda
                    const auto composed = std::exp(-0.5 * m.norm_sq() * t) * heat_mode_action(m, s, p);
                    worst = std::max(worst, std::abs(composed - heat_mode_action(m, t + s, p)));
                }
    return worst;
}

double images_symmetry_error() {
    double worst = 0.0;
    const ModelParams d1{1, 1.0, 0.5, Orthant{1}};
    const ModelParams d2{2, 1.0, 0.5, Orthant{1}};
    const std::array<double, 4> pos{0.05, 0.6, 1.3, 3.1};
    const std::array<double, 3> times{0.01, 0.7, 4.0};
    for (double t : times)
        for (double a : pos)
            for (double b : pos) {
                const Point x{a}, y{b};
                const double pxy = images_kernel(x, y, t, d1);
                worst = std::max(worst, std::abs(pxy - images_kernel(y, x, t, d1)) / std::max(pxy, 1e-300));
                const Point x2{a - 1.0, b}, y2{b + 0.5, a};
                const double q = images_kernel(x2, y2, t, d2);
                worst = std::max(worst, std::abs(q - images_kernel(y2, x2, t, d2)) / std::max(q, 1e-300));
            }
    return worst;
}

double images_boundary_value() {
    double worst = 0.0;
    const ModelParams d1{1, 1.0, 0.5, Orthant{1}};
    const ModelParams d2{2, 1.0, 0.5, Orthant{2}};
    for (double t : {0.1, 1.0, 5.0})
        for (double y : {0.2, 1.0, 2.5}) {
            worst = std::max(worst, std::abs(images_kernel(Point{0.0}, Point{y}, t, d1)));
            worst = std::max(worst, std::abs(images_kernel(Point{y, 0.0}, Point{1.0, y}, t, d2)));
        }
    return worst;
}

double oracle_branch_gap() {
    double worst = 0.0;
    for (double alpha : {0.5, 1.0, 2.0})
        for (double t : {0.5, 2.0, 6.0})
            for (double k : {1e-13, -1e-13, 1e-12}) {
                // Drive 2 rho - beta to k by choosing beta = |lambda|^2 + k.
                const ModelParams p{1, 1.0 + k, alpha, FullSpace{}};
                const double branch = w_second_moment_oracle(FourierMode{{1.0}}, t, p);
                worst = std::max(worst, std::abs(branch - (1.0 + 2.0 * alpha * t)));
            }
    return worst;
}

double mode_series_gap() {
    double worst = 0.0;
    for (double x : {0.5, 1.0, 3.0})
        for (double scale : {0.9, 0.99, 1.01, 1.1}) {
            const double lambda = scale * kSinRatioSeriesCutoff / x;
            const double u = lambda * x;
            const double series = x * (1.0 - u * u / 6.0 + u * u * u * u / 120.0);
            const double direct = std::sin(u) / lambda;
            worst = std::max(worst, std::abs(series - direct) / x);
            worst = std::max(worst, std::abs(sin_ratio(lambda, x) - direct) / x);
        }
    return worst;
}

double chapman_kolmogorov_error() {
    double worst = 0.0;
    const ModelParams p{1, 1.0, 0.5, Orthant{1}};
    for (double s : {0.3, 1.0})
        for (double t : {0.5, 2.0})
            for (double x : {0.4, 1.5})
                for (double y : {0.2, 1.1, 2.7}) {
                    auto g = [&](double z) {
                        return images_kernel(Point{x}, Point{z}, s, p) * images_kernel(Point{z}, Point{y}, t, p);
                    };
                    const double hi = std::max(x, y) + 12.0 * std::sqrt(s + t);
                    const double lhs = quad::require(quad::adaptive_simpson(g, 0.0, hi, 1e-12, 32), "CK");
                    worst = std::max(worst, std::abs(lhs - images_kernel(Point{x}, Point{y}, s + t, p)));
                }
    return worst;
}

}  // namespace

std::vector<IdentityResult> run_identity_suite() {
    return {
        make("heat_mode_semigroup", semigroup_error(), 1e-14),
        make("images_kernel_symmetry", images_symmetry_error(), 1e-12),
        make("images_kernel_boundary", images_boundary_value(), 1e-10),
        make("variance_oracle_branch_continuity", oracle_branch_gap(), 1e-10),
        make("generalized_mode_series_continuity", mode_series_gap(), 1e-12),
        make("images_chapman_kolmogorov", chapman_kolmogorov_error(), 1e-8),
    };
}

}  // namespace sbm::analytic
