#include "sbm/analytic/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include "sbm/analytic/kernels.hpp"
#include "sbm/analytic/quadrature.hpp"
#include "sbm/errors.hpp"

namespace sbm::analytic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

constexpr double kPi = std::numbers::pi;

// P_t 1_[lo,hi) at x in one coordinate.
double box_factor(double lo, double hi, double t, double x) {
    if (t <= 0.0) return (x >= lo && x < hi) ? 1.0 : 0.0;
    const double s = std::sqrt(t);
    return normal_cdf((hi - x) / s) - normal_cdf((lo - x) / s);
}

// int_0^inf e^{-(y-c)^2/2w^2} N(y; x, t) dy.
double half_line_gaussian(double c, double w, double t, double x) {
    const double w2 = w * w;
    const double v = t + w2;
    const double mean = (c * t + x * w2) / v;
    const double sd = w * std::sqrt(t / v);
    return std::sqrt(w2 / v) * std::exp(-(x - c) * (x - c) / (2.0 * v)) * normal_cdf(mean / sd);
}

void require_full_space(const ModelParams& params, const char* what) {
    if (params.is_orthant())
        throw PreconditionError(std::string(what) + " is defined for the full space only");
}

// int (P_s 1_[lo,hi)(y))^2 N(y; x, tau) dy.
double box_square_smoothed(double lo, double hi, double s, double tau, double x) {
    if (tau <= 0.0) {
        const double v = box_factor(lo, hi, s, x);
        return v * v;
    }
    if (s <= 0.0) return box_factor(lo, hi, tau, x);
    const double sd = std::sqrt(tau);
    const double inv_norm = 1.0 / std::sqrt(2.0 * kPi);
    auto integrand = [&](double z) {
        const double v = box_factor(lo, hi, s, x + sd * z);
        return v * v * inv_norm * std::exp(-0.5 * z * z);
    };
    // split at the box edges, where the integrand bends most sharply for small s
    double cuts[4] = {-12.0, (lo - x) / sd, (hi - x) / sd, 12.0};
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double a = std::clamp(cuts[k], -12.0, 12.0);
        const double b = std::clamp(cuts[k + 1], -12.0, 12.0);
        total += quad::require(quad::adaptive_simpson(integrand, a, b, 1e-12, 4), "box second-moment inner integral");
    }
    return total;
}

}  // namespace

double heat_action(const TestFunction& f, double t, std::span<const double> x) {
    const double a = f.amplitude();
    return std::visit(
        overloaded{
            [&](const ConstantOne&) { return a; },
            [&](const IndicatorBox& b) {
                double v = a;
                for (std::size_t j = 0; j < b.lo.size(); ++j) v *= box_factor(b.lo[j], b.hi[j], t, x[j]);
                return v;
            },
            [&](const GaussianBump& g) {
                const double w2 = g.width * g.width;
                double r2 = 0.0;
                for (std::size_t j = 0; j < g.center.size(); ++j)
                    r2 += (x[j] - g.center[j]) * (x[j] - g.center[j]);
                return a * std::pow(w2 / (w2 + t), 0.5 * f.dim()) * std::exp(-r2 / (2.0 * (w2 + t)));
            },
            [&](const CosineMode& c) {
                double phase = 0.0;
                double l2 = 0.0;
                for (std::size_t j = 0; j < c.lambda.size(); ++j) {
                    phase += c.lambda[j] * x[j];
                    l2 += c.lambda[j] * c.lambda[j];
                }
                return a * std::cos(phase) * std::exp(-0.5 * l2 * t);
            },
        },
        f.kind());
}

double killed_heat_action(const TestFunction& f, double t, std::span<const double> x,
                          const ModelParams& params) {
    require_supported_in_domain(f, params);
    if (!params.inside(x)) return 0.0;
    if (t <= 0.0) return f(x);
    const int first = params.first_absorbed();
    const double a = f.amplitude();
    const double sd = std::sqrt(t);
    return std::visit(
        overloaded{
            [&](const ConstantOne&) {
                double v = a;
                for (int j = first; j < params.dim; ++j) v *= std::erf(x[j] / (std::numbers::sqrt2 * sd));
                return v;
            },
            [&](const IndicatorBox& b) {
                double v = a;
                for (int j = 0; j < params.dim; ++j) {
                    const double direct = box_factor(b.lo[j], b.hi[j], t, x[j]);
                    v *= (j < first) ? direct : direct - box_factor(b.lo[j], b.hi[j], t, -x[j]);
                }
                return v;
            },
            [&](const GaussianBump& g) {
                const double w2 = g.width * g.width;
                double v = a;
                for (int j = 0; j < params.dim; ++j) {
                    const double c = g.center[j];
                    if (j < first) {
                        v *= std::sqrt(w2 / (w2 + t)) * std::exp(-(x[j] - c) * (x[j] - c) / (2.0 * (w2 + t)));
                    } else {
                        v *= half_line_gaussian(c, g.width, t, x[j]) - half_line_gaussian(c, g.width, t, -x[j]);
                    }
                }
                return v;
            },
            [](const CosineMode&) -> double {
                throw CatalogError("cosine mode has no killed-semigroup closed form");
            },
        },
        f.kind());
}

double first_moment(const TestFunction& f, double t, const InitialMeasure& init,
                    const ModelParams& params) {
    require_full_space(params, "first_moment");
    if (t < 0.0) throw ArgumentError("first_moment needs t >= 0");
    double sum = 0.0;
    for (const auto& atom : init.atoms) sum += atom.mass * heat_action(f, t, atom.x);
    return std::exp(params.beta * t) * sum;
}

double first_moment_orthant(const TestFunction& f, double t, const InitialMeasure& init,
                            const ModelParams& params) {
    if (t < 0.0) throw ArgumentError("first_moment_orthant needs t >= 0");
    double sum = 0.0;
    for (const auto& atom : init.atoms) sum += atom.mass * killed_heat_action(f, t, atom.x, params);
    return std::exp(params.beta * t) * sum;
}

double second_moment(const TestFunction& f, double t, const InitialMeasure& init,
                     const ModelParams& params, double tol) {
    require_full_space(params, "second_moment");
    if (t < 0.0) throw ArgumentError("second_moment needs t >= 0");
    const double beta = params.beta;
    const double a2 = f.amplitude() * f.amplitude();
    const double d = params.dim;

    // int (P_s f(y))^2 p_tau(x, y) dy for one atom at x
    auto smoothed_square = [&](double s, double tau, std::span<const double> x) -> double {
        return std::visit(
            overloaded{
                [&](const ConstantOne&) { return a2; },
                [&](const GaussianBump& g) {
                    const double w2 = g.width * g.width;
                    const double v = 0.5 * (w2 + s);
                    double r2 = 0.0;
                    for (std::size_t j = 0; j < g.center.size(); ++j)
                        r2 += (x[j] - g.center[j]) * (x[j] - g.center[j]);
                    return a2 * std::pow(w2 / (w2 + s), d) * std::pow(v / (v + tau), 0.5 * d) *
                           std::exp(-r2 / (2.0 * (v + tau)));
                },
                [&](const CosineMode& c) {
                    double phase = 0.0;
                    double l2 = 0.0;
                    for (std::size_t j = 0; j < c.lambda.size(); ++j) {
                        phase += c.lambda[j] * x[j];
                        l2 += c.lambda[j] * c.lambda[j];
                    }
                    return a2 * std::exp(-l2 * s) * 0.5 * (1.0 + std::cos(2.0 * phase) * std::exp(-2.0 * l2 * tau));
                },
                [&](const IndicatorBox& b) {
                    double v = a2;
                    for (std::size_t j = 0; j < b.lo.size(); ++j)
                        v *= box_square_smoothed(b.lo[j], b.hi[j], s, tau, x[j]);
                    return v;
                },
            },
            f.kind());
    };

    auto integrand = [&](double s) {
        double v = 0.0;
        for (const auto& atom : init.atoms) v += atom.mass * smoothed_square(s, t - s, atom.x);
        return std::exp(beta * (t + s)) * v;
    };

    const double mean = first_moment(f, t, init, params);
    double variance_part = 0.0;
    if (t > 0.0 && f.is_box()) {
        // P_s of a box has a sqrt(s) layer at s = 0; s = u^2 smooths it out
        auto smoothed = [&](double u) { return 2.0 * u * integrand(u * u); };
        variance_part = quad::require(quad::adaptive_simpson(smoothed, 0.0, std::sqrt(t), tol),
                                      "second_moment time integral");
    } else if (t > 0.0) {
        variance_part = quad::require(quad::adaptive_simpson(integrand, 0.0, t, tol), "second_moment time integral");
    }
    return mean * mean + 2.0 * params.alpha * variance_part;
}

double w_second_moment_oracle(const FourierMode& mode, double t, const ModelParams& params) {
    const double k = convergence_exponent(mode, params);
    if (k == 0.0) return 1.0 + 2.0 * params.alpha * t;
    return 1.0 - 2.0 * params.alpha * std::expm1(-k * t) / k;
}

ClassABound class_A_bound(const TestFunction& f, double eps, const ModelParams& params) {
    require_full_space(params, "class_A_bound");
    if (!(eps > 0.0)) throw ArgumentError("class_A_bound needs eps > 0");
    constexpr double kAbsTol = 1e-9;
    constexpr double kTailBound = 1e-12;
    constexpr double kOverflowGuard = 1e30;
    constexpr double kMaxRadius = 1e5;

    ClassABound out;
    out.eps_sup = admissible_eps_sup(f);
    const double weight = std::exp(-eps * params.beta);  // e^{-eps rho} = e^{-eps beta} prod e^{eps l^2/2}

    std::visit(
        overloaded{
            [](const ConstantOne&) { throw CatalogError("constant function has an atomic transform"); },
            [](const CosineMode&) { throw CatalogError("cosine mode has an atomic transform"); },
            [&](const GaussianBump& g) {
                const double w2 = g.width * g.width;
                const double peak = std::sqrt(2.0 * kPi) * g.width;
                const double rate = 0.5 * (w2 - eps);
                auto h = [&](double l) { return peak * std::exp(-rate * l * l); };
                if (!(rate > 0.0)) {
                    out.member = false;
                    out.reason = "transform decays no faster than the weight grows (eps >= width^2)";
                    return;
                }
                // Gaussian tail: int_L^inf h <= h(L) / (2 rate L); both sides, per 2 pi.
                double radius = 1.0;
                while (h(radius) / (rate * radius) / (2.0 * kPi) > kTailBound) radius *= 1.1;
                out.truncation_radius = radius;
                const double one_dim =
                    2.0 * quad::require(quad::adaptive_simpson(h, 0.0, radius, kAbsTol), "class A quadrature") /
                    (2.0 * kPi);
                out.value = std::abs(f.amplitude()) * weight * std::pow(one_dim, f.dim());
                out.member = std::isfinite(out.value);
            },
            [&](const IndicatorBox& b) {
                // |f^| factors into |2 sin(l h/2)/l|, which decays only like 1/|l|.
                double product = std::abs(f.amplitude()) * weight;
                for (std::size_t j = 0; j < b.lo.size(); ++j) {
                    const double half = 0.5 * (b.hi[j] - b.lo[j]);
                    if (half == 0.0) {
                        product = 0.0;
                        continue;
                    }
                    auto h = [&](double l) {
                        return std::exp(0.5 * eps * l * l) * std::abs(2.0 * sin_ratio(l, half)) / (2.0 * kPi);
                    };
                    double partial = 0.0;
                    double radius = 0.0;
                    const double shell = 1.0;
                    while (partial <= kOverflowGuard && radius < kMaxRadius) {
                        partial += 2.0 * quad::gauss_legendre<20>(h, radius, radius + shell);
                        radius += shell;
                    }
                    out.truncation_radius = radius;
                    out.value = partial;
                    out.member = false;
                    out.reason = partial > kOverflowGuard
                                     ? "partial integral exceeded the overflow guard (polynomial decay of the transform)"
                                     : "no tail certificate up to the maximal radius";
                    return;
                }
                out.value = product;
                out.member = true;  // degenerate box: f = 0 almost everywhere
            },
        },
        f.kind());
    return out;
}

}  // namespace sbm::analytic
