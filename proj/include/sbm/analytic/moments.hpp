#pragma once

#include <optional>
#include <span>
#include <string>

#include "sbm/analytic/model.hpp"
#include "sbm/analytic/test_function.hpp"

namespace sbm::analytic {

// Absolute tolerance of the outer time quadrature in second_moment.
inline constexpr double kMomentQuadratureTolerance = 1e-9;

// Heat semigroup P_t f(x) in closed form (t >= 0).
double heat_action(const TestFunction& f, double t, std::span<const double> x);

// Killed semigroup on the orthant, int_D f(y) p^D_t(x, y) dy, in closed form. Requires f
// supported in D; CosineMode raises CatalogError.
double killed_heat_action(const TestFunction& f, double t, std::span<const double> x,
                          const ModelParams& params);

// E_mu <X_t, f> = e^{beta t} mu(P_t f). Full space only.
double first_moment(const TestFunction& f, double t, const InitialMeasure& init,
                    const ModelParams& params);

// Orthant analogue e^{beta t} mu(P^D_t f) through the images kernel.
double first_moment_orthant(const TestFunction& f, double t, const InitialMeasure& init,
                            const ModelParams& params);

// E_mu <X_t, f>^2 = (mu P^beta_t f)^2 + 2 alpha int_0^t int (P^beta_s f(y))^2 mu P^beta_{t-s}(dy) ds.
// Inner Gaussian algebra is closed form except for boxes (certified 1-d quadrature); the
// time integral is adaptive Simpson. Raises NumericError if the tolerance is not reached.
double second_moment(const TestFunction& f, double t, const InitialMeasure& init,
                     const ModelParams& params, double tol = kMomentQuadratureTolerance);

// E_{delta_x}|W_t(lambda)|^2 for a unit point mass:
//   1 + 2 alpha (1 - e^{-kt}) / k with k = 2 rho - beta, and 1 + 2 alpha t when k = 0.
double w_second_moment_oracle(const FourierMode& mode, double t, const ModelParams& params);

struct ClassABound {
    bool member = false;
    double value = 0.0;                 // int e^{-eps rho}|f^| dlambda / (2 pi)^d when member
    std::optional<double> eps_sup;      // admissible eps lie in (0, eps_sup)
    double truncation_radius = 0.0;     // per-coordinate radius used by the quadrature
    std::string reason;                 // why membership failed, empty otherwise
};

// Certifies membership of f in the class of functions with eps-weighted integrable
// transform. Catalog transforms factor over coordinates, so the d-dimensional integral is
// a product of 1-d integrals. Raises CatalogError for atomic transforms.
ClassABound class_A_bound(const TestFunction& f, double eps, const ModelParams& params);

}  // namespace sbm::analytic
