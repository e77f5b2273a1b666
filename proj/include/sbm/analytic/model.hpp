#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sbm {

using Point = std::vector<double>;

struct FullSpace {};

// The last `absorbed` coordinates are restricted to (0, inf) with absorption at 0.
struct Orthant {
    int absorbed = 1;
};

using Domain = std::variant<FullSpace, Orthant>;

// Parameters of the super-Brownian motion with log-Laplace equation
// u_t = 1/2 Laplacian(u) + beta u - alpha u^2.
struct ModelParams {
    int dim = 1;
    double beta = 1.0;   // mass creation rate, 1/time
    double alpha = 0.5;  // branching intensity, 1/(mass time)
    Domain domain = FullSpace{};

    // Throws ArgumentError if any invariant is violated.
    void validate() const;

    bool is_orthant() const { return std::holds_alternative<Orthant>(domain); }
    int absorbed() const { return is_orthant() ? std::get<Orthant>(domain).absorbed : 0; }
    // Index of the first absorbed coordinate (== dim for full space).
    int first_absorbed() const { return dim - absorbed(); }

    // True iff every absorbed coordinate of x is strictly positive.
    bool inside(std::span<const double> x) const;

    std::string describe() const;
};

struct FourierMode {
    std::vector<double> lambda;

    double norm_sq() const;
    FourierMode negated() const;
};

// rho(lambda) = beta - |lambda|^2 / 2.
double rho(const FourierMode& mode, const ModelParams& params);

// 2 rho(lambda) - beta; the exponent governing the mean-square convergence of W_t(lambda).
double convergence_exponent(const FourierMode& mode, const ModelParams& params);

// Membership in Lambda_eps = {lambda : |lambda|^2 <= beta - eps}.
bool in_lambda_eps(const FourierMode& mode, double eps, const ModelParams& params);

struct Atom {
    Point x;
    double mass = 1.0;
};

// Finite atomic initial measure sum_a mass_a delta_{x_a}.
struct InitialMeasure {
    std::vector<Atom> atoms;

    static InitialMeasure point(Point x, double mass = 1.0);

    double total_mass() const;
    // Throws ArgumentError when empty or massless, DomainError when an atom leaves the domain.
    void validate(const ModelParams& params) const;
};

}  // namespace sbm
