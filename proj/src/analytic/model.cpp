#include "sbm/analytic/model.hpp"

#include <cmath>
#include <sstream>

#include "sbm/errors.hpp"

namespace sbm {

void ModelParams::validate() const {
    if (dim < 1) throw ArgumentError("dimension d must be a positive integer");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ArgumentError("beta must be a finite real > 0");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ArgumentError("alpha must be a finite real > 0");
    if (is_orthant()) {
        const int i = absorbed();
        if (i < 1 || i > dim) throw ArgumentError("orthant needs 1 <= absorbed coordinates <= d");
    }
}

bool ModelParams::inside(std::span<const double> x) const {
    for (int j = first_absorbed(); j < dim; ++j) {
        if (!(x[j] > 0.0)) return false;
    }
    return true;
}

std::string ModelParams::describe() const {
    std::ostringstream os;
    os << "d=" << dim << " beta=" << beta << " alpha=" << alpha;
    if (is_orthant()) os << " orthant(i=" << absorbed() << ")";
    else os << " full-space";
    return os.str();
}

double FourierMode::norm_sq() const {
    double s = 0.0;
    for (double l : lambda) s += l * l;
    return s;
}

FourierMode FourierMode::negated() const {
    FourierMode m{lambda};
    for (double& l : m.lambda) l = -l;
    return m;
}

double rho(const FourierMode& mode, const ModelParams& params) {
    return params.beta - 0.5 * mode.norm_sq();
}

double convergence_exponent(const FourierMode& mode, const ModelParams& params) {
    return params.beta - mode.norm_sq();
}

bool in_lambda_eps(const FourierMode& mode, double eps, const ModelParams& params) {
    return mode.norm_sq() <= params.beta - eps;
}

InitialMeasure InitialMeasure::point(Point x, double mass) {
    return InitialMeasure{{Atom{std::move(x), mass}}};
}

double InitialMeasure::total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.mass;
    return m;
}

void InitialMeasure::validate(const ModelParams& params) const {
    if (atoms.empty()) throw ArgumentError("initial measure has no atoms");
    for (const auto& a : atoms) {
        if (static_cast<int>(a.x.size()) != params.dim)
            throw ArgumentError("initial atom dimension does not match d");
        if (!(a.mass >= 0.0) || !std::isfinite(a.mass))
            throw ArgumentError("initial atom mass must be finite and nonnegative");
        if (!params.inside(a.x))
            throw DomainError("initial atom lies outside the orthant (absorbed coordinate <= 0)");
    }
    if (!(total_mass() > 0.0)) throw ArgumentError("initial measure has zero total mass");
}

}  // namespace sbm
