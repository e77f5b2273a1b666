#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>

#include <boost/math/quadrature/gauss.hpp>

#include "sbm/analytic/model.hpp"
#include "sbm/errors.hpp"

namespace sbm::quad {

template <class T>
struct Result {
    T value{};
    double error = 0.0;  // accumulated Richardson error estimate
    bool converged = true;
};

namespace detail {

template <class T>
double magnitude(const T& v) {
    return std::abs(v);
}

template <class F, class T>
T simpson_step(F& f, double a, double b, T fa, T fm, T fb, T whole, double tol, int depth,
               Result<T>& acc) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const T flm = f(lm);
    const T frm = f(rm);
    const T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const T delta = left + right - whole;
    const double err = magnitude(delta) / 15.0;
    // below the rounding floor of the panel sum further bisection cannot help
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * magnitude(left + right);
    if (err <= tol || err <= floor || depth <= 0 || !(m > a && b > m)) {
        if (err > tol && err > floor) acc.converged = false;
        acc.error += err;
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

// Adaptive Simpson quadrature with an absolute tolerance. The interval is first cut
// into `panels` equal pieces so that integrands vanishing on a coarse lattice are not
// mistaken for converged.
template <class F>
auto adaptive_simpson(F&& f, double a, double b, double abs_tol, int panels = 8, int max_depth = 40)
    -> Result<std::decay_t<std::invoke_result_t<F&, double>>> {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    Result<T> acc;
    if (!(b > a)) return acc;
    const double h = (b - a) / panels;
    const double panel_tol = abs_tol / panels;
    T total{};
    T fa = f(a);
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * h;
        const double hi = (k + 1 == panels) ? b : a + (k + 1) * h;
        const double mid = 0.5 * (lo + hi);
        const T fm = f(mid);
        const T fb = f(hi);
        const T whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += detail::simpson_step(f, lo, hi, fa, fm, fb, whole, panel_tol, max_depth, acc);
        fa = fb;
    }
    acc.value = total;
    // a leaf that ran out of depth is harmless if the summed error still meets the target
    if (!acc.converged && acc.error <= abs_tol) acc.converged = true;
    return acc;
}

// Unwraps a result, raising NumericError when the tolerance was not met.
template <class T>
T require(const Result<T>& r, const std::string& what) {
    if (!r.converged) throw NumericError(what + ": quadrature did not converge", r.error);
    return r.value;
}

// Fixed-order Gauss-Legendre rule on [a, b].
template <unsigned Points = 20, class F>
auto gauss_legendre(F&& f, double a, double b) -> std::decay_t<std::invoke_result_t<F&, double>> {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    using Rule = boost::math::quadrature::gauss<double, Points>;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    T sum{};
    std::size_t start = 0;
    if constexpr (Points % 2 == 1) {
        sum += w[0] * f(mid);
        start = 1;
    }
    for (std::size_t k = start; k < x.size(); ++k) {
        sum += w[k] * (f(mid - half * x[k]) + f(mid + half * x[k]));
    }
    return half * sum;
}

// Integral of a complex function of lambda over the closed ball |lambda| <= radius in
// dimension 1, 2 or 3. In d = 1 the interval is cut into 2 * radial_panels equal panels,
// so a uniform lattice with 2 * radial_panels / k cells has its nodes on panel edges.
std::complex<double> ball_integrate(const std::function<std::complex<double>(const FourierMode&)>& f,
                                    int dim, double radius, int radial_panels = 8);

}  // namespace sbm::quad
