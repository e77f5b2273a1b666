#pragma once

// Independent reference computations for the unit tests. Deliberately naive: fixed-step
// composite Simpson rules and direct sums, sharing no code with the library.

#include <cmath>
#include <numbers>

namespace oracle {

template <class F>
double simpson(F&& f, double a, double b, int n = 2000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

inline double gauss_density(double x, double var) {
    return std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

// P_t f(x) for a 1-d function by brute-force convolution.
template <class F>
double heat_smooth(F&& f, double t, double x, int n = 800) {
    if (t <= 0.0) return f(x);
    const double sd = std::sqrt(t);
    return simpson([&](double y) { return f(y) * gauss_density(y - x, t); }, x - 10.0 * sd, x + 10.0 * sd, n);
}

}  // namespace oracle
