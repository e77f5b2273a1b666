#include "sbm/analytic/quadrature.hpp"

#include <algorithm>

namespace sbm::quad {

std::complex<double> ball_integrate(const std::function<std::complex<double>(const FourierMode&)>& f,
                                    int dim, double radius, int radial_panels) {
    using C = std::complex<double>;
    if (!(radius > 0.0)) return C{};
    constexpr double two_pi = 2.0 * std::numbers::pi;
    FourierMode mode;
    mode.lambda.assign(static_cast<std::size_t>(dim), 0.0);

    if (dim == 1) {
        const int panels = 2 * radial_panels;
        const double h = 2.0 * radius / panels;
        C total{};
        for (int k = 0; k < panels; ++k) {
            const double lo = -radius + k * h;
            total += gauss_legendre<20>(
                [&](double l) {
                    mode.lambda[0] = l;
                    return f(mode);
                },
                lo, lo + h);
        }
        return total;
    }

    const double dr = radius / radial_panels;
    if (dim == 2) {
        constexpr int angles = 64;  // trapezoid rule is spectrally accurate for periodic integrands
        C total{};
        for (int k = 0; k < radial_panels; ++k) {
            total += gauss_legendre<20>(
                [&](double r) {
                    C ring{};
                    for (int a = 0; a < angles; ++a) {
                        const double th = two_pi * a / angles;
                        mode.lambda[0] = r * std::cos(th);
                        mode.lambda[1] = r * std::sin(th);
                        ring += f(mode);
                    }
                    return ring * (two_pi / angles) * r;
                },
                k * dr, (k + 1) * dr);
        }
        return total;
    }

    if (dim == 3) {
        constexpr int azimuths = 48;
        C total{};
        for (int k = 0; k < radial_panels; ++k) {
            total += gauss_legendre<16>(
                [&](double r) {
                    const C shell = gauss_legendre<20>(
                        [&](double mu) {
                            const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
                            C ring{};
                            for (int a = 0; a < azimuths; ++a) {
                                const double ph = two_pi * a / azimuths;
                                mode.lambda[0] = r * s * std::cos(ph);
                                mode.lambda[1] = r * s * std::sin(ph);
                                mode.lambda[2] = r * mu;
                                ring += f(mode);
                            }
                            return ring * (two_pi / azimuths);
                        },
                        -1.0, 1.0);
                    return shell * r * r;
                },
                k * dr, (k + 1) * dr);
        }
        return total;
    }
    throw ArgumentError("ball quadrature supports d <= 3");
}

}  // namespace sbm::quad
