#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "sbm/analytic/generalized_fourier.hpp"
#include "sbm/analytic/identities.hpp"
#include "sbm/analytic/kernels.hpp"
#include "sbm/analytic/moments.hpp"
#include "sbm/errors.hpp"

using namespace sbm;
using namespace sbm::analytic;
using doctest::Approx;

namespace {

const double kE = std::numbers::e;
const double kPi = std::numbers::pi;

ModelParams full(double beta = 1.0, double alpha = 0.5, int d = 1) {
    return ModelParams{d, beta, alpha, FullSpace{}};
}

ModelParams orthant(int d = 1, int i = 1, double beta = 1.0, double alpha = 0.5) {
    return ModelParams{d, beta, alpha, Orthant{i}};
}

}  // namespace

TEST_CASE("rho and the convergence ball") {
    CHECK(rho(FourierMode{{0.0}}, full(1.0)) == 1.0);
    CHECK(rho(FourierMode{{2.0}}, full(2.0)) == 0.0);
    CHECK(rho(FourierMode{{std::sqrt(2.0), std::sqrt(2.0)}}, full(2.0, 0.5, 2)) == Approx(0.0).epsilon(1e-15));
    const auto p = full(1.0);
    CHECK(in_lambda_eps(FourierMode{{0.7071}}, 0.5, p));
    CHECK_FALSE(in_lambda_eps(FourierMode{{0.71}}, 0.5, p));
}

TEST_CASE("model parameter validation") {
    CHECK_THROWS_AS(ModelParams({1, -1.0, 0.5, FullSpace{}}).validate(), ArgumentError);
    CHECK_THROWS_AS(ModelParams({1, 1.0, 0.0, FullSpace{}}).validate(), ArgumentError);
    CHECK_THROWS_AS(ModelParams({2, 1.0, 0.5, Orthant{3}}).validate(), ArgumentError);
    CHECK_THROWS_AS(ModelParams({2, 1.0, 0.5, Orthant{0}}).validate(), ArgumentError);
    CHECK_NOTHROW(orthant(2, 2).validate());
    CHECK_THROWS_AS(InitialMeasure{}.validate(full()), ArgumentError);
    CHECK_THROWS_AS(InitialMeasure::point({-0.1}).validate(orthant()), DomainError);
}

TEST_CASE("heat mode action") {
    const Point x{0.7};
    CHECK(heat_mode_action(FourierMode{{0.0}}, 3.0, x) == std::complex<double>(1.0, 0.0));
    const auto at0 = heat_mode_action(FourierMode{{1.3}}, 0.0, x);
    CHECK(at0.real() == Approx(std::cos(1.3 * 0.7)).epsilon(1e-15));
    CHECK(at0.imag() == Approx(std::sin(1.3 * 0.7)).epsilon(1e-15));
    CHECK(heat_mode_action(FourierMode{{1.0}}, 2.0, Point{0.0}).real() == Approx(std::exp(-1.0)).epsilon(1e-15));

    // real part realizes P_t cos(lambda .) by brute-force convolution
    const double t = 0.8, l = 1.7;
    const double brute = oracle::heat_smooth([&](double y) { return std::cos(l * y); }, t, 0.4);
    CHECK(heat_mode_action(FourierMode{{l}}, t, Point{0.4}).real() == Approx(brute).epsilon(1e-9));
}

TEST_CASE("first moment oracle") {
    const auto p = full(1.0, 1.0);
    const auto delta0 = InitialMeasure::point({0.0});
    CHECK(first_moment(TestFunction::constant_one(1), 1.0, delta0, p) == Approx(kE).epsilon(1e-14));
    CHECK(first_moment(TestFunction::gaussian({0.0}, 1.0), 1.0, delta0, p) ==
          Approx(kE / std::sqrt(2.0)).epsilon(1e-14));

    SUBCASE("t = 0 is the identity") {
        const auto f = TestFunction::gaussian({0.3}, 0.5);
        const auto at = InitialMeasure::point({1.1});
        CHECK(first_moment(f, 0.0, at, p) == Approx(f(Point{1.1})).epsilon(1e-15));
        const auto b = TestFunction::box({0.0}, {1.0});
        CHECK(first_moment(b, 0.0, InitialMeasure::point({0.5}), p) == 1.0);
        CHECK(first_moment(b, 0.0, InitialMeasure::point({1.0}), p) == 0.0);
    }

    SUBCASE("gaussian and box against brute-force convolution") {
        for (double t : {0.2, 1.0, 3.5}) {
            for (double x : {-1.0, 0.25, 2.0}) {
                const auto at = InitialMeasure::point({x});
                const double g = oracle::heat_smooth([](double y) { return std::exp(-(y - 0.5) * (y - 0.5) / 0.18); }, t, x);
                CHECK(first_moment(TestFunction::gaussian({0.5}, 0.3), t, at, p) ==
                      Approx(std::exp(t) * g).epsilon(1e-9));
                const double bx = oracle::simpson([&](double y) { return oracle::gauss_density(y - x, t); }, 0.0, 1.0);
                CHECK(first_moment(TestFunction::box({0.0}, {1.0}), t, at, p) == Approx(std::exp(t) * bx).epsilon(1e-9));
            }
        }
    }

    SUBCASE("two-atom measure is linear") {
        InitialMeasure mu{{Atom{{0.0}, 0.5}, Atom{{1.0}, 0.5}}};
        const auto f = TestFunction::box({-0.5}, {0.5});
        const double a = first_moment(f, 1.0, InitialMeasure::point({0.0}), p);
        const double b = first_moment(f, 1.0, InitialMeasure::point({1.0}), p);
        CHECK(first_moment(f, 1.0, mu, p) == Approx(0.5 * (a + b)).epsilon(1e-15));
    }

    CHECK_THROWS_AS(first_moment(TestFunction::constant_one(1), 1.0, delta0, orthant()), PreconditionError);
}

TEST_CASE("second moment oracle") {
    const auto delta0 = InitialMeasure::point({0.0});

    SUBCASE("constant function closed form") {
        // e^{2t} + 2 alpha int_0^t e^{2 beta s} e^{beta (t - s)} ds at alpha = beta = t = 1
        const double closed = kE * kE + 2.0 * (kE * kE - kE);
        CHECK(closed == Approx(16.7306047).epsilon(1e-7));
        CHECK(second_moment(TestFunction::constant_one(1), 1.0, delta0, full(1.0, 1.0)) ==
              Approx(closed).epsilon(1e-10));
        CHECK(second_moment(TestFunction::constant_one(3), 1.0, InitialMeasure::point({1, 2, 3}),
                            full(1.0, 1.0, 3)) == Approx(closed).epsilon(1e-10));
    }

    SUBCASE("t = 0 and the small-alpha limit") {
        const auto f = TestFunction::gaussian({0.2}, 0.7);
        CHECK(second_moment(f, 0.0, delta0, full()) == Approx(std::pow(f(Point{0.0}), 2)).epsilon(1e-15));
        const double m = first_moment(f, 2.0, delta0, full(1.0, 1e-12));
        CHECK(second_moment(f, 2.0, delta0, full(1.0, 1e-12)) == Approx(m * m).epsilon(1e-10));
    }

    SUBCASE("variance term is linear in alpha") {
        const auto f = TestFunction::box({0.0}, {1.0});
        const double m = first_moment(f, 1.5, delta0, full(1.0, 1.0));
        const double v1 = second_moment(f, 1.5, delta0, full(1.0, 1.0)) - m * m;
        const double v2 = second_moment(f, 1.5, delta0, full(1.0, 0.01)) - m * m;
        CHECK(v2 / v1 == Approx(0.01).epsilon(1e-7));
    }

    SUBCASE("gaussian and box against brute-force double integrals") {
        const double t = 1.2, x = 0.3, beta = 0.8, alpha = 0.7;
        const auto p = full(beta, alpha);
        const auto at = InitialMeasure::point({x});
        auto brute = [&](auto&& fn, double ylo, double yhi, double m) {
            auto inner = [&](double s) {
                const double tau = t - s;
                auto y_integrand = [&](double y) {
                    const double ps = std::exp(beta * s) * oracle::heat_smooth(fn, s, y, 200);
                    const double kern = tau > 0 ? std::exp(beta * tau) * oracle::gauss_density(y - x, tau) : 0.0;
                    return ps * ps * kern;
                };
                if (tau <= 1e-12) {
                    const double ps = std::exp(beta * s) * oracle::heat_smooth(fn, s, x, 400);
                    return ps * ps;
                }
                const double sd = std::sqrt(tau);
                return oracle::simpson(y_integrand, std::max(ylo, x - 10 * sd), std::min(yhi, x + 10 * sd), 200);
            };
            return m * m + 2.0 * alpha * oracle::simpson(inner, 0.0, t, 60);
        };
        auto g = [](double y) { return std::exp(-(y + 0.4) * (y + 0.4) / (2.0 * 0.64)); };
        const auto gf = TestFunction::gaussian({-0.4}, 0.8);
        CHECK(second_moment(gf, t, at, p) == Approx(brute(g, -1e9, 1e9, first_moment(gf, t, at, p))).epsilon(1e-6));
    }

    SUBCASE("variance is nonnegative across the catalog") {
        const auto p = full(1.0, 0.5);
        const auto at = InitialMeasure::point({0.4});
        for (double t : {0.0, 0.5, 2.0, 4.0}) {
            for (const auto& f : {TestFunction::constant_one(1), TestFunction::box({0.0}, {1.0}),
                                  TestFunction::gaussian({1.0}, 0.4), TestFunction::cosine({0.8})}) {
                const double m = first_moment(f, t, at, p);
                CHECK(second_moment(f, t, at, p) >= m * m * (1.0 - 1e-12));
            }
        }
    }

    SUBCASE("cosine against its constant-mode decomposition") {
        // cos^2 = (1 + cos 2.)/2, so the variance integrand is closed form in s
        const double l = 0.6, t = 2.0, x = 0.9, beta = 1.0, alpha = 0.5;
        auto inner = [&](double s) {
            const double tau = t - s;
            const double sq = std::exp(2 * beta * s) * std::exp(-l * l * s) * 0.5 *
                              (1.0 + std::cos(2 * l * x) * std::exp(-2 * l * l * tau));
            return std::exp(beta * tau) * sq;
        };
        const double m = std::exp(beta * t) * std::cos(l * x) * std::exp(-0.5 * l * l * t);
        const double want = m * m + 2 * alpha * oracle::simpson(inner, 0.0, t, 2000);
        CHECK(second_moment(TestFunction::cosine({l}), t, InitialMeasure::point({x}), full(beta, alpha)) ==
              Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("box second moment against brute force") {
    const double t = 1.0, x = 0.2, beta = 1.0, alpha = 1.0;
    // (P_s 1_[0,1])(y) is a normal-CDF difference; integrate it directly.
    auto ps = [](double s, double y) {
        if (s <= 0) return (y >= 0 && y < 1) ? 1.0 : 0.0;
        const double sd = std::sqrt(s);
        return 0.5 * (std::erf((1 - y) / (sd * std::sqrt(2.0))) - std::erf((0 - y) / (sd * std::sqrt(2.0))));
    };
    auto inner = [&](double s) {
        const double tau = t - s;
        if (tau <= 1e-14) return std::exp(2 * beta * s) * ps(s, x) * ps(s, x);
        const double sd = std::sqrt(tau);
        return std::exp(beta * (t + s)) *
               oracle::simpson([&](double y) { return ps(s, y) * ps(s, y) * oracle::gauss_density(y - x, tau); },
                               x - 10 * sd, x + 10 * sd, 4000);
    };
    const double m = first_moment(TestFunction::box({0.0}, {1.0}), t, InitialMeasure::point({x}), full(beta, alpha));
    const double want = m * m + 2 * alpha * oracle::simpson(inner, 0.0, t, 400);
    CHECK(second_moment(TestFunction::box({0.0}, {1.0}), t, InitialMeasure::point({x}), full(beta, alpha)) ==
          Approx(want).epsilon(1e-5));
}

TEST_CASE("second moment of W oracle") {
    const auto p = full(1.0, 1.0);
    CHECK(w_second_moment_oracle(FourierMode{{0.0}}, 60.0, p) == Approx(3.0).epsilon(1e-14));
    CHECK(w_second_moment_oracle(FourierMode{{1.0}}, 2.0, p) == Approx(5.0).epsilon(1e-15));
    CHECK(w_second_moment_oracle(FourierMode{{0.0}}, 3.0, p) == Approx(1.0 + 2.0 * (1.0 - std::exp(-3.0))).epsilon(1e-14));
    CHECK(w_second_moment_oracle(FourierMode{{0.0}}, 3.0, p) == Approx(2.9004).epsilon(1e-4));
    for (double l : {0.0, 0.5, 1.0, 1.4}) CHECK(w_second_moment_oracle(FourierMode{{l}}, 0.0, p) == 1.0);
    // beyond the critical shell the oracle grows exponentially
    const double k = 1.0 - 1.44;
    CHECK(w_second_moment_oracle(FourierMode{{1.2}}, 2.0, p) == Approx(1.0 + 2.0 * (std::exp(-k * 2.0) - 1.0) / -k).epsilon(1e-12));
}

TEST_CASE("class A membership") {
    const auto p = full(1.0);
    for (double w : {0.5, 1.0, 2.0}) {
        const auto f = TestFunction::gaussian({0.3}, w);
        for (double frac : {0.1, 0.5, 0.9}) {
            const double eps = frac * w * w;
            const auto r = class_A_bound(f, eps, p);
            REQUIRE(r.member);
            // w / sqrt(w^2 - eps) per coordinate, times e^{-eps beta}
            CHECK(r.value == Approx(std::exp(-eps) * w / std::sqrt(w * w - eps)).epsilon(1e-8));
            REQUIRE(r.eps_sup.has_value());
            CHECK(*r.eps_sup == Approx(w * w));
        }
        const auto beyond = class_A_bound(f, 1.01 * w * w, p);
        CHECK_FALSE(beyond.member);
    }
    SUBCASE("small eps approaches the plain L1 norm of the transform") {
        const auto r = class_A_bound(TestFunction::gaussian({0.0}, 1.0), 1e-8, p);
        CHECK(r.value == Approx(1.0).epsilon(1e-7));
    }
    SUBCASE("two-dimensional product") {
        const auto r = class_A_bound(TestFunction::gaussian({0.0, 1.0}, 1.0), 0.25, full(1.0, 0.5, 2));
        CHECK(r.value == Approx(std::exp(-0.25) / 0.75).epsilon(1e-8));
    }
    SUBCASE("boxes diverge") {
        for (double eps : {0.01, 0.25, 1.0}) {
            const auto r = class_A_bound(TestFunction::box({0.0}, {1.0}), eps, p);
            CHECK_FALSE(r.member);
            CHECK_FALSE(r.reason.empty());
        }
        CHECK_FALSE(class_A_bound(TestFunction::box({0.0}, {1.0}), 0.25, p).eps_sup.has_value());
    }
    CHECK_THROWS_AS(class_A_bound(TestFunction::constant_one(1), 0.1, p), CatalogError);
    CHECK_THROWS_AS(class_A_bound(TestFunction::cosine({1.0}), 0.1, p), CatalogError);
    CHECK_THROWS_AS(class_A_bound(TestFunction::gaussian({0.0}, 1.0), 0.0, p), ArgumentError);
}

TEST_CASE("catalog integrals and transforms") {
    CHECK(integral(TestFunction::box({0.0, -1.0}, {2.0, 0.5})) == Approx(3.0));
    CHECK(integral(TestFunction::gaussian({0.0}, 2.0)) == Approx(2.0 * std::sqrt(2.0 * kPi)).epsilon(1e-15));
    CHECK_THROWS_AS(integral(TestFunction::constant_one(1)), CatalogError);

    // declared integrals match quadrature to 1e-8
    CHECK(oracle::simpson([](double y) { return std::exp(-(y - 1) * (y - 1) / (2 * 0.09)); }, -5.0, 7.0, 4000) ==
          Approx(integral(TestFunction::gaussian({1.0}, 0.3))).epsilon(1e-8));

    for (double l : {-2.0, 0.0, 0.5, 3.0}) {
        const auto b = fourier_transform(TestFunction::box({0.2}, {1.1}), FourierMode{{l}});
        const double re = oracle::simpson([&](double y) { return std::cos(l * y); }, 0.2, 1.1);
        const double im = oracle::simpson([&](double y) { return std::sin(l * y); }, 0.2, 1.1);
        CHECK(b.real() == Approx(re).epsilon(1e-10));
        CHECK(b.imag() == Approx(im).epsilon(1e-10).scale(1.0));
        const auto g = fourier_transform(TestFunction::gaussian({0.7}, 0.5), FourierMode{{l}});
        auto gf = [](double y) { return std::exp(-(y - 0.7) * (y - 0.7) / 0.5); };
        CHECK(g.real() == Approx(oracle::simpson([&](double y) { return gf(y) * std::cos(l * y); }, -6, 7, 4000)).epsilon(1e-9));
        CHECK(g.imag() == Approx(oracle::simpson([&](double y) { return gf(y) * std::sin(l * y); }, -6, 7, 4000)).epsilon(1e-9).scale(1.0));
    }
    CHECK_THROWS_AS(fourier_transform(TestFunction::cosine({1.0}), FourierMode{{1.0}}), CatalogError);
    CHECK_THROWS_AS(TestFunction::box({1.0}, {0.0}), ArgumentError);
    CHECK_THROWS_AS(TestFunction::gaussian({0.0}, 0.0), ArgumentError);
}

TEST_CASE("orthant weighted integrals") {
    const auto p = orthant();
    CHECK(orthant_moment_integral(TestFunction::box({1.0}, {2.0}), p) == Approx(1.5).epsilon(1e-15));
    CHECK(1.5 / std::sqrt(2.0 * kPi) == Approx(0.598413).epsilon(1e-6));
    const double g = oracle::simpson([](double x) { return x * std::exp(-(x - 0.4) * (x - 0.4) / 0.5); }, 0.0, 8.0, 4000);
    CHECK(orthant_moment_integral(TestFunction::gaussian({0.4}, 0.5), p) == Approx(g).epsilon(1e-10));
    CHECK_THROWS_AS(orthant_moment_integral(TestFunction::box({-1.0}, {2.0}), p), DomainError);
    CHECK_THROWS_AS(orthant_moment_integral(TestFunction::gaussian({-1.0}, 1.0), p), DomainError);
    // only the absorbed coordinate carries the weight
    CHECK(orthant_moment_integral(TestFunction::box({-1.0, 1.0}, {1.0, 3.0}), orthant(2, 1)) == Approx(2.0 * 4.0));
}

TEST_CASE("images kernel") {
    const auto p = orthant();
    CHECK(images_kernel(Point{0.0}, Point{1.0}, 0.5, p) == 0.0);
    CHECK_THROWS_AS(images_kernel(Point{1.0}, Point{1.0}, 0.0, p), ArgumentError);
    // no absorbed coordinates: the free kernel
    const ModelParams free2{2, 1.0, 0.5, FullSpace{}};
    const Point x{0.1, -0.3}, y{1.2, 0.4};
    CHECK(images_kernel(x, y, 0.9, free2) == Approx(heat_kernel(x, y, 0.9)).epsilon(1e-15));
    // d = 1 closed form by reflection
    const double t = 0.7, a = 0.4, b = 1.3;
    const double want = oracle::gauss_density(b - a, t) - oracle::gauss_density(b + a, t);
    CHECK(images_kernel(Point{a}, Point{b}, t, p) == Approx(want).epsilon(1e-14));
    CHECK(images_kernel(Point{a}, Point{b}, t, p) == Approx(images_kernel(Point{b}, Point{a}, t, p)).epsilon(1e-12));

    SUBCASE("killed semigroup matches kernel quadrature") {
        const auto box = TestFunction::box({1.0}, {2.0});
        const auto gauss = TestFunction::gaussian({1.2}, 0.5);
        for (double s : {0.3, 1.0, 4.0}) {
            for (double x0 : {0.2, 1.0, 2.5}) {
                const double kb = oracle::simpson([&](double z) { return images_kernel(Point{x0}, Point{z}, s, p); }, 1.0, 2.0);
                CHECK(killed_heat_action(box, s, Point{x0}, p) == Approx(kb).epsilon(1e-10));
                const double kg = oracle::simpson(
                    [&](double z) { return gauss(Point{z}) * images_kernel(Point{x0}, Point{z}, s, p); }, 0.0, 12.0, 6000);
                CHECK(killed_heat_action(gauss, s, Point{x0}, p) == Approx(kg).epsilon(1e-9));
            }
        }
        CHECK(killed_heat_action(box, 1.0, Point{-0.5}, p) == 0.0);
        // survival probability of the constant matches 1 - 2 Phi(-x/sqrt t)
        const ModelParams p2{1, 1.0, 0.5, Orthant{1}};
        CHECK(killed_heat_action(TestFunction::constant_one(1), 2.0, Point{1.0}, ModelParams{1, 1.0, 0.5, FullSpace{}}) == 1.0);
        (void)p2;
    }

    SUBCASE("first moment in the orthant of the box") {
        const auto box = TestFunction::box({1.0}, {2.0});
        const auto at = InitialMeasure::point({1.0});
        CHECK(first_moment_orthant(box, 2.0, at, p) == Approx(std::exp(2.0) * killed_heat_action(box, 2.0, Point{1.0}, p)));
    }
}

TEST_CASE("generalized modes") {
    const auto p1 = orthant();
    CHECK(generalized_mode(FourierMode{{0.0}}, Point{1.7}, p1) == std::complex<double>(1.7, 0.0));
    CHECK(std::abs(generalized_mode(FourierMode{{kPi}}, Point{1.0}, p1)) < 1e-15);
    CHECK(generalized_mode(FourierMode{{0.0, 0.0}}, Point{5.0, 2.0}, orthant(2, 1)) == std::complex<double>(2.0, 0.0));
    const auto free = generalized_mode(FourierMode{{0.8}}, Point{0.5}, ModelParams{1, 1.0, 0.5, FullSpace{}});
    CHECK(free.real() == Approx(std::cos(0.4)));
    CHECK(free.imag() == Approx(std::sin(0.4)));

    // series branch against the direct ratio around the cutoff
    for (double scale : {0.9, 0.999, 1.001, 1.1}) {
        const double x = 2.0, l = scale * kSinRatioSeriesCutoff / x;
        CHECK(std::abs(sin_ratio(l, x) - std::sin(l * x) / l) < 1e-12);
    }
}

TEST_CASE("generalized transform") {
    SUBCASE("full space reduces to the ordinary transform") {
        const auto f = TestFunction::gaussian({0.5}, 0.7);
        const FourierMode m{{1.3}};
        const ModelParams p{1, 1.0, 0.5, FullSpace{}};
        CHECK(std::abs(generalized_fourier(f, m, p) - fourier_transform(f, m)) == 0.0);
    }

    SUBCASE("sine transform of a box is closed form") {
        const auto p = orthant();
        for (double l : {0.0, 1e-6, 0.7, 4.0}) {
            const double want = oracle::simpson([&](double x) { return l == 0 ? x : std::sin(l * x) / l; }, 1.0, 2.0);
            const auto got = generalized_fourier(TestFunction::box({1.0}, {2.0}), FourierMode{{l}}, p);
            CHECK(got.real() == Approx(want).epsilon(1e-10));
            CHECK(got.imag() == 0.0);
        }
    }

    SUBCASE("well-separated gaussian matches its odd extension") {
        // c / w = 12 leaves the reflected copy below double precision
        const double c = 1.8, w = 0.15;
        const auto p = orthant();
        for (double l : {0.0, 0.5, 3.0, 9.0}) {
            const double odd = w * std::sqrt(2 * kPi) * std::exp(-0.5 * w * w * l * l) * (l == 0 ? c : std::sin(l * c) / l);
            const auto got = generalized_fourier(TestFunction::gaussian({c}, w), FourierMode{{l}}, p);
            CHECK(got.imag() == 0.0);
            CHECK(std::abs(got.real() - odd) <= 1e-6 * std::abs(odd));
        }
    }

    SUBCASE("round trip of a gaussian restricted to the half line") {
        const auto p = orthant();
        const auto f = TestFunction::gaussian({1.5}, 0.3);
        const SpectralFunction fhat = [&](const FourierMode& m) { return generalized_fourier(f, m, p); };
        double worst = 0.0;
        for (double x = 0.5; x <= 3.0 + 1e-12; x += 0.25) {
            const double back = inverse_generalized_fourier(fhat, Point{x}, p, 32.0, 1e-9);
            worst = std::max(worst, std::abs(back - f(Point{x})));
        }
        CHECK(worst <= 1e-6);
    }

    SUBCASE("inverse of the odd-extension closed form") {
        const auto p = orthant();
        const double c = 1.0, w = 0.5;
        const SpectralFunction fhat = [&](const FourierMode& m) {
            const double l = m.lambda[0];
            return std::complex<double>(w * std::sqrt(2 * kPi) * std::exp(-0.5 * w * w * l * l) * sin_ratio(l, c), 0.0);
        };
        for (double x : {0.5, 1.0, 2.0, 3.0}) {
            const double want = std::exp(-(x - c) * (x - c) / (2 * w * w)) - std::exp(-(x + c) * (x + c) / (2 * w * w));
            CHECK(std::abs(inverse_generalized_fourier(fhat, Point{x}, p, 20.0, 1e-11) - want) <= 1e-6 * std::abs(want) + 1e-10);
        }
    }
}

TEST_CASE("identity suite passes") {
    for (const auto& r : run_identity_suite()) {
        INFO(r.name << " error " << r.error);
        CHECK(r.pass);
    }
}
