#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "debranges/errors.hpp"
#include "debranges/numerics.hpp"

using namespace dbr;
using namespace dbr::numerics;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("whole-line integrals of rational functions") {
    const auto scheme = QuadratureScheme::on_line();
    const auto r1 = integrate([](double x) { return 1.0 / ((x * x + 1) * (x * x + 1)); }, scheme);
    CHECK(r1.converged);
    CHECK(r1.value == doctest::Approx(pi / 2).epsilon(1e-12));
    const auto r2 = integrate([](double x) { return 1.0 / (x * x + 1); }, scheme);
    CHECK(r2.value == doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("compact integrals including algebraic endpoint behaviour") {
    const auto r = integrate([](double x) { return std::cos(x) * std::cos(x); },
                             QuadratureScheme::on_interval(-pi / 2, pi / 2));
    CHECK(r.value == doctest::Approx(pi / 2).epsilon(1e-13));
    // int_0^1 sqrt(x) dx = 2/3 needs the endpoint grading
    const auto s = integrate([](double x) { return std::sqrt(x); }, QuadratureScheme::on_interval(0, 1));
    CHECK(s.converged);
    CHECK(s.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("interior kinks are resolved by breakpoints") {
    const double cut[] = {0.3};
    const auto r = integrate([](double x) { return std::pow(std::abs(x - 0.3), 1.5); },
                             QuadratureScheme::on_interval(-1, 1), cut);
    const double exact = (std::pow(1.3, 2.5) + std::pow(0.7, 2.5)) / 2.5;
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("panel doubling changes results by less than the error estimate") {
    auto f = [](double x) { return std::exp(-x * x) * std::cos(3 * x); };
    const auto scheme = QuadratureScheme::on_line();
    const auto r = integrate(f, scheme);
    const double exact = std::sqrt(pi) * std::exp(-9.0 / 4.0);
    CHECK(std::abs(r.value - exact) <= std::max(r.error, 1e-15));
}

TEST_CASE("log_gamma special values") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-14);
    CHECK(std::abs(log_gamma(2.0)) < 1e-14);
    CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-14));
    CHECK(log_gamma(6.0) == doctest::Approx(std::log(120.0)).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), InputError);
    CHECK_THROWS_AS(log_gamma(-1.5), InputError);
}

TEST_CASE("log_gamma agrees with the C library and satisfies the recurrence") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.5, 50.0);
    for (int i = 0; i < 500; ++i) {
        const double x = u(rng);
        const double lg = log_gamma(x);
        CHECK(std::abs(lg - std::lgamma(x)) <= 1e-13 * std::max(1.0, std::abs(lg)));
        CHECK(std::abs(log_gamma(x + 1) - std::log(x) - lg) <= 1e-12 * std::max(1.0, std::abs(lg)));
    }
}

TEST_CASE("monotone_solve examples") {
    const double tol = 1e-14;
    CHECK(monotone_solve([](double x) { return 2 * std::atan(x); }, pi / 2, -10, 10, tol) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(monotone_solve([](double x) { return 2 * pi * x; }, pi, -5, 5, tol,
                         [](double) { return 2 * pi; }) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(monotone_solve([](double x) { return x; }, 0.3, 0, 1, tol) == doctest::Approx(0.3).epsilon(1e-13));
    CHECK_THROWS_AS(monotone_solve([](double x) { return x; }, 3.0, 0, 1, tol), BracketError);
}

TEST_CASE("monotone_solve lands within tolerance of the root") {
    auto g = [](double x) { return x * x * x + x; };
    auto dg = [](double x) { return 3 * x * x + 1; };
    for (double target : {-5.0, -0.1, 0.0, 0.7, 9.0}) {
        const double x = monotone_solve(g, target, -3, 3, 1e-13, dg);
        const double root = monotone_solve(g, target, -3, 3, 1e-15);
        CHECK(std::abs(x - root) <= 2e-13);
    }
}

TEST_CASE("sup_on_window examples") {
    const auto m1 = sup_on_window([](double x) { return std::cos(x); }, -2, 2, 64, 1e-12);
    CHECK(m1.value == doctest::Approx(1.0));
    CHECK(std::abs(m1.argmax) < 1e-6);
    const auto m2 = sup_on_window([](double x) { return 1 / (1 + x * x); }, -1, 1, 64, 1e-12);
    CHECK(m2.value == doctest::Approx(1.0));
    // |A/E| for E = (z+i)^2: |x^2 - 1| / (x^2 + 1)
    const auto m3 = sup_on_window([](double x) { return std::abs(x * x - 1) / (x * x + 1); }, -5, 5, 64, 1e-12);
    CHECK(m3.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(m3.argmax) < 1e-5);
}

TEST_CASE("contour derivative of exp") {
    auto f = [](std::complex<double> z) { return std::exp(z); };
    // roundoff grows like eps / radius^k
    for (int k = 1; k <= 4; ++k)
        CHECK(contour_derivative(f, 0.7, k).real() ==
              doctest::Approx(std::exp(0.7)).epsilon(k <= 2 ? 1e-10 : 1e-6));
}
