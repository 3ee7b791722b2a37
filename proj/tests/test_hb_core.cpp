#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "debranges/errors.hpp"
#include "debranges/hb_core.hpp"
#include "debranges/sampling.hpp"

using namespace dbr;

namespace {
constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

HBSpec single() { return HBSpec::from_zeros({{0.0, -1.0}}); }
HBSpec double_zero() { return HBSpec::from_zeros({{0.0, -1.0}, {0.0, -1.0}}); }
}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(HBSpec::from_zeros({{0.0, 0.0}}), InputError);
    CHECK_THROWS_AS(HBSpec::from_zeros({{0.0, 1.0}}), InputError);
    CHECK_THROWS_AS(HBSpec::from_zeros({}), InputError);
    CHECK_THROWS_AS(HBSpec::from_zeros({{0.0, -1.0}}, 0.0, 0.0), InputError);
    HBSpec s;
    s.exp_rate = -1.0;
    CHECK_THROWS_AS(s.validate(), InputError);
    CHECK_NOTHROW(HBSpec::paley_wiener(pi));
}

TEST_CASE("eval_E examples") {
    CHECK(std::abs(eval_E(HBSpec::paley_wiener(pi), I) - std::exp(pi)) < 1e-12);
    CHECK(std::abs(eval_E(single(), 0.0) - I) < 1e-15);
    CHECK(std::abs(eval_E(double_zero(), 0.0) - (-1.0)) < 1e-15);
    // E#(z) = conj(E(conj z)); for E = z + i that is z - i
    CHECK(std::abs(eval_E(single(), cplx{0.3, 0.2}, true) - cplx{0.3, 0.2 - 1.0}) < 1e-15);
}

TEST_CASE("log-form product agrees with the direct product") {
    sampling::Rng rng(11);
    HBSpec big = sampling::random_polynomial_spec(rng, 70, 3.0, 0.5, 3.0);
    HBSpec first = big;
    first.zeros.resize(64);
    HBSpec rest = big;
    rest.zeros.erase(rest.zeros.begin(), rest.zeros.begin() + 64);
    for (cplx z : {cplx{0.4, 0.0}, cplx{-1.0, 2.0}, cplx{2.5, -0.2}}) {
        const cplx direct = eval_E(first, z) * eval_E(rest, z);
        CHECK(std::abs(eval_E(big, z) - direct) <= 1e-12 * std::abs(direct));
    }
}

TEST_CASE("eval_AB examples") {
    const auto [a, b] = eval_AB(HBSpec::paley_wiener(pi), 0.0, 0.5);
    CHECK(std::abs(a) < 1e-15);
    CHECK(b == doctest::Approx(-1.0));
    for (double x : {-2.0, -0.3, 0.0, 1.7}) {
        const auto [a2, b2] = eval_AB(double_zero(), 0.0, x);
        CHECK(a2 == doctest::Approx(x * x - 1));
        CHECK(b2 == doctest::Approx(2 * x));
        CHECK(a2 * a2 + b2 * b2 == doctest::Approx(std::norm(eval_E(double_zero(), x))));
    }
    const auto [a3, b3] = eval_AB(double_zero(), pi, 0.0);
    CHECK(a3 == doctest::Approx(1.0));
    CHECK(std::abs(b3) < 1e-15);
}

TEST_CASE("complex A and B continue the real parts") {
    sampling::Rng rng(3);
    const HBSpec s = sampling::random_polynomial_spec(rng, 5);
    for (double x : {-1.0, 0.25, 2.0}) {
        const auto [a, b] = eval_AB(s, 0.7, x);
        CHECK(std::abs(eval_A(s, 0.7, x) - a) <= 1e-12 * std::abs(eval_E(s, x)));
        CHECK(std::abs(eval_B(s, 0.7, x) - b) <= 1e-12 * std::abs(eval_E(s, x)));
    }
    // e^{i b} E = A + i B everywhere
    const cplx z{0.3, 0.8};
    CHECK(std::abs(eval_A(s, 0.7, z) + I * eval_B(s, 0.7, z) - std::polar(1.0, 0.7) * eval_E(s, z)) <
          1e-12 * std::abs(eval_E(s, z)));
}

TEST_CASE("phase examples") {
    const auto pw = PhaseProfile::anchored(HBSpec::paley_wiener(pi));
    CHECK(std::abs(pw.anchor_value) < 1e-15);
    CHECK(phase(pw, 0.5) == doctest::Approx(pi));
    CHECK(std::abs(std::polar(1.0, phase(pw, 0.3)) - theta(pw.spec, 0.3)) < 1e-14);

    const auto one = PhaseProfile::anchored(single());
    CHECK(one.anchor_value == doctest::Approx(pi));
    for (double x : {-3.0, -0.5, 0.0, 2.0}) {
        CHECK(phase(one, x) == doctest::Approx(pi + 2 * std::atan(x)));
        // independent check: arg((x - i) / (x + i)) modulo 2 pi
        const double direct = std::arg((x - I) / (x + I));
        CHECK(std::abs(std::remainder(phase(one, x) - direct, 2 * pi)) < 1e-14);
    }
    const auto shifted = PhaseProfile::anchored(double_zero(), 1.3);
    CHECK(phase(shifted, 1.3) == shifted.anchor_value);
}

TEST_CASE("the exponential rate enters the phase with factor two") {
    HBSpec s;
    s.exp_rate = 0.75;
    s.zeros = {{0.5, -1.0}};
    const auto prof = PhaseProfile::anchored(s);
    // slope far from the zero tends to 2 * exp_rate
    const double h = 1.0;
    const double x = 1e4;
    CHECK((phase(prof, x + h) - phase(prof, x)) / h == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("phase_derivative examples") {
    CHECK(phase_derivative(HBSpec::paley_wiener(pi), 0.37) == doctest::Approx(2 * pi));
    CHECK(phase_derivative(single(), 0.0) == doctest::Approx(2.0));
    CHECK(phase_derivative(double_zero(), 0.0) == doctest::Approx(4.0));
}

TEST_CASE("phase_derivative_sup examples") {
    const PhaseSup pw = phase_derivative_sup(HBSpec::paley_wiener(pi));
    CHECK(pw.at_infinity());
    CHECK(pw.value == doctest::Approx(2 * pi));

    const PhaseSup one = phase_derivative_sup(single());
    REQUIRE_FALSE(one.at_infinity());
    CHECK(one.value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(*one.argmax) < 1e-6);

    const HBSpec two = HBSpec::from_zeros({{1.0, -1.0}, {-1.0, -1.0}});
    const PhaseSup s = phase_derivative_sup(two);
    double brute = 0.0;
    for (int k = -200000; k <= 200000; ++k) brute = std::max(brute, phase_derivative(two, k * 5e-5));
    CHECK(s.value >= phase_derivative(two, 0.0));
    CHECK(s.value >= brute * (1 - 1e-12));
    CHECK(s.value <= brute * (1 + 1e-8));
}

TEST_CASE("phase_derivative_sup matches a dense grid on random specs") {
    sampling::Rng rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        const HBSpec s = sampling::random_polynomial_spec(rng, rng.integer(3, 12));
        const PhaseSup sup = phase_derivative_sup(s);
        double brute = 0.0;
        for (int k = 0; k <= 200000; ++k) brute = std::max(brute, phase_derivative(s, -8.0 + 16.0 * k / 200000));
        CHECK(sup.value >= brute * (1 - 1e-12));
        CHECK(sup.value <= brute * (1 + 1e-6));
    }
}

TEST_CASE("level_crossings examples") {
    const auto prof = PhaseProfile::anchored(double_zero());
    const auto a_zeros = level_crossings(prof, pi, -10, 10);
    REQUIRE(a_zeros.size() == 2);
    CHECK(a_zeros[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(a_zeros[1] == doctest::Approx(1.0).epsilon(1e-14));
    const auto b_zeros = level_crossings(prof, 0.0, -10, 10);
    REQUIRE(b_zeros.size() == 1);
    CHECK(std::abs(b_zeros[0]) < 1e-14);
    CHECK(level_crossings(PhaseProfile::anchored(single()), 0.0, -10, 10).empty());
}

TEST_CASE("solve_phase_level reports unavailable levels") {
    const auto prof = PhaseProfile::anchored(single());
    CHECK_THROWS_AS(solve_phase_level(prof, prof.anchor_value + 2 * pi), BracketUnavailable);
    CHECK(solve_phase_level(prof, prof.anchor_value + pi / 2) == doctest::Approx(1.0));
}

TEST_CASE("hb_bar_check examples") {
    const HBSpec s = double_zero();
    const auto grid = upper_half_plane_grid(-3, 3, 0.1, 3, 16, 16);
    auto e = [&](cplx z) { return eval_E(s, z); };
    auto es = [&](cplx z) { return eval_E_sharp(s, z); };
    const auto r1 = hb_bar_check(e, es, grid, 1e-12);
    CHECK(r1.passed);
    CHECK(r1.worst_ratio < 1.0);
    // A_0 - E = -i B_0: a scalar multiple of a real entire function
    auto g = [&](cplx z) { return eval_A(s, 0.0, z) - eval_E(s, z); };
    auto gs = [&](cplx z) { return eval_A(s, 0.0, z) - eval_E_sharp(s, z); };
    const auto r2 = hb_bar_check(g, gs, grid, 1e-12);
    CHECK(r2.passed);
    CHECK(r2.worst_ratio == doctest::Approx(1.0).epsilon(1e-12));
    const cplx bad[] = {cplx{0.0, -1.0}};
    CHECK_THROWS_AS(hb_bar_check(e, es, bad, 1e-12), InputError);
}

TEST_CASE("random-spec invariants") {
    sampling::Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const HBSpec s = sampling::random_polynomial_spec(rng, rng.integer(3, 12));
        const auto prof = PhaseProfile::anchored(s);
        const double beta = rng.uniform(0, 2 * pi);
        // strict HB inequality
        for (int k = 0; k < 20; ++k) {
            const cplx z{rng.uniform(-5, 5), rng.uniform(0.01, 5)};
            CHECK(std::abs(eval_E_sharp(s, z)) < std::abs(eval_E(s, z)));
        }
        double prev = phase(prof, -20.0);
        for (int k = 0; k < 50; ++k) {
            const double x = rng.uniform(-6, 6);
            // e^{i phi} = Theta
            CHECK(std::abs(std::polar(1.0, phase(prof, x)) - theta(s, x)) < 1e-10);
            // phi' against central differences
            const double h = 1e-5 * std::max(1.0, std::abs(x));
            const double fd = (phase(prof, x + h) - phase(prof, x - h)) / (2 * h);
            CHECK(std::abs(fd - phase_derivative(s, x)) <= 1e-6 * phase_derivative(s, x));
            // A' B - A B' > 0
            const auto [a, b] = eval_AB(s, beta, x);
            const auto [ap, bp] = eval_AB(s, beta, x + h);
            const auto [am, bm] = eval_AB(s, beta, x - h);
            const double wr = (ap - am) / (2 * h) * b - a * (bp - bm) / (2 * h);
            CHECK(wr > -h * h * std::norm(eval_E(s, x)));
        }
        for (int k = 1; k <= 100; ++k) {
            const double x = -20.0 + 0.4 * k;
            const double v = phase(prof, x);
            CHECK(v > prev);
            prev = v;
        }
        // interlacing of A and B zeros, and the A-gap bound
        const auto az = level_crossings(prof, 2 * beta + pi, -50, 50);
        const auto bz = level_crossings(prof, 2 * beta, -50, 50);
        std::vector<std::pair<double, int>> merged;
        for (double x : az) merged.push_back({x, 0});
        for (double x : bz) merged.push_back({x, 1});
        std::sort(merged.begin(), merged.end());
        for (std::size_t i = 1; i < merged.size(); ++i) CHECK(merged[i].second != merged[i - 1].second);
        const double sup = phase_derivative_sup(s).value;
        for (std::size_t i = 1; i < az.size(); ++i) CHECK(az[i] - az[i - 1] >= 2 * pi / sup - 1e-9);
        // crossings are roots of A
        for (double x : az) CHECK(std::abs(eval_AB(s, beta, x).first) <= 1e-12 * std::abs(eval_E(s, x)));
    }
}
