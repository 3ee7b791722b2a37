#include <doctest.h>

#include <cmath>
#include <numbers>

#include "debranges/bounds.hpp"
#include "debranges/errors.hpp"
#include "debranges/extremal.hpp"
#include "debranges/numerics.hpp"
#include "debranges/sampling.hpp"

using namespace dbr;
using namespace dbr::extremal;

namespace {

constexpr double pi = std::numbers::pi;

HBSpec power_spec(int n) { return HBSpec::from_zeros(std::vector<cplx>(n, cplx{0.0, -1.0})); }

ExtremalProblem poly_problem(const HBSpec& spec, double p, double xi, int degree = -1) {
    ExtremalProblem pr;
    pr.spec = spec;
    pr.p = p;
    pr.xi = xi;
    pr.degree = degree;
    return pr;
}

double relative_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += a[i] * a[i];
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("constant basis for (z+i)^2 reproduces the p = 2 kernel constant") {
    const auto sol = solve(poly_problem(power_spec(2), 2.0, 0.0));
    CHECK(sol.C_value == doctest::Approx(std::sqrt(2.0 / pi)).epsilon(1e-10));
    CHECK(sol.norm_check == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sol.zeros.zeros.empty());
    CHECK(sol.coefficients.size() == 1);
}

TEST_CASE("degree-2 basis for (z+i)^4 at 0 contains the kernel") {
    const HBSpec spec = power_spec(4);
    const auto sol = solve(poly_problem(spec, 2.0, 0.0));
    CHECK(sol.C_value == doctest::Approx(bounds::C2_exact(spec, 0.0)).epsilon(1e-9));
    REQUIRE(sol.zeros.zeros.size() == 2);
    CHECK(sol.zeros.real);
    CHECK(sol.zeros.zeros[0] == doctest::Approx(-sol.zeros.zeros[1]).epsilon(1e-9));
    // the optimum is proportional to the kernel
    const double ratio = sol.f(0.7) / bounds::kernel_eval(spec, 0.0, cplx{0.7, 0.0}).real();
    for (double x : {-3.0, -0.4, 1.3, 5.0})
        CHECK(sol.f(x) == doctest::Approx(ratio * bounds::kernel_eval(spec, 0.0, cplx{x, 0.0}).real()).epsilon(1e-9));
    for (double r : sol.orthogonality_residuals) CHECK(std::abs(r) <= 1e-8);
}

TEST_CASE("p = 2 never exceeds the kernel constant when the kernel is outside the span") {
    const HBSpec spec = power_spec(4);
    for (double xi : {0.3, 1.0, -2.0}) {
        const auto sol = solve(poly_problem(spec, 2.0, xi));
        CHECK(sol.C_value <= bounds::C2_exact(spec, xi) * (1.0 + 1e-12));
    }
}

TEST_CASE("p = 1 with a linear basis matches a brute-force angle search") {
    const HBSpec spec = power_spec(3);
    const auto sol = solve(poly_problem(spec, 1.0, 0.0));
    // f = cos t + sin t x; C(t) = f(0) / ||f/E||_1 with |E(0)| = 1
    auto C_of = [&](double t) {
        const double a = std::cos(t), b = std::sin(t);
        std::vector<double> breaks;
        if (std::abs(b) > 1e-14) breaks.push_back(-a / b);
        auto scheme = numerics::QuadratureScheme::on_line(0.0, 1.0);
        const auto r = numerics::integrate(
            [&](double x) { return std::abs(a + b * x) / std::pow(1.0 + x * x, 1.5); }, scheme, breaks);
        return a / r.value;
    };
    double best = -1.0, best_t = 0.0;
    for (int k = 0; k <= 2000; ++k) {
        const double t = -0.5 * pi + pi * k / 2000.0;
        const double c = C_of(t);
        if (c > best) {
            best = c;
            best_t = t;
        }
    }
    const auto refined = numerics::golden_max(C_of, best_t - pi / 2000.0, best_t + pi / 2000.0, 1e-10);
    CHECK(sol.C_value == doctest::Approx(refined.value).epsilon(1e-4));
    CHECK(sol.kkt_residual <= 1e-6);
}

TEST_CASE("independent random starts agree (uniqueness)") {
    sampling::Rng rng(11);
    const HBSpec spec = sampling::random_polynomial_spec(rng, 6);
    for (double p : {1.5, 2.0, 3.0}) {
        auto a = poly_problem(spec, p, 0.4);
        a.random_start = true;
        a.seed = 1;
        auto b = a;
        b.seed = 2;
        const auto sa = solve(a);
        const auto sb = solve(b);
        CHECK(relative_distance(sa.coefficients, sb.coefficients) <= 1e-6);
        CHECK(sa.C_value == doctest::Approx(sb.C_value).epsilon(1e-10));
    }
}

TEST_CASE("enlarging the basis never decreases C") {
    sampling::Rng rng(5);
    const HBSpec spec = sampling::random_polynomial_spec(rng, 6);
    for (double p : {1.0, 1.5, 3.0}) {
        double previous = 0.0;
        for (int d = 0; d <= 4; ++d) {
            const auto sol = solve(poly_problem(spec, p, -0.2, d));
            CHECK(sol.C_value >= previous * (1.0 - 1e-8));
            previous = sol.C_value;
        }
    }
}

TEST_CASE("orthogonality residuals vanish at the optimum and react to perturbation") {
    sampling::Rng rng(21);
    for (int trial = 0; trial < 3; ++trial) {
        const HBSpec spec = sampling::random_polynomial_spec(rng, 6);
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            const auto problem = poly_problem(spec, p, 0.1);
            const auto sol = solve(problem);
            const double tol = p == 1.0 ? 1e-4 : 1e-6;
            CHECK(sol.zeros.real);
            CHECK(sol.zeros.simple);
            for (double r : sol.orthogonality_residuals) CHECK(std::abs(r) <= tol);

            ExtremalFunction bumped = sol.f;
            for (std::size_t k = 0; k < bumped.u_coefficients.size(); ++k)
                bumped.u_coefficients[k] *= 1.0 + 0.01 * (k % 2 == 0 ? 1.0 : -1.0);
            const ZeroSet zs = extract_zeros(bumped, problem);
            double worst = 0.0;
            for (std::size_t i = 0; i < zs.zeros.size(); ++i)
                for (std::size_t j = i + 1; j < zs.zeros.size(); ++j)
                    worst = std::max(worst, std::abs(orthogonality_residual(bumped, problem, zs.zeros[i], zs.zeros[j])));
            CHECK(worst > 1e-3);
        }
    }
}

TEST_CASE("single-zero form is strictly positive") {
    const HBSpec spec = power_spec(4);
    const auto problem = poly_problem(spec, 2.0, 0.0);
    const auto sol = solve(problem);
    const double lam = sol.zeros.zeros.back();
    CHECK(orthogonality_residual(sol.f, problem, lam, lam) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("complex root pair is flagged") {
    ExtremalFunction f;
    f.u_coefficients = {1.0, 0.0, 1.0};  // 1 + x^2
    const auto problem = poly_problem(power_spec(4), 2.0, 0.0);
    const ZeroSet zs = extract_zeros(f, problem);
    CHECK_FALSE(zs.real);
    CHECK(zs.max_imag == doctest::Approx(1.0));
}

TEST_CASE("symmetrize_real") {
    CHECK(symmetrize_real({cplx{1.0, 0.0}, cplx{-2.0, 0.0}}, 0.0) == std::vector<double>{1.0, -2.0});
    const auto g = symmetrize_real({cplx{0.0, 3.0}, cplx{0.0, -0.5}}, pi);
    CHECK(g[0] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(g[1] == doctest::Approx(-0.5).epsilon(1e-15));
    sampling::Rng rng(3);
    std::vector<cplx> a(5);
    for (auto& c : a) c = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double sigma = rng.uniform(-pi, pi);
    const auto r = symmetrize_real(a, sigma);
    // g = (e^{-i s/2} f + e^{i s/2} f#) / 2 evaluated directly on the real line
    for (double x : {-2.0, -0.3, 0.0, 1.1, 4.0}) {
        cplx f = 0.0, fs = 0.0;
        double gx = 0.0;
        for (int k = 4; k >= 0; --k) {
            f = f * x + a[k];
            fs = fs * x + std::conj(a[k]);
            gx = gx * x + r[k];
        }
        const cplx direct = (std::polar(1.0, -sigma / 2) * f + std::polar(1.0, sigma / 2) * fs) / 2.0;
        CHECK(std::abs(direct.imag()) <= 1e-14 * 100.0);
        CHECK(direct.real() == doctest::Approx(gx).epsilon(1e-13));
    }
}

TEST_CASE("mean type diagnostics") {
    const HBSpec e2 = power_spec(2);
    const auto rep = mean_type_diagnostic([](cplx) { return cplx{1.0, 0.0}; }, e2);
    for (std::size_t i = 0; i < rep.y.size(); ++i)
        CHECK(rep.values[i] == doctest::Approx(-2.0 * std::log(rep.y[i] + 1.0) / rep.y[i]).epsilon(1e-12));
    CHECK(rep.passed);

    const HBSpec pw = HBSpec::paley_wiener(pi);
    const auto cosine = mean_type_diagnostic([&](cplx z) { return eval_A(pw, 0.0, z); }, pw, {1.0, 10.0, 100.0});
    CHECK(cosine.passed);
    CHECK(cosine.values.back() == doctest::Approx(-std::log(2.0) / 100.0).epsilon(1e-9));

    const auto grow = mean_type_diagnostic([](cplx z) { return std::exp(-cplx{0.0, 1.0} * 2.0 * z); }, e2);
    CHECK_FALSE(grow.passed);
}

TEST_CASE("truncated Paley-Wiener kernel basis has unit zero spacing") {
    ExtremalProblem pr;
    pr.spec = HBSpec::paley_wiener(pi);
    pr.basis = BasisKind::kernel_nodes;
    for (int t = -8; t <= 8; ++t) pr.nodes.push_back(0.5 * t);
    pr.window = hormander::Window{-30.0, 30.0};
    pr.p = 2.0;
    pr.xi = 0.0;
    const auto sol = solve(pr);
    CHECK(sol.truncated);
    // truncating the norm to the window can only shrink it, so C may sit slightly above 1
    CHECK(sol.C_value == doctest::Approx(1.0).epsilon(1e-2));
    const auto rep = separation_report(sol, pr);
    CHECK(rep.delta == doctest::Approx(0.25));
    CHECK(rep.passed);
    CHECK(rep.diagnostic_passed);
    // zeros near the origin sit close to the sinc zeros at the nonzero integers
    for (double z : sol.zeros.zeros)
        if (std::abs(z) < 4.0) CHECK(std::abs(z - std::round(z)) < 0.05);
}

TEST_CASE("separation on polynomial optima") {
    sampling::Rng rng(8);
    const HBSpec spec = sampling::random_polynomial_spec(rng, 7);
    for (double p : {1.0, 1.5, 3.0}) {
        const auto problem = poly_problem(spec, p, 0.0);
        const auto sol = solve(problem);
        const auto rep = separation_report(sol, problem);
        CHECK(rep.passed);
        CHECK(rep.reference_constants.size() == rep.gaps.size());
        for (double c : rep.reference_constants) CHECK(c > 0.0);
    }
    const auto few = solve(poly_problem(power_spec(2), 2.0, 0.0));
    CHECK(separation_report(few, poly_problem(power_spec(2), 2.0, 0.0)).passed);
}

TEST_CASE("experimental p < 1 runs and is labelled") {
    const auto sol = solve(poly_problem(power_spec(4), 0.7, 0.0));
    CHECK(sol.experimental);
    CHECK(sol.C_value > 0.0);
    CHECK(sol.norm_check == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(solve(poly_problem(power_spec(4), 2.0, 0.0, 3)), InputError);
    CHECK_THROWS_AS(solve(poly_problem(power_spec(1), 2.0, 0.0)), InputError);
    CHECK_THROWS_AS(solve(poly_problem(power_spec(4), -1.0, 0.0)), InputError);
    ExtremalProblem pw;
    pw.spec = HBSpec::paley_wiener(pi);
    CHECK_THROWS_AS(solve(pw), InputError);
    pw.basis = BasisKind::kernel_nodes;
    pw.nodes = {0.0};
    CHECK_THROWS_AS(solve(pw), InputError);
}

TEST_CASE("coefficients in powers of x reproduce f") {
    sampling::Rng rng(2);
    const HBSpec spec = sampling::random_polynomial_spec(rng, 5);
    const auto sol = solve(poly_problem(spec, 1.5, 0.3));
    const Entire g = sol.f.to_entire();
    for (double x : {-4.0, -1.0, 0.0, 0.5, 2.5})
        CHECK(g(x) == doctest::Approx(sol.f(x)).epsilon(1e-10));
    CHECK(sol.C_value == doctest::Approx(sol.f(0.3) / std::abs(eval_E(spec, cplx{0.3, 0.0}))).epsilon(1e-12));
    CHECK(sol.C_value <= bounds::embedding_bound(1.5, phase_derivative_sup(spec).value));
}
