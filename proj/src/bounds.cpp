#include "debranges/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "debranges/errors.hpp"
#include "debranges/numerics.hpp"

namespace dbr::bounds {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

void require_positive_p(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InputError("p must be a positive finite number");
}

// atan(w)/w, continuous at 0
double atan_ratio(double w) {
    if (std::abs(w) < 1e-5) return 1.0 - w * w / 3.0 + w * w * w * w / 5.0;
    return std::atan(w) / w;
}

double sin_ratio(double t) {
    if (std::abs(t) < 1e-5) return 1.0 - t * t / 6.0 + t * t * t * t / 120.0;
    return std::sin(t) / t;
}

// (phi(x) - phi(xi)) / (x - xi) without cancellation
double phase_slope(const HBSpec& spec, double xi, double x) {
    const double dx = x - xi;
    double slope = 2.0 * spec.exp_rate;
    for (const cplx& zn : spec.zeros) {
        const double yn = -zn.imag();
        const double u = (x - zn.real()) / yn;
        const double v = (xi - zn.real()) / yn;
        const double denom = 1.0 + u * v;
        if (denom > 0.0) {
            // atan u - atan v = atan((u - v) / (1 + uv)), u - v = dx / yn
            const double w = dx / (yn * denom);
            slope += 2.0 * atan_ratio(w) / (yn * denom);
        } else {
            slope += 2.0 * (std::atan(u) - std::atan(v)) / dx;
        }
    }
    return slope;
}

}  // namespace

double K_p_closed(double p) {
    require_positive_p(p);
    const double log_kp = 0.5 * std::log(pi) + numerics::log_gamma(0.5 * (p + 1.0)) -
                          numerics::log_gamma(0.5 * (p + 2.0));
    return std::exp(log_kp / p);
}

double K_p_quadrature(double p) {
    require_positive_p(p);
    auto scheme = numerics::QuadratureScheme::on_interval(-pi / 2, pi / 2);
    scheme.target_rel_error = 1e-14;
    const auto result =
        numerics::integrate([p](double x) { return std::pow(std::abs(std::cos(x)), p); }, scheme);
    if (!result.converged) throw ConvergenceError("K_p_quadrature did not converge");
    return std::pow(result.value, 1.0 / p);
}

double embedding_bound(double p, double phase_sup) {
    require_positive_p(p);
    if (!(phase_sup > 0.0)) throw InputError("phase_sup must be positive");
    return std::pow(phase_sup / 2.0, 1.0 / p) / K_p_closed(p);
}

double nonasymptotic_bound_pth_power(double p, double phase_sup) {
    require_positive_p(p);
    if (!(phase_sup > 0.0)) throw InputError("phase_sup must be positive");
    return phase_sup * 0.5 * std::sqrt((p + 1.0) / (2.0 * pi));
}

double asymptotic_check(double p) {
    require_positive_p(p);
    const double log_inv_kpp = numerics::log_gamma(0.5 * (p + 2.0)) -
                               numerics::log_gamma(0.5 * (p + 1.0)) - 0.5 * std::log(pi);
    return std::exp(log_inv_kpp - 0.5 * std::log(p / (2.0 * pi)));
}

BoundReport bound_report(double p, double phase_sup) {
    BoundReport r;
    r.p = p;
    r.phase_sup = phase_sup;
    r.K_p = K_p_closed(p);
    r.C_bound = embedding_bound(p, phase_sup);
    r.C_bound_nonasymptotic_pth_power = nonasymptotic_bound_pth_power(p, phase_sup);
    r.asymptotic_ratio = asymptotic_check(p);
    r.wendel_chain_holds =
        std::pow(r.C_bound, p) <= r.C_bound_nonasymptotic_pth_power * (1.0 + 1e-12);
    return r;
}

IntervalEnergy interval_energy(const HBSpec& spec, double alpha, double p, double a_l, double a_r) {
    require_positive_p(p);
    if (!(a_r > a_l)) throw InputError("interval_energy: need a_l < a_r");
    const PhaseProfile profile = PhaseProfile::anchored(spec);
    const double phi_l = phase(profile, a_l);
    const double phi_r = phase(profile, a_r);
    const double level = 2.0 * alpha + pi;
    const double off = std::remainder(phi_l - level, 2.0 * pi);
    if (std::abs(off) > 1e-7 || std::abs(phi_r - phi_l - 2.0 * pi) > 1e-7)
        throw InputError("interval_energy: endpoints are not consecutive zeros of A_alpha");

    const double sup = phase_derivative_sup(spec).value;
    auto scheme = numerics::QuadratureScheme::on_interval(a_l, a_r);
    scheme.target_rel_error = 1e-13;
    auto direct = [&](double x) {
        const auto [a, b] = eval_AB(spec, alpha, x);
        return std::pow(std::abs(a) / std::hypot(a, b), p);
    };
    auto via_phase = [&](double x) {
        return std::pow(2.0, -p / 2) *
               std::pow(std::abs(1.0 + std::cos(phase(profile, x) - 2.0 * alpha)), p / 2);
    };
    const auto r1 = numerics::integrate(direct, scheme);
    const auto r2 = numerics::integrate(via_phase, scheme);
    if (!r1.converged || !r2.converged)
        throw ConvergenceError("interval_energy: quadrature did not converge");

    IntervalEnergy out;
    out.value = r1.value;
    out.via_phase = r2.value;
    out.lower_bound = 2.0 * std::pow(K_p_closed(p), p) / sup;
    out.bound_holds = out.value >= out.lower_bound * (1.0 - 1e-12);
    return out;
}

double kernel_diagonal(const HBSpec& spec, double xi) {
    const cplx e = eval_E(spec, cplx{xi, 0.0});
    const cplx de = e * log_derivative(spec, cplx{xi, 0.0});
    return std::imag(std::conj(de) * e) / pi;
}

cplx kernel_eval(const HBSpec& spec, double xi, cplx z) {
    const cplx exi = eval_E(spec, cplx{xi, 0.0});
    if (z.imag() == 0.0) {
        const double x = z.real();
        if (x == xi) return kernel_diagonal(spec, xi);
        const double slope = phase_slope(spec, xi, x);
        const double half_delta = 0.5 * slope * (x - xi);
        return std::abs(eval_E(spec, z)) * std::abs(exi) * slope / (2.0 * pi) *
               sin_ratio(half_delta);
    }
    const cplx dz = z - xi;
    if (std::abs(dz) < 1e-6 * (1.0 + std::abs(xi))) {
        // second-order expansion about the diagonal
        const cplx L = log_derivative(spec, cplx{xi, 0.0});
        cplx dL = 0.0;
        for (const cplx& zn : spec.zeros) dL -= 1.0 / ((xi - zn) * (xi - zn));
        const cplx e1 = exi * L;
        const cplx e2 = exi * (L * L + dL);
        const double n1 = std::imag(e1 * std::conj(exi));
        const double n2 = std::imag(e2 * std::conj(exi));
        return (-n1 - 0.5 * n2 * dz) / pi;
    }
    const cplx numerator =
        eval_E(spec, z) * std::conj(exi) - eval_E_sharp(spec, z) * std::conj(eval_E_sharp(spec, cplx{xi, 0.0}));
    return numerator / (2.0 * pi * I * (xi - z));
}

double C2_exact(const HBSpec& spec, double xi) {
    return std::sqrt(phase_derivative(spec, xi) / (2.0 * pi));
}

C2Sup C2_sup(const HBSpec& spec) {
    const PhaseSup sup = phase_derivative_sup(spec);
    C2Sup out;
    out.value = std::sqrt(sup.value / (2.0 * pi));
    out.attained = !sup.at_infinity();
    out.argmax = sup.argmax.value_or(0.0);
    return out;
}

double C2_from_kernel_norm(const HBSpec& spec, double xi) {
    if (!spec.polynomial_type())
        throw InputError("C2_from_kernel_norm: needs a polynomial-type spec (decaying K/E)");
    double center = 0.0;
    double spread = 1.0;
    for (const cplx& zn : spec.zeros) center += zn.real();
    center /= static_cast<double>(spec.zeros.size());
    for (const cplx& zn : spec.zeros) spread = std::max(spread, std::abs(zn - center));
    auto scheme = numerics::QuadratureScheme::on_line(center, spread);
    scheme.target_rel_error = 1e-13;
    const std::array<double, 1> cut{xi};
    const auto result = numerics::integrate(
        [&](double x) {
            const double k = kernel_eval(spec, xi, cplx{x, 0.0}).real();
            const double e = std::abs(eval_E(spec, cplx{x, 0.0}));
            return (k / e) * (k / e);
        },
        scheme, cut);
    if (!result.converged) throw ConvergenceError("C2_from_kernel_norm: quadrature did not converge");
    return kernel_eval(spec, xi, cplx{xi, 0.0}).real() /
           (std::abs(eval_E(spec, cplx{xi, 0.0})) * std::sqrt(result.value));
}

}  // namespace dbr::bounds
