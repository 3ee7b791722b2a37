#include "debranges/hb_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "debranges/errors.hpp"

namespace dbr {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

double principal_arg(cplx w) {
    double a = std::arg(w);
    if (a <= -pi) a += 2.0 * pi;
    return a;
}

}  // namespace

void HBSpec::validate() const {
    if (!(exp_rate >= 0.0) || !std::isfinite(exp_rate))
        throw InputError("HBSpec: exp_rate must be finite and >= 0");
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw InputError("HBSpec: scale must be finite and > 0");
    if (!std::isfinite(rotation)) throw InputError("HBSpec: rotation must be finite");
    for (const cplx& z : zeros) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InputError("HBSpec: zeros must be finite");
        if (!(z.imag() < 0.0))
            throw InputError("HBSpec: every zero needs strictly negative imaginary part");
    }
    if (exp_rate == 0.0 && zeros.empty())
        throw InputError("HBSpec: constant E (exp_rate 0, no zeros) has a flat phase");
}

HBSpec HBSpec::paley_wiener(double sigma) {
    HBSpec spec;
    spec.exp_rate = sigma;
    spec.validate();
    return spec;
}

HBSpec HBSpec::from_zeros(std::vector<cplx> zeros, double rotation, double scale) {
    HBSpec spec;
    spec.zeros = std::move(zeros);
    spec.rotation = rotation;
    spec.scale = scale;
    spec.validate();
    return spec;
}

cplx eval_E(const HBSpec& spec, cplx z) {
    if (spec.zeros.size() <= kDirectProductLimit) {
        cplx value = spec.scale * std::polar(1.0, spec.rotation) * std::exp(-I * spec.exp_rate * z);
        for (const cplx& zn : spec.zeros) value *= (z - zn);
        return value;
    }
    double log_mag = std::log(spec.scale) + spec.exp_rate * z.imag();
    double angle = spec.rotation - spec.exp_rate * z.real();
    for (const cplx& zn : spec.zeros) {
        const cplx d = z - zn;
        log_mag += std::log(std::abs(d));
        angle += std::arg(d);
    }
    return std::polar(std::exp(log_mag), angle);
}

cplx eval_E_sharp(const HBSpec& spec, cplx z) { return std::conj(eval_E(spec, std::conj(z))); }

cplx log_derivative(const HBSpec& spec, cplx z) {
    cplx sum = -I * spec.exp_rate;
    for (const cplx& zn : spec.zeros) sum += 1.0 / (z - zn);
    return sum;
}

std::pair<double, double> eval_AB(const HBSpec& spec, double beta, double x) {
    const cplx w = std::polar(1.0, beta) * eval_E(spec, cplx{x, 0.0});
    return {w.real(), w.imag()};
}

cplx eval_A(const HBSpec& spec, double beta, cplx z) {
    return 0.5 * (std::polar(1.0, beta) * eval_E(spec, z) +
                  std::polar(1.0, -beta) * eval_E_sharp(spec, z));
}

cplx eval_B(const HBSpec& spec, double beta, cplx z) {
    return (std::polar(1.0, beta) * eval_E(spec, z) -
            std::polar(1.0, -beta) * eval_E_sharp(spec, z)) /
           (2.0 * I);
}

cplx theta(const HBSpec& spec, cplx z) {
    cplx value = std::polar(1.0, -2.0 * spec.rotation) * std::exp(2.0 * I * spec.exp_rate * z);
    for (const cplx& zn : spec.zeros) value *= (z - std::conj(zn)) / (z - zn);
    return value;
}

PhaseProfile PhaseProfile::anchored(HBSpec spec, double anchor_point) {
    spec.validate();
    PhaseProfile profile;
    profile.anchor_value = principal_arg(theta(spec, cplx{anchor_point, 0.0}));
    profile.anchor_point = anchor_point;
    profile.spec = std::move(spec);
    return profile;
}

double phase(const PhaseProfile& profile, double x) {
    const HBSpec& spec = profile.spec;
    const double x0 = profile.anchor_point;
    double value = profile.anchor_value + 2.0 * spec.exp_rate * (x - x0);
    for (const cplx& zn : spec.zeros) {
        const double xn = zn.real();
        const double yn = -zn.imag();
        value += 2.0 * (std::atan((x - xn) / yn) - std::atan((x0 - xn) / yn));
    }
    return value;
}

double phase_derivative(const HBSpec& spec, double x) {
    double value = 2.0 * spec.exp_rate;
    for (const cplx& zn : spec.zeros) {
        const double dx = x - zn.real();
        const double yn = -zn.imag();
        value += 2.0 * yn / (dx * dx + yn * yn);
    }
    return value;
}

std::pair<double, double> phase_limits(const PhaseProfile& profile) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (profile.spec.exp_rate > 0.0) return {-inf, inf};
    double left = profile.anchor_value;
    double right = profile.anchor_value;
    for (const cplx& zn : profile.spec.zeros) {
        const double a = std::atan((profile.anchor_point - zn.real()) / -zn.imag());
        left += 2.0 * (-pi / 2 - a);
        right += 2.0 * (pi / 2 - a);
    }
    return {left, right};
}

PhaseSup phase_derivative_sup(const HBSpec& spec) {
    if (spec.zeros.empty()) return {2.0 * spec.exp_rate, std::nullopt};
    auto dphi = [&spec](double x) { return phase_derivative(spec, x); };

    numerics::Maximum best{-1.0, 0.0};
    auto consider = [&best](const numerics::Maximum& m) {
        if (m.value > best.value ||
            (m.value == best.value && std::abs(m.argmax) < std::abs(best.argmax)))
            best = m;
    };
    double x_min = spec.zeros.front().real();
    double x_max = x_min;
    double y_min = -spec.zeros.front().imag();
    double y_max = y_min;
    for (const cplx& zn : spec.zeros) {
        const double xn = zn.real();
        const double yn = -zn.imag();
        x_min = std::min(x_min, xn);
        x_max = std::max(x_max, xn);
        y_min = std::min(y_min, yn);
        y_max = std::max(y_max, yn);
        consider(numerics::sup_on_window(dphi, xn - 3.0 * yn, xn + 3.0 * yn, 64,
                                         1e-13 * (1.0 + std::abs(xn))));
    }
    // sums of bumps can peak between centres; a global pass catches that
    const double lo = x_min - 3.0 * y_max;
    const double hi = x_max + 3.0 * y_max;
    const int coarse = static_cast<int>(std::clamp((hi - lo) / (0.25 * y_min), 64.0, 200000.0));
    consider(numerics::sup_on_window(dphi, lo, hi, coarse, 1e-13 * (1.0 + std::abs(hi))));
    return {best.value, best.argmax};
}

double solve_phase_level(const PhaseProfile& profile, double level, double tol) {
    const auto [left, right] = phase_limits(profile);
    if (!(level > left && level < right))
        throw BracketUnavailable("phase level " + std::to_string(level) +
                                 " outside the phase range");
    auto g = [&profile](double x) { return phase(profile, x); };
    auto dg = [&profile](double x) { return phase_derivative(profile.spec, x); };
    const double x0 = profile.anchor_point;
    double lo = x0 - 1.0;
    double hi = x0 + 1.0;
    double width = 1.0;
    while (g(lo) > level) {
        width *= 2.0;
        lo = x0 - width;
        if (width > 1e250) throw BracketUnavailable("phase level not reached on the left");
    }
    width = 1.0;
    while (g(hi) < level) {
        width *= 2.0;
        hi = x0 + width;
        if (width > 1e250) throw BracketUnavailable("phase level not reached on the right");
    }
    const double abs_tol = tol * std::max({1.0, std::abs(lo), std::abs(hi)});
    return numerics::monotone_solve(g, level, lo, hi, abs_tol, dg);
}

std::vector<double> level_crossings(const PhaseProfile& profile, double target, double lo,
                                    double hi) {
    if (!(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw InputError("level_crossings: window must be finite with lo <= hi");
    auto g = [&profile](double x) { return phase(profile, x); };
    auto dg = [&profile](double x) { return phase_derivative(profile.spec, x); };
    const double phi_lo = g(lo);
    const double phi_hi = g(hi);
    const double k_min = std::ceil((phi_lo - target) / (2.0 * pi));
    const double k_max = std::floor((phi_hi - target) / (2.0 * pi));
    std::vector<double> roots;
    const double tol = 1e-15 * std::max({1.0, std::abs(lo), std::abs(hi)});
    double left = lo;
    for (double k = k_min; k <= k_max; k += 1.0) {
        const double level = target + 2.0 * pi * k;
        if (level < phi_lo || level > phi_hi) continue;
        const double x = numerics::monotone_solve(g, level, left, hi, tol, dg);
        roots.push_back(x);
        left = x;
    }
    return roots;
}

HBBarReport hb_bar_check(const numerics::ComplexFn& g, const numerics::ComplexFn& g_sharp,
                         std::span<const cplx> grid, double tol, double zero_tol) {
    HBBarReport report;
    for (const cplx& z : grid) {
        if (!(z.imag() > 0.0)) throw InputError("hb_bar_check: grid point not in upper half-plane");
        const double top = std::abs(g_sharp(z));
        const double bottom = std::abs(g(z));
        if (bottom <= zero_tol) {
            report.skipped.push_back(z);
            continue;
        }
        const double ratio = top / bottom;
        ++report.checked;
        report.worst_ratio = std::max(report.worst_ratio, ratio);
        if (ratio > 1.0 + tol) report.passed = false;
    }
    return report;
}

std::vector<cplx> upper_half_plane_grid(double x_lo, double x_hi, double y_lo, double y_hi, int nx,
                                        int ny) {
    if (!(y_lo > 0.0) || nx < 1 || ny < 1) throw InputError("grid must lie in the upper half-plane");
    std::vector<cplx> grid;
    grid.reserve(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i) {
        const double x = nx == 1 ? x_lo : x_lo + (x_hi - x_lo) * i / (nx - 1);
        for (int j = 0; j < ny; ++j) {
            const double y = ny == 1 ? y_lo : y_lo + (y_hi - y_lo) * j / (ny - 1);
            grid.emplace_back(x, y);
        }
    }
    return grid;
}

}  // namespace dbr
