#include "debranges/hormander.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "debranges/errors.hpp"
#include "debranges/numerics.hpp"

namespace dbr::hormander {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double tie_rel = 1e-12;

struct Candidate {
    double x;
    double value;
};

// d/dx log|E(x)| on the real line
double log_modulus_slope(const HBSpec& spec, double x) {
    double s = 0.0;
    for (const cplx& zn : spec.zeros) {
        const double dx = x - zn.real();
        const double yn = -zn.imag();
        s += dx / (dx * dx + yn * yn);
    }
    return s;
}

// Local maxima of the objective on [lo, hi], refined by golden section and
// then polished to a root of (f / |E|)' so that the argmax is accurate to
// roundoff rather than to the square root of it.
std::vector<Candidate> scan_candidates(const Entire& f, const HBSpec& spec, double lo, double hi,
                                       ExtremumMode mode) {
    auto objective = [&](double x) {
        const double v = f(x) / std::abs(eval_E(spec, cplx{x, 0.0}));
        return mode == ExtremumMode::absolute ? std::abs(v) : v;
    };
    const double max_step = (hi - lo) / 256.0;
    std::vector<double> xs{lo};
    while (xs.back() < hi) {
        const double step = std::min(pi / (8.0 * phase_derivative(spec, xs.back())), max_step);
        xs.push_back(std::min(xs.back() + step, hi));
    }
    std::vector<double> vs(xs.size());
    double vmax = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < xs.size(); ++k) {
        vs[k] = objective(xs[k]);
        vmax = std::max(vmax, vs[k]);
    }
    const double keep = vmax > 0.0 ? 0.5 * vmax : vmax;

    auto stationarity = [&](double x) { return f.derivative(x) - f(x) * log_modulus_slope(spec, x); };

    std::vector<Candidate> out;
    const std::size_t n = xs.size();
    for (std::size_t k = 0; k < n; ++k) {
        const bool left_ok = k == 0 || vs[k] >= vs[k - 1];
        const bool right_ok = k + 1 == n || vs[k] >= vs[k + 1];
        if (!left_ok || !right_ok || vs[k] < keep) continue;
        const double a = xs[k == 0 ? 0 : k - 1];
        const double b = xs[k + 1 == n ? n - 1 : k + 1];
        Candidate best{xs[k], vs[k]};
        const numerics::Maximum g = numerics::golden_max(objective, a, b, 1e-14 * (1.0 + std::abs(xs[k])));
        if (g.value > best.value) best = {g.argmax, g.value};
        const double sa = stationarity(a);
        const double sb = stationarity(b);
        if ((sa > 0.0) != (sb > 0.0) && sa != 0.0 && sb != 0.0) {
            const double root = numerics::bisect_root(stationarity, a, b, 4.0 * eps * (1.0 + std::abs(best.x)));
            const double v = objective(root);
            if (v >= best.value - 4.0 * eps * std::abs(best.value)) best = {root, v};
        }
        out.push_back(best);
    }
    return out;
}

Extremum pick(std::vector<Candidate> cands, Window window) {
    if (cands.empty()) throw MathFailure("locate_extremum", "no candidate maximum found");
    double top = -std::numeric_limits<double>::infinity();
    for (const Candidate& c : cands) top = std::max(top, c.value);
    std::vector<Candidate> tied;
    for (const Candidate& c : cands)
        if (c.value >= top - tie_rel * std::abs(top)) tied.push_back(c);
    std::stable_sort(tied.begin(), tied.end(), [](const Candidate& a, const Candidate& b) {
        return std::abs(a.x) < std::abs(b.x);
    });
    Extremum e;
    e.xi = tied.front().x;
    e.norm = tied.front().value;
    e.window = window;
    for (const Candidate& c : tied) e.ties.push_back(c.x);
    return e;
}

void check_bracket_precondition(const HBSpec& spec, double alpha, double xi) {
    const PhaseProfile profile = PhaseProfile::anchored(spec);
    const double off = std::remainder(phase(profile, xi) - 2.0 * alpha, 2.0 * pi);
    if (std::abs(off) > 1e-6)
        throw InputError("bracket: phi(xi) is not congruent to 2 alpha modulo 2 pi");
}

std::pair<double, double> phase_bracket(const HBSpec& spec, double alpha, double xi, double jump) {
    check_bracket_precondition(spec, alpha, xi);
    const PhaseProfile profile = PhaseProfile::anchored(spec);
    const double level = phase(profile, xi);
    const double lo = solve_phase_level(profile, level - jump);
    const double hi = solve_phase_level(profile, level + jump);
    return {lo, hi};
}

// First tied argmax whose bracket exists, in order of increasing |x|.
template <class BracketFn>
std::pair<double, std::pair<double, double>> first_with_bracket(const HBSpec& spec,
                                                                const std::vector<double>& ties,
                                                                BracketFn bracket) {
    std::optional<BracketUnavailable> first_error;
    for (double xi : ties) {
        try {
            return {xi, bracket(spec, alpha_at(spec, xi), xi)};
        } catch (const BracketUnavailable& e) {
            if (!first_error) first_error = e;
        }
    }
    throw *first_error;
}

HormanderReport run_margin(const Entire& f, const HBSpec& spec, double tol, double xi,
                           std::pair<double, double> bracket, BracketKind kind) {
    const bool sign_free = kind == BracketKind::a_zeros;
    HormanderReport r;
    r.xi = xi;
    r.alpha = alpha_at(spec, xi);
    r.kind = kind;
    r.bracket_lo = bracket.first;
    r.bracket_hi = bracket.second;
    r.tol = tol;
    r.norm = std::abs(f(xi)) / std::abs(eval_E(spec, cplx{xi, 0.0}));

    auto raw = [&](double x) {
        const double fx = sign_free ? std::abs(f(x)) : f(x);
        return fx - r.norm * eval_AB(spec, r.alpha, x).first;
    };
    auto normalized = [&](double x) {
        return raw(x) / std::max(1.0, std::abs(eval_E(spec, cplx{x, 0.0})));
    };

    constexpr int nodes = 2048;
    const double width = r.bracket_hi - r.bracket_lo;
    r.profile.reserve(nodes);
    std::size_t worst = 0;
    double worst_value = std::numeric_limits<double>::infinity();
    for (int k = 0; k < nodes; ++k) {
        const double x = k == nodes - 1 ? r.bracket_hi : r.bracket_lo + width * k / (nodes - 1);
        const double m = raw(x);
        r.profile.push_back({x, m});
        const double mn = m / std::max(1.0, std::abs(eval_E(spec, cplx{x, 0.0})));
        if (mn < worst_value) {
            worst_value = mn;
            worst = static_cast<std::size_t>(k);
        }
    }
    r.min_margin = worst_value;
    r.argmin = r.profile[worst].x;
    const double a = r.profile[worst == 0 ? 0 : worst - 1].x;
    const double b = r.profile[std::min(worst + 1, r.profile.size() - 1)].x;
    if (b > a) {
        const numerics::Maximum g =
            numerics::golden_max([&](double x) { return -normalized(x); }, a, b, 1e-12 * width);
        if (-g.value < r.min_margin) {
            r.min_margin = -g.value;
            r.argmin = g.argmax;
        }
    }
    r.min_margin_raw = raw(r.argmin);
    r.equality_gap = std::abs(normalized(xi));
    r.passed = r.min_margin >= -tol && r.equality_gap <= tol;
    r.local = local_expansion_check(f, spec, xi, r.alpha, 1e-4 * width, tol);
    return r;
}

}  // namespace

double alpha_at(const HBSpec& spec, double xi) { return -std::arg(eval_E(spec, cplx{xi, 0.0})); }

Extremum locate_extremum(const Entire& f, const HBSpec& spec, std::optional<Window> window,
                         ExtremumMode mode) {
    spec.validate();
    certify(f, spec);
    if (window) {
        if (!(window->hi > window->lo) || !std::isfinite(window->lo) || !std::isfinite(window->hi))
            throw InputError("locate_extremum: window must be finite with lo < hi");
        return pick(scan_candidates(f, spec, window->lo, window->hi, mode), *window);
    }
    if (!spec.polynomial_type())
        throw InputError("locate_extremum: specs with exp_rate > 0 need an explicit window");

    double radius = 1.0;
    double ymax = 0.0;
    for (const cplx& zn : spec.zeros) {
        radius = std::max(radius, std::abs(zn.real()) + 1.0);
        ymax = std::max(ymax, -zn.imag());
    }
    for (double t : feature_points(f)) radius = std::max(radius, std::abs(t) + 1.0);
    radius += 2.0 * ymax;
    for (int doubling = 0; doubling < 16; ++doubling, radius *= 2.0) {
        Extremum e = pick(scan_candidates(f, spec, -radius, radius, mode), {-radius, radius});
        // a maximum sitting on the window edge is not interior; keep growing
        if (std::abs(e.xi) >= radius * (1.0 - 1e-12)) continue;
        const double tail = tail_bound(f, spec, radius);
        if (e.norm > 0.0 && tail <= e.norm * (1.0 + tie_rel)) return e;
    }
    throw MathFailure("max at infinity",
                      "the tail bound of f/E never drops below the interior maximum");
}

std::pair<double, double> bracket_B_zeros(const HBSpec& spec, double alpha, double xi) {
    return phase_bracket(spec, alpha, xi, 2.0 * pi);
}

std::pair<double, double> bracket_A_zeros(const HBSpec& spec, double alpha, double xi) {
    return phase_bracket(spec, alpha, xi, pi);
}

LocalExpansion local_expansion_check(const Entire& f, const HBSpec& spec, double xi, double alpha,
                                     double step, double tol) {
    if (!(step > 0.0)) throw InputError("local_expansion_check: step must be positive");
    const double S = std::abs(eval_E(spec, cplx{xi, 0.0}));
    const double c = f(xi) / S;
    if (c == 0.0) throw InputError("local_expansion_check: f vanishes at xi");
    auto omega = [&](double x) { return f(x) / c - eval_AB(spec, alpha, x).first; };
    auto gamma = [&](double x) { return -eval_AB(spec, alpha, x).second; };
    const double h = step;

    LocalExpansion le;
    const double om2 = omega(xi - 2 * h), om1 = omega(xi - h), o0 = omega(xi);
    const double op1 = omega(xi + h), op2 = omega(xi + 2 * h);
    le.omega = o0;
    le.d_omega = (om2 - 8 * om1 + 8 * op1 - op2) / (12 * h);
    le.dd_omega = (-om2 + 16 * om1 - 30 * o0 + 16 * op1 - op2) / (12 * h * h);
    le.d_gamma = (gamma(xi - 2 * h) - 8 * gamma(xi - h) + 8 * gamma(xi + h) - gamma(xi + 2 * h)) / (12 * h);

    const double thr0 = tol * S + 64 * eps * S;
    const double thr1 = tol * S + 64 * eps * S / h;
    const double thr2 = tol * S + 64 * eps * S / (h * h);
    le.omega_zero = std::abs(le.omega) <= thr0;
    le.d_omega_zero = std::abs(le.d_omega) <= thr1;
    le.dd_omega_nonnegative = le.dd_omega >= -thr2;
    le.d_gamma_positive = le.d_gamma > 0.0;

    double omega_max = 0.0;
    double scale_max = 0.0;
    for (int k = -32; k <= 32; ++k) {
        const double x = xi + k * (5000.0 * h / 32.0);
        omega_max = std::max(omega_max, std::abs(omega(x)));
        scale_max = std::max({scale_max, std::abs(f(x) / c), std::abs(eval_AB(spec, alpha, x).first)});
    }
    le.degenerate = omega_max <= 1e-10 * scale_max;
    le.strict_positive = le.degenerate || le.dd_omega > thr2;
    le.passed = le.omega_zero && le.d_omega_zero && le.dd_omega_nonnegative && le.d_gamma_positive &&
                le.strict_positive;
    return le;
}

HormanderReport verify_theorem1(const Entire& f, const HBSpec& spec, double tol,
                                std::optional<Window> window) {
    const Extremum abs_max = locate_extremum(f, spec, window, ExtremumMode::absolute);
    if (!(abs_max.norm > 0.0)) throw InputError("verify_theorem1: f vanishes on the window");
    const Extremum pos_max = locate_extremum(f, spec, abs_max.window, ExtremumMode::positive);
    if (pos_max.norm < abs_max.norm * (1.0 - tie_rel))
        throw MathFailure("wrong sign at xi",
                          "sup |f/E| is attained only where f < 0; use the sign-free form");
    std::vector<double> ties;
    for (double x : pos_max.ties) {
        const double v = f(x) / std::abs(eval_E(spec, cplx{x, 0.0}));
        if (v >= abs_max.norm * (1.0 - tie_rel)) ties.push_back(x);
    }
    if (ties.empty()) ties.push_back(pos_max.xi);
    const auto [xi, bracket] = first_with_bracket(spec, ties, bracket_B_zeros);
    return run_margin(f, spec, tol, xi, bracket, BracketKind::b_zeros);
}

HormanderReport verify_sign_free(const Entire& f, const HBSpec& spec, double tol,
                                 std::optional<Window> window) {
    const Extremum abs_max = locate_extremum(f, spec, window, ExtremumMode::absolute);
    if (!(abs_max.norm > 0.0)) throw InputError("verify_sign_free: f vanishes on the window");
    const auto [xi, bracket] = first_with_bracket(spec, abs_max.ties, bracket_A_zeros);
    return run_margin(f, spec, tol, xi, bracket, BracketKind::a_zeros);
}

void write_margin_csv(const HormanderReport& report, std::ostream& out) {
    out << "x,margin\n";
    char line[80];
    for (const MarginSample& s : report.profile) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", s.x, s.margin);
        out << line;
    }
}

}  // namespace dbr::hormander
