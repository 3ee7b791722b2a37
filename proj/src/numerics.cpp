#include "debranges/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace dbr::numerics {

namespace {

constexpr double pi = std::numbers::pi;

QuadratureRule compute_gauss_legendre(int n) {
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

// Panel edges of one segment: `m` uniform panels, first and last graded
// geometrically toward the segment ends.
void append_segment_edges(double a, double b, int m, int levels, double ratio,
                          std::vector<double>& edges) {
    m = std::max(m, 2);
    const double h = (b - a) / m;
    edges.push_back(a);
    for (int k = levels; k >= 1; --k) edges.push_back(a + h * std::pow(ratio, k));
    for (int j = 1; j < m; ++j) edges.push_back(a + j * h);
    for (int k = 1; k <= levels; ++k) edges.push_back(b - h * std::pow(ratio, k));
    // b itself is pushed by the next segment or by the caller
}

}  // namespace

QuadratureScheme QuadratureScheme::on_interval(double a, double b) {
    QuadratureScheme s;
    s.mapping = Mapping::compact_interval;
    s.lo = a;
    s.hi = b;
    return s;
}

QuadratureScheme QuadratureScheme::on_line(double center, double scale) {
    QuadratureScheme s;
    s.mapping = Mapping::arctangent_line;
    s.center = center;
    s.scale = scale;
    return s;
}

double QuadratureRule::apply(const RealFn& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
}

const QuadratureRule& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

QuadratureRule build_rule(const QuadratureScheme& scheme, std::span<const double> breakpoints) {
    if (scheme.panels < 1 || scheme.nodes_per_panel < 1)
        throw InputError("quadrature: panels and nodes_per_panel must be positive");
    const bool line = scheme.mapping == Mapping::arctangent_line;
    if (line && !(scheme.scale > 0.0)) throw InputError("quadrature: line scale must be positive");
    const double a = line ? -pi / 2 : scheme.lo;
    const double b = line ? pi / 2 : scheme.hi;
    if (!(b > a)) throw InputError("quadrature: empty interval");

    std::vector<double> cuts;
    for (double x : breakpoints) {
        if (!std::isfinite(x)) continue;
        const double t = line ? std::atan((x - scheme.center) / scheme.scale) : x;
        if (t > a && t < b) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    const double merge = 1e-13 * (b - a);
    std::vector<double> points{a};
    for (double t : cuts)
        if (t - points.back() > merge) points.push_back(t);
    if (b - points.back() <= merge) points.pop_back();
    points.push_back(b);

    std::vector<double> edges;
    for (std::size_t s = 0; s + 1 < points.size(); ++s) {
        const double len = points[s + 1] - points[s];
        const int m = static_cast<int>(std::ceil(scheme.panels * len / (b - a)));
        append_segment_edges(points[s], points[s + 1], m, scheme.grading_levels,
                             scheme.grading_ratio, edges);
    }
    edges.push_back(b);

    const QuadratureRule& gl = gauss_legendre(scheme.nodes_per_panel);
    QuadratureRule rule;
    rule.nodes.reserve((edges.size() - 1) * gl.size());
    rule.weights.reserve(rule.nodes.capacity());
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double mid = 0.5 * (edges[e] + edges[e + 1]);
        const double half = 0.5 * (edges[e + 1] - edges[e]);
        if (!(half > 0.0)) continue;
        for (std::size_t k = 0; k < gl.size(); ++k) {
            const double t = mid + half * gl.nodes[k];
            const double w = half * gl.weights[k];
            if (line) {
                const double c = std::cos(t);
                if (c == 0.0) continue;
                rule.nodes.push_back(scheme.center + scheme.scale * std::tan(t));
                rule.weights.push_back(w * scheme.scale / (c * c));
            } else {
                rule.nodes.push_back(t);
                rule.weights.push_back(w);
            }
        }
    }
    return rule;
}

IntegrationResult integrate(const RealFn& f, const QuadratureScheme& scheme,
                            std::span<const double> breakpoints) {
    auto estimate = [&](int panels, double& abs_value) {
        QuadratureScheme s = scheme;
        s.panels = panels;
        const QuadratureRule rule = build_rule(s, breakpoints);
        double sum = 0.0;
        abs_value = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double v = rule.weights[i] * f(rule.nodes[i]);
            sum += v;
            abs_value += std::abs(v);
        }
        return sum;
    };

    IntegrationResult result;
    int panels = scheme.panels;
    double abs_value = 0.0;
    double previous = estimate(panels, abs_value);
    for (int r = 1; r <= scheme.max_refinements; ++r) {
        panels *= 2;
        const double current = estimate(panels, abs_value);
        result.value = current;
        result.error = std::abs(current - previous);
        result.refinements = r;
        result.panels = panels;
        if (!std::isfinite(current)) break;
        if (result.error <= scheme.target_rel_error * std::max(abs_value, 1e-300)) {
            result.converged = true;
            return result;
        }
        previous = current;
    }
    return result;
}

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InputError("log_gamma: argument must be positive");
    double shift = 0.0;
    if (x < 15.0) {
        double product = 1.0;
        while (x < 15.0) {
            product *= x;
            x += 1.0;
        }
        shift = std::log(product);
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli terms B_{2k} / (2k (2k - 1) x^{2k-1})
    const double series =
        inv * (1.0 / 12.0 +
               inv2 * (-1.0 / 360.0 +
                       inv2 * (1.0 / 1260.0 +
                               inv2 * (-1.0 / 1680.0 +
                                       inv2 * (1.0 / 1188.0 +
                                               inv2 * (-691.0 / 360360.0 + inv2 * (1.0 / 156.0)))))));
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * pi) + series - shift;
}

double monotone_solve(const RealFn& g, double target, double lo, double hi, double tol,
                      const RealFn& dg) {
    if (!(hi >= lo)) throw BracketError("monotone_solve: lo > hi");
    const double glo = g(lo) - target;
    const double ghi = g(hi) - target;
    if (glo > 0.0 || ghi < 0.0)
        throw BracketError("monotone_solve: target not enclosed by g(lo), g(hi)");
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 400; ++it) {
        const double gx = g(x) - target;
        if (gx == 0.0) return x;
        if (gx < 0.0)
            lo = x;
        else
            hi = x;
        if (hi - lo <= tol) return 0.5 * (lo + hi);

        double next = std::numeric_limits<double>::quiet_NaN();
        if (dg) {
            const double d = dg(x);
            if (d > 0.0) next = x - gx / d;
        }
        if (next > lo && next < hi) {
            if (std::abs(next - x) <= 0.5 * tol) return next;
            x = next;
        } else {
            x = 0.5 * (lo + hi);
        }
    }
    return x;
}

double bisect_root(const RealFn& g, double lo, double hi, double tol) {
    double glo = g(lo);
    const double ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) == (ghi > 0.0)) throw BracketError("bisect_root: no sign change");
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Maximum golden_max(const RealFn& h, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double hc = h(c);
    double hd = h(d);
    for (int it = 0; it < 80 && (b - a) > tol; ++it) {
        if (hc >= hd) {
            b = d;
            d = c;
            hd = hc;
            c = b - invphi * (b - a);
            hc = h(c);
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + invphi * (b - a);
            hd = h(d);
        }
    }
    return hc >= hd ? Maximum{hc, c} : Maximum{hd, d};
}

Maximum sup_on_window(const RealFn& h, double lo, double hi, int coarse, double refine_tol) {
    if (coarse < 2) coarse = 2;
    const double step = (hi - lo) / coarse;
    Maximum best{h(lo), lo};
    int best_k = 0;
    for (int k = 1; k <= coarse; ++k) {
        const double x = lo + k * step;
        const double v = h(x);
        if (v > best.value || (v == best.value && std::abs(x) < std::abs(best.argmax))) {
            best = {v, x};
            best_k = k;
        }
    }
    const double a = lo + std::max(best_k - 1, 0) * step;
    const double b = lo + std::min(best_k + 1, coarse) * step;
    const Maximum refined = golden_max(h, a, b, refine_tol);
    return refined.value > best.value ? refined : best;
}

std::complex<double> contour_derivative(const ComplexFn& f, double x, int order, double radius,
                                        int points) {
    std::complex<double> sum = 0.0;
    for (int j = 0; j < points; ++j) {
        const double theta = 2.0 * pi * j / points;
        const std::complex<double> w = std::polar(1.0, theta);
        sum += f(x + radius * w) * std::polar(1.0, -order * theta);
    }
    double factorial = 1.0;
    for (int k = 2; k <= order; ++k) factorial *= k;
    return sum * (factorial / (points * std::pow(radius, order)));
}

}  // namespace dbr::numerics
