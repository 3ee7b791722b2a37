#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "debranges/errors.hpp"

namespace dbr::numerics {

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(std::complex<double>)>;

enum class Mapping { compact_interval, arctangent_line };

/// Composite Gauss-Legendre scheme.
///
/// On the whole line the substitution x = center + scale * tan(theta) is
/// used. Panels are geometrically graded toward every breakpoint and toward
/// the ends of the (mapped) domain, so integrands with algebraic endpoint
/// behaviour such as |x - x0|^p keep spectral accuracy.
struct QuadratureScheme {
    int panels = 16;
    int nodes_per_panel = 32;
    Mapping mapping = Mapping::compact_interval;
    double target_rel_error = 1e-12;
    double lo = -1.0;  // compact-interval only
    double hi = 1.0;
    double center = 0.0;  // arctangent-line only
    double scale = 1.0;
    int grading_levels = 12;
    double grading_ratio = 0.15;
    int max_refinements = 12;

    static QuadratureScheme on_interval(double a, double b);
    static QuadratureScheme on_line(double center = 0.0, double scale = 1.0);
};

/// Nodes and weights in the original variable (Jacobian folded into the weights).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    double apply(const RealFn& f) const;
};

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
    int refinements = 0;
    int panels = 0;
};

/// Gauss-Legendre nodes/weights on [-1, 1]; cached per order.
const QuadratureRule& gauss_legendre(int n);

/// Rule with `panels` uniform base panels; breakpoints outside the domain are ignored.
QuadratureRule build_rule(const QuadratureScheme& scheme, std::span<const double> breakpoints = {});

/// Integrates with panel doubling until two successive estimates agree to the
/// target relative error. The error estimate is the last doubling difference.
IntegrationResult integrate(const RealFn& f, const QuadratureScheme& scheme,
                            std::span<const double> breakpoints = {});

/// log Gamma(x) for x > 0 (upward recurrence to x >= 15, then Stirling series).
double log_gamma(double x);

/// Solves g(x) = target for strictly increasing g on [lo, hi]; returns x with
/// |x - root| <= tol. Newton steps are taken when `dg` is given and they stay
/// inside the current bracket, otherwise the bracket is bisected.
double monotone_solve(const RealFn& g, double target, double lo, double hi, double tol,
                      const RealFn& dg = {});

/// Root of a continuous g with g(lo) and g(hi) of opposite sign (bisection).
double bisect_root(const RealFn& g, double lo, double hi, double tol);

struct Maximum {
    double value;
    double argmax;
};

/// Golden-section search for a maximum of a unimodal h on [a, b]; at most 80 iterations.
Maximum golden_max(const RealFn& h, double a, double b, double tol);

/// Coarse scan on `coarse + 1` equispaced nodes followed by golden-section
/// refinement around the best node. Accuracy is limited by the scan density.
Maximum sup_on_window(const RealFn& h, double lo, double hi, int coarse, double refine_tol);

/// k-th derivative of an entire function at a real point from the trapezoid
/// rule on the circle |z - x| = radius (Cauchy integral formula).
std::complex<double> contour_derivative(const ComplexFn& f, double x, int order,
                                        double radius = 1e-2, int points = 32);

}  // namespace dbr::numerics
