#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "debranges/entire.hpp"
#include "debranges/hb_core.hpp"
#include "debranges/hormander.hpp"

namespace dbr::extremal {

enum class BasisKind {
    polynomial,    // real polynomials of degree <= degree (polynomial-type spec)
    kernel_nodes,  // span of K_t, t in nodes, norm truncated to a window
};

/// Point-evaluation extremal problem: maximise f(xi) / |E(xi)| over
/// ||f/E||_p = 1 within the chosen finite-dimensional subspace.
struct ExtremalProblem {
    double p = 2.0;
    HBSpec spec;
    double xi = 0.0;
    BasisKind basis = BasisKind::polynomial;
    int degree = -1;                       // polynomial degree cap; -1 selects deg(E) - 2
    std::vector<double> nodes;             // kernel nodes
    std::optional<hormander::Window> window;  // norm window (required for kernel nodes)
    int panels = 32;                       // base quadrature panels
    double kkt_tol = 0.0;                  // 0 selects 1e-8 (p > 1) or 1e-6 (p <= 1)
    bool random_start = false;
    std::uint64_t seed = 0;
    int max_iterations = 100;              // Newton iterations per smoothing stage

    /// Throws InputError for an ill-posed problem.
    void validate() const;
    int effective_degree() const;
    std::size_t dimension() const;
    double effective_kkt_tol() const;
    bool experimental() const { return p < 1.0; }
};

/// Member of the solution subspace.
struct ExtremalFunction {
    BasisKind kind = BasisKind::polynomial;
    // polynomial: f(x) = sum_k u_coefficients[k] ((x - center) / scale)^k
    double center = 0.0;
    double scale = 1.0;
    std::vector<double> u_coefficients;
    // kernel nodes: f = sum_j weights[j] K_{nodes[j]}
    HBSpec spec;
    std::vector<double> nodes;
    std::vector<double> weights;

    double operator()(double x) const;
    cplx operator()(cplx z) const;
    /// Ascending coefficients in powers of x (polynomial kind) or kernel weights.
    std::vector<double> coefficients() const;
    Entire to_entire() const;
};

struct ZeroSet {
    std::vector<double> zeros;  // ascending real parts
    double max_imag = 0.0;      // largest |Im| among the roots (polynomial kind)
    double min_gap = 0.0;       // +inf with fewer than two zeros
    double min_derivative = 0.0;  // min |f'| over the zeros, relative to max |f| on them
    bool real = true;             // max_imag <= 1e-8 * scale
    bool simple = true;
};

struct ExtremalSolution {
    ExtremalFunction f;                // normalised: ||f/E||_p = 1
    std::vector<double> coefficients;  // f.coefficients()
    double C_value = 0.0;              // f(xi) / |E(xi)|
    double min_norm = 0.0;             // min ||g/E||_p over g(xi) = |E(xi)|
    double norm_check = 0.0;           // ||f/E||_p by adaptive quadrature
    double quadrature_error = 0.0;     // relative, of the norm integral
    ZeroSet zeros;
    double kkt_residual = 0.0;         // ||Z^T grad|| / ||grad||
    std::vector<std::pair<double, double>> residual_pairs;
    std::vector<double> orthogonality_residuals;
    double min_zero_gap = 0.0;
    int iterations = 0;
    bool converged = false;
    bool truncated = false;
    bool experimental = false;
};

/// Minimises ||f/E||_p on the affine slice f(xi) = |E(xi)| by damped Newton,
/// then rescales to unit norm. p = 1 (and the experimental p < 1) use the
/// smoothing sqrt(g^2 + eps^2 s^2) with eps continuation.
/// Throws ConvergenceError when the KKT tolerance is not met.
ExtremalSolution solve(const ExtremalProblem& problem);

/// Real coefficients of (e^{-i sigma/2} f + e^{i sigma/2} f#) / 2.
std::vector<double> symmetrize_real(const std::vector<cplx>& coefficients, double sigma);

/// int (x-xi)^2 |f|^p / ((x-l_a)(x-l_b)|E|^p) normalised by the same integral
/// with |x-l_a||x-l_b|. With l_a == l_b the single-zero form is evaluated.
double orthogonality_residual(const ExtremalFunction& f, const ExtremalProblem& problem, double la,
                              double lb);

/// Roots by companion-matrix eigenvalues (polynomial) or sign changes on the
/// window (kernel nodes).
ZeroSet extract_zeros(const ExtremalFunction& f, const ExtremalProblem& problem);

struct SeparationReport {
    double min_gap = 0.0;
    double delta = 0.0;         // pi / (2 sup phi')
    double a_gap = 0.0;         // 2 pi / sup phi'
    double diagnostic_c = 0.25;
    std::vector<double> gaps;
    std::vector<double> reference_constants;  // per gap
    bool passed = false;             // min_gap > 0 (vacuous with < 2 zeros)
    bool diagnostic_passed = false;  // min_gap >= diagnostic_c * delta
};

SeparationReport separation_report(const ExtremalSolution& solution, const ExtremalProblem& problem);

struct MeanTypeReport {
    std::vector<double> y;
    std::vector<double> values;  // log|f(iy)/E(iy)| / y
    double max_value = 0.0;
    bool passed = false;  // max <= 1e-6 and |value| decreasing in y
};

/// max over y of log|f(iy) / E(iy)| / y; f is any entire function.
MeanTypeReport mean_type_diagnostic(const numerics::ComplexFn& f, const HBSpec& spec,
                                    const std::vector<double>& y = {10.0, 100.0, 1000.0});

}  // namespace dbr::extremal
