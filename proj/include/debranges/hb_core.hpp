#pragma once

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "debranges/numerics.hpp"

namespace dbr {

using cplx = std::complex<double>;

/// Hermite-Biehler function in product form
///   E(z) = scale * e^{i rotation} * e^{-i exp_rate z} * prod_n (z - z_n)
/// with every z_n strictly in the lower half-plane.
struct HBSpec {
    double exp_rate = 0.0;
    std::vector<cplx> zeros;
    double rotation = 0.0;
    double scale = 1.0;

    /// Throws InputError when an invariant is violated.
    void validate() const;
    std::size_t degree() const { return zeros.size(); }
    bool polynomial_type() const { return exp_rate == 0.0; }

    /// S_sigma(z) = e^{-i sigma z}.
    static HBSpec paley_wiener(double sigma);
    static HBSpec from_zeros(std::vector<cplx> zeros, double rotation = 0.0, double scale = 1.0);
};

/// Zero-count threshold above which products are accumulated in log form.
inline constexpr std::size_t kDirectProductLimit = 64;

cplx eval_E(const HBSpec& spec, cplx z);
/// E#(z) = conj(E(conj z)).
cplx eval_E_sharp(const HBSpec& spec, cplx z);
inline cplx eval_E(const HBSpec& spec, cplx z, bool sharp) {
    return sharp ? eval_E_sharp(spec, z) : eval_E(spec, z);
}
/// E'(z)/E(z) = -i exp_rate + sum 1/(z - z_n).
cplx log_derivative(const HBSpec& spec, cplx z);

/// (A_beta(x), B_beta(x)) = (Re, Im) of e^{i beta} E(x).
std::pair<double, double> eval_AB(const HBSpec& spec, double beta, double x);
/// A_beta and B_beta continued to complex z: (e^{ib}E + e^{-ib}E#)/2 and (e^{ib}E - e^{-ib}E#)/(2i).
cplx eval_A(const HBSpec& spec, double beta, cplx z);
cplx eval_B(const HBSpec& spec, double beta, cplx z);

/// Theta_E = E#/E.
cplx theta(const HBSpec& spec, cplx z);

/// Anchored continuous branch of arg Theta_E on the real line.
struct PhaseProfile {
    HBSpec spec;
    double anchor_point = 0.0;
    double anchor_value = 0.0;

    /// anchor_value = principal argument of Theta_E(anchor_point), in (-pi, pi].
    static PhaseProfile anchored(HBSpec spec, double anchor_point = 0.0);
};

double phase(const PhaseProfile& profile, double x);
/// 2 exp_rate + 2 sum y_n / ((x - x_n)^2 + y_n^2), with x_n + i y_n = conj(z_n).
double phase_derivative(const HBSpec& spec, double x);

/// Limits of phase at -inf and +inf (infinite when exp_rate > 0).
std::pair<double, double> phase_limits(const PhaseProfile& profile);

struct PhaseSup {
    double value = 0.0;
    std::optional<double> argmax;  // empty: supremum approached at infinity
    bool at_infinity() const { return !argmax.has_value(); }
};

PhaseSup phase_derivative_sup(const HBSpec& spec);

/// Unique x with phase(x) == level; throws BracketUnavailable when the level
/// lies outside the range of the phase.
double solve_phase_level(const PhaseProfile& profile, double level, double tol = 1e-15);

/// All x in [lo, hi] with phase(x) == target (mod 2 pi), ascending.
/// target = 2 beta + pi gives the zeros of A_beta, target = 2 beta those of B_beta.
std::vector<double> level_crossings(const PhaseProfile& profile, double target, double lo,
                                    double hi);

struct HBBarReport {
    bool passed = true;
    double worst_ratio = 0.0;
    std::vector<cplx> skipped;  // points with g(z) == 0 within tolerance
    std::size_t checked = 0;
};

/// Samples |g#(z)| <= |g(z)| (1 + tol) on upper half-plane points.
HBBarReport hb_bar_check(const numerics::ComplexFn& g, const numerics::ComplexFn& g_sharp,
                         std::span<const cplx> grid, double tol, double zero_tol = 1e-300);

/// Equispaced nx-by-ny grid in [x_lo, x_hi] x [y_lo, y_hi] (y_lo > 0).
std::vector<cplx> upper_half_plane_grid(double x_lo, double x_hi, double y_lo, double y_hi, int nx,
                                        int ny);

}  // namespace dbr
