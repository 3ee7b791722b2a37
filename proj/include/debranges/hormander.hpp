#pragma once

#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "debranges/entire.hpp"
#include "debranges/hb_core.hpp"

namespace dbr::hormander {

struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

enum class ExtremumMode {
    absolute,  // maximise |f| / |E|
    positive,  // maximise f / |E|
};

struct Extremum {
    double xi = 0.0;
    double norm = 0.0;          // refined maximum of the objective
    double value = 0.0;         // f(xi)
    Window window;              // window that was searched
    std::vector<double> ties;   // other argmax locations within 1e-12 relative, ascending |x|
};

/// Locates the supremum of |f/E| (or f/|E|) on the real line.
///
/// Without a window the search interval grows until the tail bound of f/E
/// outside it drops below the interior maximum; Paley-Wiener specs
/// (exp_rate > 0) need an explicit window. Ties are broken toward the
/// smallest |x|. Throws MathFailure("max at infinity") when no window
/// certifies the maximum.
Extremum locate_extremum(const Entire& f, const HBSpec& spec,
                         std::optional<Window> window = std::nullopt,
                         ExtremumMode mode = ExtremumMode::absolute);

/// Zeros of B_alpha to the left and right of xi: phase levels phi(xi) -+ 2 pi.
std::pair<double, double> bracket_B_zeros(const HBSpec& spec, double alpha, double xi);
/// Zeros of A_alpha to the left and right of xi: phase levels phi(xi) -+ pi.
std::pair<double, double> bracket_A_zeros(const HBSpec& spec, double alpha, double xi);

/// alpha with E(xi) = e^{-i alpha} |E(xi)|.
double alpha_at(const HBSpec& spec, double xi);

struct LocalExpansion {
    double omega = 0.0;     // Omega(xi) with Omega = f / c - A_alpha, c = f(xi) / |E(xi)|
    double d_omega = 0.0;   // Omega'(xi)
    double dd_omega = 0.0;  // Omega''(xi)
    double d_gamma = 0.0;   // Gamma'(xi) with Gamma = -B_alpha
    bool omega_zero = false;
    bool d_omega_zero = false;
    bool dd_omega_nonnegative = false;
    bool d_gamma_positive = false;
    bool degenerate = false;       // Omega vanishes identically (f = norm * A_alpha)
    bool strict_positive = false;  // Omega''(xi) > 0, or degenerate
    bool passed = false;
};

/// Five-point central stencils with step `step` around xi. Needs
/// f(xi) = c e^{i alpha} E(xi) with real c != 0; f is rescaled by c so the
/// thresholds are relative to |E(xi)|.
LocalExpansion local_expansion_check(const Entire& f, const HBSpec& spec, double xi, double alpha,
                                     double step, double tol = 1e-9);

enum class BracketKind { b_zeros, a_zeros };

struct MarginSample {
    double x = 0.0;
    double margin = 0.0;  // f(x) - norm * A_alpha(x)  (|f| for the sign-free form)
};

struct HormanderReport {
    double xi = 0.0;
    double alpha = 0.0;
    double norm = 0.0;
    BracketKind kind = BracketKind::b_zeros;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::vector<MarginSample> profile;
    double min_margin = 0.0;      // min of margin / max(1, |E(x)|)
    double min_margin_raw = 0.0;  // margin at the same point
    double argmin = 0.0;
    double equality_gap = 0.0;    // |margin(xi)| / max(1, |E(xi)|)
    double tol = 0.0;
    bool passed = false;
    LocalExpansion local;
};

/// f(x) >= ||f/E||_inf A_alpha(x) on [b_l, b_r]. Throws MathFailure("wrong
/// sign at xi") when the supremum of |f/E| is only attained where f < 0, and
/// BracketUnavailable when a B_alpha zero is missing on one side.
HormanderReport verify_theorem1(const Entire& f, const HBSpec& spec, double tol = 1e-9,
                                std::optional<Window> window = std::nullopt);

/// |f(x)| >= ||f/E||_inf A_alpha(x) on [a_l, a_r].
HormanderReport verify_sign_free(const Entire& f, const HBSpec& spec, double tol = 1e-9,
                                 std::optional<Window> window = std::nullopt);

/// Two-column CSV "x,margin" with 17 significant digits.
void write_margin_csv(const HormanderReport& report, std::ostream& out);

}  // namespace dbr::hormander
