#pragma once

#include <vector>

#include "debranges/hb_core.hpp"

namespace dbr::bounds {

/// K(p) = (sqrt(pi) Gamma((p+1)/2) / Gamma((p+2)/2))^{1/p}.
double K_p_closed(double p);
/// K(p) = (int_{-pi/2}^{pi/2} |cos x|^p dx)^{1/p} by quadrature.
double K_p_quadrature(double p);

/// ||phi'||^{1/p} / (2^{1/p} K(p)), the embedding-norm bound for C(p, E).
double embedding_bound(double p, double phase_sup);
/// ||phi'|| * (1/2) * sqrt((p + 1) / (2 pi)), a bound for C(p, E)^p.
double nonasymptotic_bound_pth_power(double p, double phase_sup);
/// (1 / K(p)^p) / sqrt(p / (2 pi)).
double asymptotic_check(double p);

struct BoundReport {
    double p = 0.0;
    double K_p = 0.0;
    double C_bound = 0.0;
    double C_bound_nonasymptotic_pth_power = 0.0;
    double phase_sup = 0.0;
    double asymptotic_ratio = 0.0;
    bool wendel_chain_holds = false;
};

BoundReport bound_report(double p, double phase_sup);

struct IntervalEnergy {
    double value = 0.0;            // int |A_alpha / E|^p over [a_l, a_r]
    double via_phase = 0.0;        // 2^{-p/2} int |1 + cos(phi - 2 alpha)|^{p/2}
    double lower_bound = 0.0;      // 2 K(p)^p / phase_sup
    bool bound_holds = false;
};

/// Energy of |A_alpha / E|^p between consecutive zeros of A_alpha. Throws
/// InputError when (a_l, a_r) are not consecutive A_alpha zeros.
IntervalEnergy interval_energy(const HBSpec& spec, double alpha, double p, double a_l, double a_r);

/// K_xi(z) = [E(z) conj E(xi) - E#(z) conj E#(xi)] / (2 pi i (xi - z)).
cplx kernel_eval(const HBSpec& spec, double xi, cplx z);
/// K_xi(xi) from pi^{-1} Im(conj(E'(xi)) E(xi)).
double kernel_diagonal(const HBSpec& spec, double xi);

/// sqrt(phi'(xi) / (2 pi)).
double C2_exact(const HBSpec& spec, double xi);

struct C2Sup {
    double value = 0.0;
    bool attained = false;  // extremal function exists iff phi' peaks at a finite point
    double argmax = 0.0;
};
C2Sup C2_sup(const HBSpec& spec);

/// K_xi(xi) / (|E(xi)| ||K_xi / E||_2) with the norm by quadrature on the line
/// (polynomial-type specs).
double C2_from_kernel_norm(const HBSpec& spec, double xi);

}  // namespace dbr::bounds
