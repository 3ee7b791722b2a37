#pragma once

#include <variant>
#include <vector>

#include "debranges/hb_core.hpp"

namespace dbr {

class Entire;
struct Term;
struct Factor;

/// A_beta of `spec`.
struct RotationRealPart {
    HBSpec spec;
    double beta = 0.0;
};

/// Reproducing kernel K_t of H^2(spec).
struct Kernel {
    HBSpec spec;
    double t = 0.0;
};

/// Ascending-power coefficients.
struct RealPolynomial {
    std::vector<double> coefficients;
    int degree() const;  // -1 for the zero polynomial
};

struct Combination {
    std::vector<Term> terms;
};

/// Product of members of H^inf(spec_i); a member of H^inf(prod spec_i).
struct Product {
    std::vector<Factor> factors;
};

/// Real entire function built from certified pieces. Evaluates at complex
/// arguments; on the real axis the value is real.
class Entire {
public:
    using Node = std::variant<RotationRealPart, Kernel, RealPolynomial, Combination, Product>;

    explicit Entire(Node node) : node_(std::move(node)) {}

    static Entire rotation_real_part(HBSpec spec, double beta);
    static Entire kernel(HBSpec spec, double t);
    static Entire polynomial(std::vector<double> coefficients);
    static Entire combination(std::vector<Term> terms);
    static Entire product(std::vector<Factor> factors);

    const Node& node() const { return node_; }

    cplx operator()(cplx z) const;
    double operator()(double x) const;

    /// k-th derivative on the real line (Cauchy contour rule).
    double derivative(double x, int order = 1) const;

private:
    Node node_;
};

struct Term {
    double weight = 1.0;
    Entire f;
};

struct Factor {
    HBSpec spec;
    Entire f;
};

/// True when H^inf(s) is contained in H^inf(ambient) through the product
/// form: exp_rate(s) <= exp_rate(ambient) and zeros(s) is a sub-multiset.
bool divides(const HBSpec& s, const HBSpec& ambient);

/// Spec of the product of the factor specs.
HBSpec product_spec(const std::vector<Factor>& factors);

/// Throws InputError unless every node carries a membership certificate for
/// H^inf(ambient). Polynomials need degree <= deg(ambient) - 1.
void certify(const Entire& f, const HBSpec& ambient);

/// Upper bound for sup_{|x| >= radius} |f(x) / E(x)|; +inf when no bound is available.
double tail_bound(const Entire& f, const HBSpec& ambient, double radius);

/// Real points where f has structure (kernel nodes, real parts of zeros).
std::vector<double> feature_points(const Entire& f);

}  // namespace dbr
