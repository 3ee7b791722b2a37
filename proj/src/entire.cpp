#include "debranges/entire.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <type_traits>

#include "debranges/bounds.hpp"
#include "debranges/errors.hpp"
#include "debranges/numerics.hpp"

namespace dbr {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double pi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// sup over |x| >= radius of |E_s(x) / E(x)| when s divides E
double ratio_bound(const HBSpec& s, const HBSpec& ambient, double radius) {
    std::vector<cplx> extra = ambient.zeros;
    for (const cplx& z : s.zeros) {
        auto it = std::find_if(extra.begin(), extra.end(), [&](const cplx& w) {
            return std::abs(w - z) <= 1e-12 * (1.0 + std::abs(z));
        });
        if (it != extra.end()) extra.erase(it);
    }
    double bound = s.scale / ambient.scale;
    for (const cplx& z : extra) bound /= std::max(-z.imag(), radius - std::abs(z));
    return bound;
}

}  // namespace

int RealPolynomial::degree() const {
    for (int k = static_cast<int>(coefficients.size()) - 1; k >= 0; --k)
        if (coefficients[k] != 0.0) return k;
    return -1;
}

Entire Entire::rotation_real_part(HBSpec spec, double beta) {
    spec.validate();
    return Entire(RotationRealPart{std::move(spec), beta});
}

Entire Entire::kernel(HBSpec spec, double t) {
    spec.validate();
    return Entire(Kernel{std::move(spec), t});
}

Entire Entire::polynomial(std::vector<double> coefficients) {
    for (double c : coefficients)
        if (!std::isfinite(c)) throw InputError("polynomial coefficients must be finite");
    return Entire(RealPolynomial{std::move(coefficients)});
}

Entire Entire::combination(std::vector<Term> terms) {
    for (const Term& t : terms)
        if (!std::isfinite(t.weight)) throw InputError("combination weights must be finite");
    return Entire(Combination{std::move(terms)});
}

Entire Entire::product(std::vector<Factor> factors) {
    if (factors.empty()) throw InputError("product needs at least one factor");
    for (const Factor& f : factors) f.spec.validate();
    return Entire(Product{std::move(factors)});
}

cplx Entire::operator()(cplx z) const {
    return std::visit(
        overloaded{
            [&](const RotationRealPart& n) { return eval_A(n.spec, n.beta, z); },
            [&](const Kernel& n) { return bounds::kernel_eval(n.spec, n.t, z); },
            [&](const RealPolynomial& n) {
                cplx value = 0.0;
                for (auto it = n.coefficients.rbegin(); it != n.coefficients.rend(); ++it)
                    value = value * z + *it;
                return value;
            },
            [&](const Combination& n) {
                cplx value = 0.0;
                for (const Term& t : n.terms) value += t.weight * t.f(z);
                return value;
            },
            [&](const Product& n) {
                cplx value = 1.0;
                for (const Factor& f : n.factors) value *= f.f(z);
                return value;
            },
        },
        node_);
}

double Entire::operator()(double x) const {
    return std::visit(
        overloaded{
            [&](const RotationRealPart& n) { return eval_AB(n.spec, n.beta, x).first; },
            [&](const Kernel& n) { return bounds::kernel_eval(n.spec, n.t, cplx{x, 0.0}).real(); },
            [&](const RealPolynomial& n) {
                double value = 0.0;
                for (auto it = n.coefficients.rbegin(); it != n.coefficients.rend(); ++it)
                    value = value * x + *it;
                return value;
            },
            [&](const Combination& n) {
                double value = 0.0;
                for (const Term& t : n.terms) value += t.weight * t.f(x);
                return value;
            },
            [&](const Product& n) {
                double value = 1.0;
                for (const Factor& f : n.factors) value *= f.f(x);
                return value;
            },
        },
        node_);
}

double Entire::derivative(double x, int order) const {
    if (order < 0) throw InputError("derivative order must be nonnegative");
    if (order == 0) return (*this)(x);
    return numerics::contour_derivative([this](cplx z) { return (*this)(z); }, x, order).real();
}

bool divides(const HBSpec& s, const HBSpec& ambient) {
    if (s.exp_rate > ambient.exp_rate * (1.0 + 1e-14) + 1e-300) return false;
    std::vector<cplx> pool = ambient.zeros;
    for (const cplx& z : s.zeros) {
        auto it = std::find_if(pool.begin(), pool.end(), [&](const cplx& w) {
            return std::abs(w - z) <= 1e-12 * (1.0 + std::abs(z));
        });
        if (it == pool.end()) return false;
        pool.erase(it);
    }
    return true;
}

HBSpec product_spec(const std::vector<Factor>& factors) {
    HBSpec out;
    out.exp_rate = 0.0;
    out.rotation = 0.0;
    out.scale = 1.0;
    for (const Factor& f : factors) {
        out.exp_rate += f.spec.exp_rate;
        out.rotation += f.spec.rotation;
        out.scale *= f.spec.scale;
        out.zeros.insert(out.zeros.end(), f.spec.zeros.begin(), f.spec.zeros.end());
    }
    return out;
}

void certify(const Entire& f, const HBSpec& ambient) {
    ambient.validate();
    std::visit(overloaded{
                   [&](const RotationRealPart& n) {
                       if (!divides(n.spec, ambient))
                           throw InputError("rotation_real_part: spec does not divide the ambient spec");
                   },
                   [&](const Kernel& n) {
                       if (!divides(n.spec, ambient))
                           throw InputError("kernel: spec does not divide the ambient spec");
                   },
                   [&](const RealPolynomial& n) {
                       if (n.degree() > static_cast<int>(ambient.degree()) - 1)
                           throw InputError("polynomial: degree exceeds deg(E) - 1");
                   },
                   [&](const Combination& n) {
                       for (const Term& t : n.terms) certify(t.f, ambient);
                   },
                   [&](const Product& n) {
                       for (const Factor& fac : n.factors) certify(fac.f, fac.spec);
                       if (!divides(product_spec(n.factors), ambient))
                           throw InputError("product: factor specs do not divide the ambient spec");
                   },
               },
               f.node());
}

double tail_bound(const Entire& f, const HBSpec& ambient, double radius) {
    return std::visit(
        overloaded{
            [&](const RotationRealPart& n) { return ratio_bound(n.spec, ambient, radius); },
            [&](const Kernel& n) {
                const double et = std::abs(eval_E(n.spec, cplx{n.t, 0.0}));
                double k = phase_derivative_sup(n.spec).value / (2.0 * pi);
                if (radius > std::abs(n.t)) k = std::min(k, 1.0 / (pi * (radius - std::abs(n.t))));
                return et * k * ratio_bound(n.spec, ambient, radius);
            },
            [&](const RealPolynomial& n) {
                double rmax = 0.0;
                for (const cplx& z : ambient.zeros) rmax = std::max(rmax, std::abs(z));
                if (!(radius > rmax) || n.degree() > static_cast<int>(ambient.degree())) return inf;
                double top = 0.0;
                for (std::size_t k = 0; k < n.coefficients.size(); ++k)
                    top += std::abs(n.coefficients[k]) * std::pow(radius, static_cast<double>(k));
                double bottom = ambient.scale;
                for (const cplx& z : ambient.zeros) bottom *= radius - std::abs(z);
                return top / bottom;
            },
            [&](const Combination& n) {
                double sum = 0.0;
                for (const Term& t : n.terms) sum += std::abs(t.weight) * tail_bound(t.f, ambient, radius);
                return sum;
            },
            [&](const Product& n) {
                double prod = ratio_bound(product_spec(n.factors), ambient, radius);
                for (const Factor& fac : n.factors) prod *= tail_bound(fac.f, fac.spec, radius);
                return prod;
            },
        },
        f.node());
}

std::vector<double> feature_points(const Entire& f) {
    std::vector<double> out;
    auto add_spec = [&out](const HBSpec& s) {
        for (const cplx& z : s.zeros) out.push_back(z.real());
    };
    std::visit(overloaded{
                   [&](const RotationRealPart& n) { add_spec(n.spec); },
                   [&](const Kernel& n) {
                       add_spec(n.spec);
                       out.push_back(n.t);
                   },
                   [&](const RealPolynomial&) {},
                   [&](const Combination& n) {
                       for (const Term& t : n.terms) {
                           auto sub = feature_points(t.f);
                           out.insert(out.end(), sub.begin(), sub.end());
                       }
                   },
                   [&](const Product& n) {
                       for (const Factor& fac : n.factors) {
                           auto sub = feature_points(fac.f);
                           out.insert(out.end(), sub.begin(), sub.end());
                       }
                   },
               },
               f.node());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace dbr
