#include "debranges/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "debranges/errors.hpp"

namespace dbr::json_io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& member(const json& j, const char* key) {
    if (!j.is_object()) throw InputError(std::string("expected an object holding \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing key \"") + key + "\"");
    return *it;
}

double as_number(const json& j, const std::string& what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw InputError(what + " must be a number");
}

double number_or(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : as_number(*it, key);
}

bool read_bool(const json& j, const char* key) {
    const json& v = member(j, key);
    if (!v.is_boolean()) throw InputError(std::string("\"") + key + "\" must be a boolean");
    return v.get<bool>();
}

int read_int(const json& j, const char* key) {
    const json& v = member(j, key);
    if (!v.is_number_integer()) throw InputError(std::string("\"") + key + "\" must be an integer");
    return v.get<int>();
}

std::string read_string(const json& j, const char* key) {
    const json& v = member(j, key);
    if (!v.is_string()) throw InputError(std::string("\"") + key + "\" must be a string");
    return v.get<std::string>();
}

json numbers(const std::vector<double>& xs) {
    json out = json::array();
    for (double x : xs) out.push_back(number(x));
    return out;
}

std::vector<double> read_numbers(const json& j, const char* key) {
    const json& v = member(j, key);
    if (!v.is_array()) throw InputError(std::string("\"") + key + "\" must be an array");
    std::vector<double> out;
    for (const json& x : v) out.push_back(as_number(x, key));
    return out;
}

const char* kind_name(hormander::BracketKind kind) {
    return kind == hormander::BracketKind::b_zeros ? "b_zeros" : "a_zeros";
}

const char* basis_name(extremal::BasisKind kind) {
    return kind == extremal::BasisKind::polynomial ? "polynomial" : "kernel_nodes";
}

extremal::BasisKind parse_basis(const std::string& s) {
    if (s == "polynomial") return extremal::BasisKind::polynomial;
    if (s == "kernel_nodes") return extremal::BasisKind::kernel_nodes;
    throw InputError("unknown basis \"" + s + "\"");
}

}  // namespace

json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double read_number(const json& j, const char* key) { return as_number(member(j, key), key); }

json to_json(const HBSpec& spec) {
    json zeros = json::array();
    for (const cplx& z : spec.zeros) zeros.push_back(json::array({z.real(), z.imag()}));
    return {{"exp_rate", spec.exp_rate}, {"zeros", zeros}, {"rotation", spec.rotation}, {"scale", spec.scale}};
}

HBSpec parse_spec(const json& j) {
    if (!j.is_object()) throw InputError("spec must be a JSON object");
    HBSpec spec;
    spec.exp_rate = number_or(j, "exp_rate", 0.0);
    spec.rotation = number_or(j, "rotation", 0.0);
    spec.scale = number_or(j, "scale", 1.0);
    if (auto it = j.find("zeros"); it != j.end()) {
        if (!it->is_array()) throw InputError("\"zeros\" must be an array of [re, im] pairs");
        for (const json& z : *it) {
            if (!z.is_array() || z.size() != 2) throw InputError("each zero must be a [re, im] pair");
            spec.zeros.emplace_back(as_number(z[0], "zero re"), as_number(z[1], "zero im"));
        }
    }
    spec.validate();
    return spec;
}

json to_json(const Entire& f) {
    return std::visit(
        overloaded{
            [](const RotationRealPart& n) -> json {
                return {{"kind", "rotation_real_part"}, {"spec", to_json(n.spec)}, {"beta", n.beta}};
            },
            [](const Kernel& n) -> json {
                return {{"kind", "kernel"}, {"spec", to_json(n.spec)}, {"t", n.t}};
            },
            [](const RealPolynomial& n) -> json {
                return {{"kind", "polynomial"}, {"coefficients", numbers(n.coefficients)}};
            },
            [](const Combination& n) -> json {
                json terms = json::array();
                for (const Term& t : n.terms) terms.push_back({{"weight", t.weight}, {"f", to_json(t.f)}});
                return {{"kind", "combination"}, {"terms", terms}};
            },
            [](const Product& n) -> json {
                json factors = json::array();
                for (const Factor& fac : n.factors)
                    factors.push_back({{"spec", to_json(fac.spec)}, {"f", to_json(fac.f)}});
                return {{"kind", "product"}, {"factors", factors}};
            },
        },
        f.node());
}

Entire parse_entire(const json& j) {
    const std::string kind = read_string(j, "kind");
    if (kind == "rotation_real_part")
        return Entire::rotation_real_part(parse_spec(member(j, "spec")), read_number(j, "beta"));
    if (kind == "kernel") return Entire::kernel(parse_spec(member(j, "spec")), read_number(j, "t"));
    if (kind == "polynomial") return Entire::polynomial(read_numbers(j, "coefficients"));
    if (kind == "combination") {
        const json& terms = member(j, "terms");
        if (!terms.is_array()) throw InputError("\"terms\" must be an array");
        std::vector<Term> out;
        for (const json& t : terms) out.push_back({read_number(t, "weight"), parse_entire(member(t, "f"))});
        return Entire::combination(std::move(out));
    }
    if (kind == "product") {
        const json& factors = member(j, "factors");
        if (!factors.is_array()) throw InputError("\"factors\" must be an array");
        std::vector<Factor> out;
        for (const json& fac : factors)
            out.push_back({parse_spec(member(fac, "spec")), parse_entire(member(fac, "f"))});
        return Entire::product(std::move(out));
    }
    throw InputError("unknown entire-function kind \"" + kind + "\"");
}

json to_json(const hormander::Window& w) { return json::array({w.lo, w.hi}); }

hormander::Window parse_window(const json& j) {
    if (!j.is_array() || j.size() != 2) throw InputError("window must be a [lo, hi] pair");
    hormander::Window w{as_number(j[0], "window lo"), as_number(j[1], "window hi")};
    if (!(w.hi > w.lo) || !std::isfinite(w.lo) || !std::isfinite(w.hi))
        throw InputError("window needs finite lo < hi");
    return w;
}

json to_json(const extremal::ExtremalProblem& problem) {
    json j = {{"p", problem.p},
              {"spec", to_json(problem.spec)},
              {"xi", problem.xi},
              {"basis", basis_name(problem.basis)},
              {"degree", problem.degree},
              {"nodes", numbers(problem.nodes)},
              {"panels", problem.panels},
              {"kkt_tol", problem.kkt_tol},
              {"random_start", problem.random_start},
              {"seed", problem.seed},
              {"max_iterations", problem.max_iterations}};
    if (problem.window) j["window"] = to_json(*problem.window);
    return j;
}

extremal::ExtremalProblem parse_problem(const json& j) {
    if (!j.is_object()) throw InputError("extremal problem must be a JSON object");
    extremal::ExtremalProblem problem;
    problem.p = number_or(j, "p", problem.p);
    problem.spec = parse_spec(member(j, "spec"));
    problem.xi = number_or(j, "xi", problem.xi);
    if (j.contains("basis")) problem.basis = parse_basis(read_string(j, "basis"));
    if (j.contains("degree")) problem.degree = read_int(j, "degree");
    if (j.contains("nodes")) problem.nodes = read_numbers(j, "nodes");
    if (j.contains("window")) problem.window = parse_window(j.at("window"));
    if (j.contains("panels")) problem.panels = read_int(j, "panels");
    problem.kkt_tol = number_or(j, "kkt_tol", problem.kkt_tol);
    if (j.contains("random_start")) problem.random_start = read_bool(j, "random_start");
    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (!s.is_number_unsigned()) throw InputError("\"seed\" must be a nonnegative integer");
        problem.seed = s.get<std::uint64_t>();
    }
    if (j.contains("max_iterations")) problem.max_iterations = read_int(j, "max_iterations");
    problem.validate();
    return problem;
}

json to_json(const bounds::BoundReport& r) {
    return {{"p", number(r.p)},
            {"K_p", number(r.K_p)},
            {"C_bound", number(r.C_bound)},
            {"C_bound_nonasymptotic_pth_power", number(r.C_bound_nonasymptotic_pth_power)},
            {"phase_sup", number(r.phase_sup)},
            {"asymptotic_ratio", number(r.asymptotic_ratio)},
            {"wendel_chain_holds", r.wendel_chain_holds}};
}

bounds::BoundReport parse_bound_report(const json& j) {
    bounds::BoundReport r;
    r.p = read_number(j, "p");
    r.K_p = read_number(j, "K_p");
    r.C_bound = read_number(j, "C_bound");
    r.C_bound_nonasymptotic_pth_power = read_number(j, "C_bound_nonasymptotic_pth_power");
    r.phase_sup = read_number(j, "phase_sup");
    r.asymptotic_ratio = read_number(j, "asymptotic_ratio");
    r.wendel_chain_holds = read_bool(j, "wendel_chain_holds");
    return r;
}

json to_json(const hormander::LocalExpansion& l) {
    return {{"omega", number(l.omega)},
            {"d_omega", number(l.d_omega)},
            {"dd_omega", number(l.dd_omega)},
            {"d_gamma", number(l.d_gamma)},
            {"omega_zero", l.omega_zero},
            {"d_omega_zero", l.d_omega_zero},
            {"dd_omega_nonnegative", l.dd_omega_nonnegative},
            {"d_gamma_positive", l.d_gamma_positive},
            {"degenerate", l.degenerate},
            {"strict_positive", l.strict_positive},
            {"passed", l.passed}};
}

hormander::LocalExpansion parse_local_expansion(const json& j) {
    hormander::LocalExpansion l;
    l.omega = read_number(j, "omega");
    l.d_omega = read_number(j, "d_omega");
    l.dd_omega = read_number(j, "dd_omega");
    l.d_gamma = read_number(j, "d_gamma");
    l.omega_zero = read_bool(j, "omega_zero");
    l.d_omega_zero = read_bool(j, "d_omega_zero");
    l.dd_omega_nonnegative = read_bool(j, "dd_omega_nonnegative");
    l.d_gamma_positive = read_bool(j, "d_gamma_positive");
    l.degenerate = read_bool(j, "degenerate");
    l.strict_positive = read_bool(j, "strict_positive");
    l.passed = read_bool(j, "passed");
    return l;
}

json to_json(const hormander::HormanderReport& r) {
    return {{"xi", number(r.xi)},
            {"alpha", number(r.alpha)},
            {"norm", number(r.norm)},
            {"bracket_kind", kind_name(r.kind)},
            {"bracket", json::array({number(r.bracket_lo), number(r.bracket_hi)})},
            {"min_margin", number(r.min_margin)},
            {"min_margin_raw", number(r.min_margin_raw)},
            {"argmin", number(r.argmin)},
            {"equality_gap", number(r.equality_gap)},
            {"tol", number(r.tol)},
            {"passed", r.passed},
            {"local_expansion", to_json(r.local)}};
}

hormander::HormanderReport parse_hormander_report(const json& j) {
    hormander::HormanderReport r;
    r.xi = read_number(j, "xi");
    r.alpha = read_number(j, "alpha");
    r.norm = read_number(j, "norm");
    const std::string kind = read_string(j, "bracket_kind");
    if (kind == "b_zeros") r.kind = hormander::BracketKind::b_zeros;
    else if (kind == "a_zeros") r.kind = hormander::BracketKind::a_zeros;
    else throw InputError("unknown bracket kind \"" + kind + "\"");
    const json& b = member(j, "bracket");
    if (!b.is_array() || b.size() != 2) throw InputError("\"bracket\" must be a pair");
    r.bracket_lo = as_number(b[0], "bracket lo");
    r.bracket_hi = as_number(b[1], "bracket hi");
    r.min_margin = read_number(j, "min_margin");
    r.min_margin_raw = read_number(j, "min_margin_raw");
    r.argmin = read_number(j, "argmin");
    r.equality_gap = read_number(j, "equality_gap");
    r.tol = read_number(j, "tol");
    r.passed = read_bool(j, "passed");
    r.local = parse_local_expansion(member(j, "local_expansion"));
    return r;
}

json to_json(const extremal::ExtremalFunction& f) {
    json j = {{"basis", basis_name(f.kind)}};
    if (f.kind == extremal::BasisKind::polynomial) {
        j["center"] = f.center;
        j["scale"] = f.scale;
        j["u_coefficients"] = numbers(f.u_coefficients);
    } else {
        j["spec"] = to_json(f.spec);
        j["nodes"] = numbers(f.nodes);
        j["weights"] = numbers(f.weights);
    }
    return j;
}

extremal::ExtremalFunction parse_extremal_function(const json& j) {
    extremal::ExtremalFunction f;
    f.kind = parse_basis(read_string(j, "basis"));
    if (f.kind == extremal::BasisKind::polynomial) {
        f.center = read_number(j, "center");
        f.scale = read_number(j, "scale");
        f.u_coefficients = read_numbers(j, "u_coefficients");
    } else {
        f.spec = parse_spec(member(j, "spec"));
        f.nodes = read_numbers(j, "nodes");
        f.weights = read_numbers(j, "weights");
        if (f.nodes.size() != f.weights.size()) throw InputError("nodes and weights differ in length");
    }
    return f;
}

json to_json(const extremal::ZeroSet& z) {
    return {{"zeros", numbers(z.zeros)},
            {"max_imag", number(z.max_imag)},
            {"min_gap", number(z.min_gap)},
            {"min_derivative", number(z.min_derivative)},
            {"real", z.real},
            {"simple", z.simple}};
}

extremal::ZeroSet parse_zero_set(const json& j) {
    extremal::ZeroSet z;
    z.zeros = read_numbers(j, "zeros");
    z.max_imag = read_number(j, "max_imag");
    z.min_gap = read_number(j, "min_gap");
    z.min_derivative = read_number(j, "min_derivative");
    z.real = read_bool(j, "real");
    z.simple = read_bool(j, "simple");
    return z;
}

json to_json(const extremal::ExtremalSolution& s) {
    json pairs = json::array();
    for (const auto& [a, b] : s.residual_pairs) pairs.push_back(json::array({a, b}));
    return {{"function", to_json(s.f)},
            {"coefficients", numbers(s.coefficients)},
            {"C_value", number(s.C_value)},
            {"min_norm", number(s.min_norm)},
            {"norm_check", number(s.norm_check)},
            {"quadrature_error", number(s.quadrature_error)},
            {"zeros", to_json(s.zeros)},
            {"kkt_residual", number(s.kkt_residual)},
            {"residual_pairs", pairs},
            {"orthogonality_residuals", numbers(s.orthogonality_residuals)},
            {"min_zero_gap", number(s.min_zero_gap)},
            {"iterations", s.iterations},
            {"converged", s.converged},
            {"truncated", s.truncated},
            {"experimental", s.experimental}};
}

extremal::ExtremalSolution parse_solution(const json& j) {
    extremal::ExtremalSolution s;
    s.f = parse_extremal_function(member(j, "function"));
    s.coefficients = read_numbers(j, "coefficients");
    s.C_value = read_number(j, "C_value");
    s.min_norm = read_number(j, "min_norm");
    s.norm_check = read_number(j, "norm_check");
    s.quadrature_error = read_number(j, "quadrature_error");
    s.zeros = parse_zero_set(member(j, "zeros"));
    s.kkt_residual = read_number(j, "kkt_residual");
    for (const json& p : member(j, "residual_pairs")) {
        if (!p.is_array() || p.size() != 2) throw InputError("residual pairs must be [a, b]");
        s.residual_pairs.emplace_back(as_number(p[0], "pair"), as_number(p[1], "pair"));
    }
    s.orthogonality_residuals = read_numbers(j, "orthogonality_residuals");
    s.min_zero_gap = read_number(j, "min_zero_gap");
    s.iterations = read_int(j, "iterations");
    s.converged = read_bool(j, "converged");
    s.truncated = read_bool(j, "truncated");
    s.experimental = read_bool(j, "experimental");
    return s;
}

json to_json(const extremal::SeparationReport& r) {
    return {{"min_gap", number(r.min_gap)},
            {"delta", number(r.delta)},
            {"a_gap", number(r.a_gap)},
            {"diagnostic_c", number(r.diagnostic_c)},
            {"gaps", numbers(r.gaps)},
            {"reference_constants", numbers(r.reference_constants)},
            {"passed", r.passed},
            {"diagnostic_passed", r.diagnostic_passed}};
}

extremal::SeparationReport parse_separation_report(const json& j) {
    extremal::SeparationReport r;
    r.min_gap = read_number(j, "min_gap");
    r.delta = read_number(j, "delta");
    r.a_gap = read_number(j, "a_gap");
    r.diagnostic_c = read_number(j, "diagnostic_c");
    r.gaps = read_numbers(j, "gaps");
    r.reference_constants = read_numbers(j, "reference_constants");
    r.passed = read_bool(j, "passed");
    r.diagnostic_passed = read_bool(j, "diagnostic_passed");
    return r;
}

json to_json(const extremal::MeanTypeReport& r) {
    return {{"y", numbers(r.y)}, {"values", numbers(r.values)}, {"max_value", number(r.max_value)},
            {"passed", r.passed}};
}

extremal::MeanTypeReport parse_mean_type_report(const json& j) {
    extremal::MeanTypeReport r;
    r.y = read_numbers(j, "y");
    r.values = read_numbers(j, "values");
    r.max_value = read_number(j, "max_value");
    r.passed = read_bool(j, "passed");
    return r;
}

json read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_file(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace dbr::json_io
