#include "projcoh/operators.hpp"

#include <algorithm>
#include <sstream>

namespace projcoh {

std::string to_string(chart_mode m) {
    switch (m) {
        case chart_mode::flat: return "flat";
        case chart_mode::covariant: return "covariant";
        case chart_mode::covariant_free_r: return "covariant-free-R";
    }
    return "unknown";
}

std::optional<chart_mode> parse_chart_mode(std::string_view s) {
    if (s == "flat") return chart_mode::flat;
    if (s == "covariant") return chart_mode::covariant;
    if (s == "covariant-free-R" || s == "free-R") return chart_mode::covariant_free_r;
    return std::nullopt;
}

diff_poly nabla(const diff_poly& a, const param_ratfun& weight, chart_mode mode) {
    if (mode == chart_mode::flat) return total_derivative(a);
    return covariant_derivative(a, weight, sym::Gamma());
}

diff_poly nabla_power(const diff_poly& a, const param_ratfun& weight, int k, chart_mode mode) {
    if (mode == chart_mode::flat) return total_derivative(a, k);
    return covariant_power(a, weight, k, sym::Gamma());
}

diff_poly projective_r(chart_mode mode) {
    switch (mode) {
        case chart_mode::flat: return {};
        case chart_mode::covariant: {
            auto g = diff_poly::jet(sym::Gamma());
            return diff_poly::jet(sym::Gamma(), 1) - (g * g).scaled(param_ratfun{rational{1, 2}});
        }
        case chart_mode::covariant_free_r: return diff_poly::jet(sym::R());
    }
    return {};
}

diff_poly nabla_r(int k, chart_mode mode) { return nabla_power(projective_r(mode), param_ratfun{2}, k, mode); }

diff_poly eliminate_r(const diff_poly& a, chart_mode mode) {
    if (mode == chart_mode::covariant_free_r) return a;
    return substitute_symbol(a, sym::R(), projective_r(mode));
}

// ---------------------------------------------------------------------------
// Operators

diff_operator::diff_operator(param_ratfun source, param_ratfun target, std::vector<diff_poly> coefficients,
                             chart_mode mode)
    : source_{std::move(source)}, target_{std::move(target)}, coefficients_{std::move(coefficients)}, mode_{mode} {
    while (!coefficients_.empty() && coefficients_.back().is_zero()) coefficients_.pop_back();
}

diff_operator diff_operator::identity(const param_ratfun& weight, chart_mode mode) {
    return {weight, weight, {diff_poly{1}}, mode};
}

diff_operator diff_operator::derivative(const param_ratfun& weight, int k, chart_mode mode) {
    std::vector<diff_poly> c(static_cast<std::size_t>(k) + 1);
    c.back() = diff_poly{1};
    return {weight, weight + param_ratfun{k}, std::move(c), mode};
}

diff_operator diff_operator::multiplication(const diff_poly& c, const param_ratfun& source,
                                            const param_ratfun& c_weight, chart_mode mode) {
    return {source, source + c_weight, {c}, mode};
}

diff_operator diff_operator::from_image(const diff_poly& image, symbol arg, const param_ratfun& source,
                                        const param_ratfun& target, chart_mode mode) {
    diff_poly rest = image;
    const int top = rest.max_order(arg);
    if (top < 0) {
        if (!rest.is_zero()) throw std::invalid_argument("expression does not involve " + std::string{arg.name()});
        return {source, target, {}, mode};
    }
    std::vector<diff_poly> coeffs(static_cast<std::size_t>(top) + 1);
    for (int i = top; i >= 0; --i) {
        diff_poly c = coefficient_of_jet(rest, jet_var{arg, static_cast<std::uint16_t>(i)});
        if (c.is_zero()) continue;
        if (c.contains(arg))
            throw std::invalid_argument("expression is not linear in " + std::string{arg.name()});
        coeffs[static_cast<std::size_t>(i)] = c;
        rest -= c * nabla_power(diff_poly::jet(arg), source, i, mode);
    }
    if (!rest.is_zero())
        throw std::invalid_argument("expression is not linear in " + std::string{arg.name()} + ": " + rest.to_string());
    return {source, target, std::move(coeffs), mode};
}

diff_poly diff_operator::coefficient(int i) const {
    if (i < 0 || i > order()) return {};
    return coefficients_[static_cast<std::size_t>(i)];
}

diff_poly diff_operator::apply(const diff_poly& arg) const {
    diff_poly out;
    diff_poly d = arg;
    param_ratfun w = source_;
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        if (i > 0) {
            d = nabla(d, w, mode_);
            w += param_ratfun{1};
        }
        if (!coefficients_[i].is_zero()) out += coefficients_[i] * d;
    }
    return out;
}

diff_poly diff_operator::apply(const function_symbol& arg) const {
    if (!(arg.weight == source_))
        throw weight_mismatch("operator expects weight " + source_.to_string() + " but " +
                              std::string{arg.sym.name()} + " has weight " + arg.weight.to_string());
    return apply(diff_poly::of(arg));
}

diff_poly diff_operator::image() const { return apply(diff_poly::jet(sym::phi())); }

diff_operator diff_operator::scaled(const param_ratfun& c) const {
    std::vector<diff_poly> out;
    for (auto& a : coefficients_) out.push_back(a.scaled(c));
    return {source_, target_, std::move(out), mode_};
}

namespace {

void require_compatible(const diff_operator& a, const diff_operator& b) {
    if (a.mode() != b.mode()) throw std::invalid_argument("operators live in different chart modes");
    if (!(a.source() == b.source()) || !(a.target() == b.target()))
        throw weight_mismatch("operators act between different density modules");
}

diff_operator combine(const diff_operator& a, const diff_operator& b, bool subtract) {
    require_compatible(a, b);
    std::size_t n = std::max(a.coefficients().size(), b.coefficients().size());
    std::vector<diff_poly> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = a.coefficient(static_cast<int>(i));
        if (subtract) c[i] -= b.coefficient(static_cast<int>(i));
        else c[i] += b.coefficient(static_cast<int>(i));
    }
    return {a.source(), a.target(), std::move(c), a.mode()};
}

std::string derivative_string(int i, chart_mode mode, bool latex) {
    if (i == 0) return "";
    std::string base = mode == chart_mode::flat ? (latex ? "\\partial" : "d") : (latex ? "\\nabla" : "∇");
    if (i == 1) return base;
    return latex ? base + "^{" + std::to_string(i) + "}" : base + "^" + std::to_string(i);
}

}  // namespace

diff_operator operator+(const diff_operator& a, const diff_operator& b) { return combine(a, b, false); }
diff_operator operator-(const diff_operator& a, const diff_operator& b) { return combine(a, b, true); }

std::string diff_operator::to_string() const {
    if (coefficients_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = order(); i >= 0; --i) {
        const auto& c = coefficients_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << c.to_string() << ")" << derivative_string(i, mode_, false);
        first = false;
    }
    return os.str();
}

std::string diff_operator::to_latex() const {
    if (coefficients_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = order(); i >= 0; --i) {
        const auto& c = coefficients_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        os << "\\left(" << c.to_latex() << "\\right)" << derivative_string(i, mode_, true);
        first = false;
    }
    return os.str();
}

diff_operator compose(const diff_operator& b, const diff_operator& a) {
    if (a.mode() != b.mode()) throw std::invalid_argument("cannot compose operators from different chart modes");
    if (!(a.target() == b.source()))
        throw weight_mismatch("composition needs target " + a.target().to_string() + " to equal source " +
                              b.source().to_string());
    return diff_operator::from_image(b.apply(a.image()), sym::phi(), a.source(), b.target(), a.mode());
}

// ---------------------------------------------------------------------------
// Bilinear expressions

std::map<std::pair<int, int>, diff_poly> bidiff_expr::table() const {
    std::map<std::pair<int, int>, diff_poly> out;
    for (auto& [m, c] : value.terms()) {
        int i = -1, j = -1;
        monomial rest;
        rest.z_degree = m.z_degree;
        for (auto& [key, e] : m.factors) {
            auto v = jet_var::from_key(key);
            if (v.sym == field && e == 1 && i < 0) i = v.order;
            else if (v.sym == argument && e == 1 && j < 0) j = v.order;
            else rest.factors.emplace_back(key, e);
        }
        if (i < 0 || j < 0)
            throw std::invalid_argument("term is not bilinear in " + std::string{field.name()} + " and " +
                                        std::string{argument.name()});
        out[{i, j}] += diff_poly::from_term(std::move(rest), c);
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero()) it = out.erase(it);
        else ++it;
    }
    return out;
}

bidiff_expr bidiff_expr::at(const diff_poly& field_value) const {
    return {substitute_symbol(value, field, field_value), field, argument};
}

// ---------------------------------------------------------------------------
// Lie derivative

diff_poly lie_action_density(const diff_poly& x, const diff_poly& arg, const param_ratfun& lambda, chart_mode mode) {
    diff_poly out = x * nabla(arg, lambda, mode);
    if (!lambda.is_zero()) out += (arg * nabla(x, param_ratfun{-1}, mode)).scaled(lambda);
    return out;
}

diff_poly lie_action_density(const function_symbol& x, const function_symbol& arg, chart_mode mode) {
    if (x.kind() != symbol_kind::vector_field)
        throw std::invalid_argument(std::string{x.sym.name()} + " is not a vector field");
    return lie_action_density(diff_poly::of(x), diff_poly::of(arg), arg.weight, mode);
}

diff_poly lie_action_on_image(const diff_poly& x, const diff_poly& image, const param_ratfun& lambda,
                              const param_ratfun& mu, symbol arg) {
    // The density action is connection independent, so the flat form is used.
    diff_poly out = lie_action_density(x, image, mu, chart_mode::flat);
    out -= substitute_symbol(image, arg, lie_action_density(x, diff_poly::jet(arg), lambda, chart_mode::flat));
    return out;
}

bidiff_expr lie_action_operator(const diff_poly& x, const diff_operator& a) {
    return {lie_action_on_image(x, a.image(), a.source(), a.target()), sym::X(), sym::phi()};
}

diff_poly vf_bracket(const diff_poly& x, const diff_poly& y) {
    return x * total_derivative(y) - y * total_derivative(x);
}

// ---------------------------------------------------------------------------
// Transvectants

param_ratfun falling_binomial(const param_ratfun& t, int i) {
    param_ratfun out{1};
    rational fact = 1;
    for (int r = 0; r < i; ++r) {
        out *= t - param_ratfun{r};
        fact *= r + 1;
    }
    return out / param_ratfun{fact};
}

bidiff_expr transvectant(int m, const param_ratfun& lambda, const param_ratfun& mu, symbol first, symbol second) {
    if (m < 0) throw std::invalid_argument("transvectant order must be non-negative");
    rational mfact = 1;
    for (int r = 2; r <= m; ++r) mfact *= r;
    const param_ratfun top1 = lambda * param_ratfun{2} + param_ratfun{m - 1};
    const param_ratfun top2 = mu * param_ratfun{2} + param_ratfun{m - 1};
    diff_poly value;
    for (int i = 0; i <= m; ++i) {
        param_ratfun c = falling_binomial(top1, i) * falling_binomial(top2, m - i) * param_ratfun{mfact};
        if (i % 2) c = -c;
        value += (diff_poly::jet(first, i) * diff_poly::jet(second, m - i)).scaled(c);
    }
    return {value, first, second};
}

// ---------------------------------------------------------------------------
// Named operators and cocycles

std::string to_string(invariant_name n) {
    switch (n) {
        case invariant_name::I3: return "I3";
        case invariant_name::I4: return "I4";
        case invariant_name::I5: return "I5";
        case invariant_name::I6: return "I6";
        case invariant_name::I6p: return "I6'";
    }
    return "?";
}

std::string to_string(cocycle_name n) {
    switch (n) {
        case cocycle_name::J3: return "J3";
        case cocycle_name::J4: return "J4";
        case cocycle_name::J5: return "J5";
        case cocycle_name::J6_0: return "J6_0";
        case cocycle_name::J6_m4: return "J6_m4";
    }
    return "?";
}

std::optional<invariant_name> parse_invariant_name(std::string_view s) {
    if (s == "I3") return invariant_name::I3;
    if (s == "I4") return invariant_name::I4;
    if (s == "I5") return invariant_name::I5;
    if (s == "I6") return invariant_name::I6;
    if (s == "I6'" || s == "I6p") return invariant_name::I6p;
    return std::nullopt;
}

std::optional<cocycle_name> parse_cocycle_name(std::string_view s) {
    if (s == "J3") return cocycle_name::J3;
    if (s == "J4") return cocycle_name::J4;
    if (s == "J5") return cocycle_name::J5;
    if (s == "J6_0" || s == "J6") return cocycle_name::J6_0;
    if (s == "J6_m4" || s == "J6'" || s == "J6p") return cocycle_name::J6_m4;
    return std::nullopt;
}

invariant_name invariant_of(cocycle_name n) {
    switch (n) {
        case cocycle_name::J3: return invariant_name::I3;
        case cocycle_name::J4: return invariant_name::I4;
        case cocycle_name::J5: return invariant_name::I5;
        case cocycle_name::J6_0: return invariant_name::I6;
        case cocycle_name::J6_m4: return invariant_name::I6p;
    }
    return invariant_name::I3;
}

cocycle_name cocycle_of(invariant_name n) {
    switch (n) {
        case invariant_name::I3: return cocycle_name::J3;
        case invariant_name::I4: return cocycle_name::J4;
        case invariant_name::I5: return cocycle_name::J5;
        case invariant_name::I6: return cocycle_name::J6_0;
        case invariant_name::I6p: return cocycle_name::J6_m4;
    }
    return cocycle_name::J3;
}

int cocycle_order(cocycle_name n) {
    switch (n) {
        case cocycle_name::J3: return 3;
        case cocycle_name::J4: return 4;
        case cocycle_name::J5: return 5;
        case cocycle_name::J6_0:
        case cocycle_name::J6_m4: return 6;
    }
    return 0;
}

std::optional<rational> fixed_lambda(cocycle_name n) {
    if (n == cocycle_name::J6_0) return rational{0};
    if (n == cocycle_name::J6_m4) return rational{-4};
    return std::nullopt;
}

namespace {

void check_fixed_lambda(cocycle_name n, const param_ratfun& lambda) {
    auto fixed = fixed_lambda(n);
    if (!fixed) return;
    if (!lambda.is_constant() || lambda.constant_value() != *fixed)
        throw precondition_error(to_string(n) + " is defined only at λ = " + fixed->get_str() + " (got " +
                                 lambda.to_string() + ")");
}

param_ratfun q(long n, long d = 1) { return param_ratfun{rational{n, d}}; }

}  // namespace

diff_operator build_invariant_operator(invariant_name name, const param_ratfun& lambda, chart_mode mode) {
    check_fixed_lambda(cocycle_of(name), lambda);
    const diff_poly r = projective_r(mode);
    const diff_poly r1 = nabla_r(1, mode), r2 = nabla_r(2, mode);
    const param_ratfun& l = lambda;
    const int k = cocycle_order(cocycle_of(name));
    const param_ratfun target = l + param_ratfun{k - 1};
    std::vector<diff_poly> c;
    switch (name) {
        case invariant_name::I3: c = {r}; break;
        case invariant_name::I4: c = {r1.scaled(-l / q(2)), r}; break;
        case invariant_name::I5: {
            param_ratfun two_l1 = l * param_ratfun{2} + q(1);
            c = {r2.scaled(l * two_l1 / q(10)) + (r * r).scaled(l * (l + q(3)) / q(5)), r1.scaled(-two_l1 / q(2)), r};
            break;
        }
        case invariant_name::I6: c = {diff_poly{}, r2.scaled(q(3, 10)) + (r * r).scaled(q(4, 5)), r1.scaled(q(-3, 2)), r}; break;
        case invariant_name::I6p:
            c = {nabla_r(3, mode).scaled(q(14, 5)) + (r * r1).scaled(q(8, 5)),
                 r2.scaled(q(63, 10)) + (r * r).scaled(q(4, 5)), r1.scaled(q(9, 2)), r};
            break;
    }
    return {lambda, target, std::move(c), mode};
}

std::vector<param_ratfun> cocycle_leading_coefficients(cocycle_name name, const param_ratfun& lambda) {
    check_fixed_lambda(name, lambda);
    const param_ratfun& l = lambda;
    switch (name) {
        case cocycle_name::J3: return {q(1)};
        case cocycle_name::J4: return {q(1), -l / q(2)};
        case cocycle_name::J5: {
            param_ratfun two_l1 = l * param_ratfun{2} + q(1);
            return {q(1), -two_l1 / q(2), l * two_l1 / q(10)};
        }
        case cocycle_name::J6_0: return {q(1), q(-3, 2), q(3, 10), q(0)};
        case cocycle_name::J6_m4: return {q(1), q(9, 2), q(63, 10), q(14, 5)};
    }
    return {};
}

diff_poly leading_part(const std::vector<param_ratfun>& b, int k, const param_ratfun& lambda, chart_mode mode) {
    diff_poly out;
    const diff_poly x = diff_poly::jet(sym::X()), phi = diff_poly::jet(sym::phi());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].is_zero()) continue;
        const int ix = 3 + static_cast<int>(i), iphi = k - ix;
        out += (nabla_power(x, param_ratfun{-1}, ix, mode) * nabla_power(phi, lambda, iphi, mode)).scaled(b[i]);
    }
    return out;
}

cochain build_cocycle(cocycle_name name, const param_ratfun& lambda, chart_mode mode) {
    const int k = cocycle_order(name);
    auto b = cocycle_leading_coefficients(name, lambda);
    auto op = build_invariant_operator(invariant_of(name), lambda, mode);
    const diff_poly x = diff_poly::jet(sym::X());
    diff_poly value = leading_part(b, k, lambda, mode);
    if (!op.is_zero()) value -= lie_action_on_image(x, op.image(), op.source(), op.target());
    return {to_string(name), lambda, op.target(), mode, {value, sym::X(), sym::phi()}};
}

cochain coboundary_of(const diff_operator& a, std::string name) {
    return {std::move(name), a.source(), a.target(), a.mode(), lie_action_operator(diff_poly::jet(sym::X()), a)};
}

}  // namespace projcoh
