#include "projcoh/schwarzian.hpp"

#include <sstream>

namespace projcoh {

jet_series::jet_series(std::vector<diff_poly> jets, std::optional<diff_poly> value)
    : jets_{std::move(jets)}, value_{std::move(value)} {
    if (jets_.empty()) throw std::invalid_argument("a jet series needs at least the first derivative");
}

jet_series jet_series::symbolic(symbol f, int order) {
    std::vector<diff_poly> j;
    for (int k = 1; k <= order; ++k) j.push_back(diff_poly::jet(f, k));
    return jet_series{std::move(j)};
}

jet_series jet_series::identity(int order) {
    std::vector<diff_poly> j(static_cast<std::size_t>(order));
    j.front() = diff_poly{1};
    return jet_series{std::move(j), diff_poly::z()};
}

jet_series jet_series::of_function(const diff_poly& f, int order) {
    std::vector<diff_poly> j;
    diff_poly d = f;
    for (int k = 1; k <= order; ++k) {
        d = total_derivative(d);
        j.push_back(d);
    }
    return jet_series{std::move(j), f};
}

jet_series jet_series::mobius(int order) {
    auto v = [](const char* n) { return param_ratfun::variable(param::intern(n, n)); };
    const param t = param::intern("t", "t");
    param_ratfun f = (v("a") * v("t") + v("b")) / (v("c") * v("t") + v("d"));
    std::vector<diff_poly> j;
    param_ratfun d = f;
    for (int k = 1; k <= order; ++k) {
        d = d.derivative(t);
        j.emplace_back(d);
    }
    return jet_series{std::move(j), diff_poly{f}};
}

const diff_poly& jet_series::operator[](int k) const {
    if (k < 1 || k > order()) throw std::out_of_range("jet index " + std::to_string(k) + " outside 1.." + std::to_string(order()));
    return jets_[static_cast<std::size_t>(k - 1)];
}

jet_series jet_series::truncated(int order) const {
    if (order < 1 || order > this->order()) throw std::out_of_range("cannot truncate to order " + std::to_string(order));
    return jet_series{{jets_.begin(), jets_.begin() + order}, value_};
}

std::string jet_series::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < jets_.size(); ++i) os << (i ? ", " : "") << jets_[i].to_string();
    os << "]";
    return os.str();
}

diff_poly invert_first_jet(const diff_poly& f1) {
    if (f1.is_zero()) throw non_invertible_jet("first jet vanishes");
    if (f1.is_constant()) return diff_poly{f1.constant_term().inverse()};
    if (f1.size() == 1) return f1.inverse();
    throw non_invertible_jet("first jet " + f1.to_string() + " is not invertible in the jet ring");
}

namespace {

diff_poly substitute_z(const diff_poly& a, const diff_poly& value) {
    diff_poly out;
    for (auto& [m, c] : a.terms()) {
        if (m.z_degree == 0) {
            out += diff_poly::from_term(m, c);
            continue;
        }
        monomial rest = m;
        rest.z_degree = 0;
        out += diff_poly::from_term(std::move(rest), c) * value.pow(static_cast<int>(m.z_degree));
    }
    return out;
}

bool depends_on_z(const diff_poly& a) {
    for (auto& [m, c] : a.terms())
        if (m.z_degree) return true;
    return false;
}

}  // namespace

jet_series compose_jets(const jet_series& f, const jet_series& g) {
    const int n = std::min(f.order(), g.order());
    if (f[1].is_zero() || g[1].is_zero()) throw non_invertible_jet("composition needs invertible first jets");
    // f's jets live at the image point g(z).
    std::vector<diff_poly> fj;
    for (int k = 1; k <= n; ++k) {
        const diff_poly& a = f[k];
        if (depends_on_z(a)) {
            if (!g.value()) throw std::invalid_argument("outer jets depend on the point but the inner map has no value");
            fj.push_back(substitute_z(a, *g.value()));
        } else {
            fj.push_back(a);
        }
    }
    // Partial Bell polynomials B[i][k] in g', g'', ...
    std::vector<std::vector<diff_poly>> bell(static_cast<std::size_t>(n) + 1,
                                             std::vector<diff_poly>(static_cast<std::size_t>(n) + 1));
    bell[0][0] = diff_poly{1};
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= i; ++k) {
            diff_poly acc;
            rational binom = 1;  // C(i−1, r−1)
            for (int r = 1; r <= i - k + 1; ++r) {
                if (r > 1) binom = binom * (i - r + 1) / (r - 1);
                const auto& prev = bell[static_cast<std::size_t>(i - r)][static_cast<std::size_t>(k - 1)];
                if (!prev.is_zero()) acc += (g[r] * prev).scaled(param_ratfun{binom});
            }
            bell[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = acc;
        }
    std::vector<diff_poly> out;
    for (int i = 1; i <= n; ++i) {
        diff_poly acc;
        for (int k = 1; k <= i; ++k) acc += fj[static_cast<std::size_t>(k - 1)] * bell[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        out.push_back(std::move(acc));
    }
    std::optional<diff_poly> value;
    if (f.value() && g.value()) value = substitute_z(*f.value(), *g.value());
    return jet_series{std::move(out), std::move(value)};
}

diff_poly schwarzian(const jet_series& f) {
    if (f.order() < 3) throw std::invalid_argument("the Schwarzian needs jets up to order 3");
    const diff_poly inv = invert_first_jet(f[1]);
    const diff_poly ratio = f[2] * inv;
    return f[3] * inv - (ratio * ratio).scaled(param_ratfun{rational{3, 2}});
}

diff_poly schwarzian_cocycle_residual(const jet_series& f, const jet_series& g) {
    const diff_poly g1 = g[1];
    return schwarzian(compose_jets(f, g)) - schwarzian(f) * g1 * g1 - schwarzian(g);
}

diff_poly verify_schwarzian_cocycle(int order) {
    if (order < 3) throw std::invalid_argument("the Schwarzian cocycle needs order at least 3");
    return schwarzian_cocycle_residual(jet_series::symbolic(sym::f(), order), jet_series::symbolic(sym::g(), order));
}

diff_poly transport_projective_connection(const diff_poly& r_target, const jet_series& f) {
    return r_target * f[1] * f[1] + schwarzian(f);
}

diff_poly transition_residual(const jet_series& f, const jet_series& g) {
    const diff_poly r = diff_poly::jet(sym::R());
    const diff_poly stepwise = transport_projective_connection(transport_projective_connection(r, f), g);
    const diff_poly direct = transport_projective_connection(r, compose_jets(f, g));
    return stepwise - direct;
}

diff_poly verify_projective_transition_consistency(int order) {
    if (order < 3) throw std::invalid_argument("transition consistency needs order at least 3");
    return transition_residual(jet_series::symbolic(sym::f(), order), jet_series::symbolic(sym::g(), order));
}

diff_poly derive_transition_law_residual() {
    // Target-chart connection, a function of the image point f(z).
    const symbol gt = symbol::intern("Γt", symbol_kind::connection, "\\tilde\\Gamma");
    const diff_poly f1 = diff_poly::jet(sym::f(), 1);
    auto chain_derivative = [&](const diff_poly& a) {
        diff_poly out;
        for (auto& [m, c] : a.terms()) {
            for (std::size_t i = 0; i < m.factors.size(); ++i) {
                auto [key, e] = m.factors[i];
                auto v = jet_var::from_key(key);
                monomial rest = m;
                if (e == 1) rest.factors.erase(rest.factors.begin() + static_cast<std::ptrdiff_t>(i));
                else rest.factors[i].second = e - 1;
                diff_poly d = diff_poly::jet(v.sym, v.order + 1);
                if (v.sym == gt) d = d * f1;
                out += diff_poly::from_term(std::move(rest), c * param_ratfun{e}) * d;
            }
        }
        return out;
    };
    const auto f = jet_series::symbolic(sym::f(), 3);
    const diff_poly inv = invert_first_jet(f[1]);
    const diff_poly g_target = diff_poly::jet(gt);
    const diff_poly g_source = g_target * f[1] + f[2] * inv;
    const diff_poly half{param_ratfun{rational{1, 2}}};
    const diff_poly r_source = chain_derivative(g_source) - half * g_source * g_source;
    const diff_poly r_target = diff_poly::jet(gt, 1) - half * g_target * g_target;
    return r_source - r_target * f[1] * f[1] - schwarzian(f);
}

// ---------------------------------------------------------------------------
// Correspondence with the Diff(S¹) cocycles

diff_operator printed_group_cocycle(invariant_name name, const param_ratfun& lambda) {
    const diff_poly s = diff_poly::jet(sym::S()), s1 = diff_poly::jet(sym::S(), 1), s2 = diff_poly::jet(sym::S(), 2),
                    s3 = diff_poly::jet(sym::S(), 3);
    auto q = [](long n, long d = 1) { return param_ratfun{rational{n, d}}; };
    const param_ratfun& l = lambda;
    const int k = cocycle_order(cocycle_of(name));
    std::vector<diff_poly> c;
    switch (name) {
        case invariant_name::I3: c = {s}; break;
        case invariant_name::I4: c = {s1.scaled(-l / q(2)), s}; break;
        case invariant_name::I5: {
            const param_ratfun two_l1 = l * q(2) + q(1);
            c = {s2.scaled(l * two_l1 / q(10)) - (s * s).scaled(l * (l + q(3)) / q(5)), s1.scaled(-two_l1 / q(2)), s};
            break;
        }
        case invariant_name::I6: c = {diff_poly{}, s2.scaled(q(3, 10)) + (s * s).scaled(q(4, 5)), s1.scaled(q(-3, 2)), s}; break;
        case invariant_name::I6p:
            c = {s3.scaled(q(14, 5)) + (s * s1).scaled(q(8, 5)), s2.scaled(q(63, 10)) + (s * s).scaled(q(4, 5)),
                 s1.scaled(q(9, 2)), s};
            break;
    }
    return {lambda, lambda + param_ratfun{k - 1}, std::move(c), chart_mode::flat};
}

namespace {

diff_operator substitute_r(const diff_operator& op, const diff_poly& r_value) {
    std::vector<diff_poly> c;
    for (auto& a : op.coefficients())
        c.push_back(substitute_symbol(substitute_symbol(a, sym::Gamma(), diff_poly{}), sym::R(), r_value));
    return {op.source(), op.target(), std::move(c), chart_mode::flat};
}

bool even_in_s(const diff_operator& op) {
    for (auto& a : op.coefficients())
        for (auto& [m, c] : a.terms()) {
            std::int64_t deg = 0;
            for (auto& [key, e] : m.factors)
                if (jet_var::from_key(key).sym == sym::S()) deg += e;
            if (deg % 2) return false;
        }
    return true;
}

}  // namespace

correspondence_report check_sch_correspondence(invariant_name name, const param_ratfun& lambda) {
    const auto op = build_invariant_operator(name, lambda, chart_mode::covariant_free_r);
    const diff_poly s = diff_poly::jet(sym::S());
    const auto printed = printed_group_cocycle(name, lambda);
    const auto minus = substitute_r(op, -s), plus = substitute_r(op, s);

    // Global sign from the leading coefficients (R ↦ −S turns R∇^k into −S d^k).
    const monomial top = s.terms().begin()->first;
    const rational ratio = (printed.coefficient(printed.order()).coefficient(top) /
                            minus.coefficient(minus.order()).coefficient(top))
                               .constant_value();
    const int sign = ratio < 0 ? -1 : 1;
    const auto residual = minus.scaled(param_ratfun{sign}) - printed;
    const auto alternate = plus - printed;
    return {name, minus, printed, sign, residual, residual.is_zero(), even_in_s(residual), alternate, alternate.is_zero()};
}

}  // namespace projcoh
