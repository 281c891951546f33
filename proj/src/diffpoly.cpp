#include "projcoh/diffpoly.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <set>
#include <unordered_map>

namespace projcoh {

// ---------------------------------------------------------------------------
// Symbols

namespace {

struct symbol_registry {
    std::mutex mutex;
    std::deque<std::string> names;
    std::deque<std::string> latex;
    std::vector<symbol_kind> kinds;
    std::unordered_map<std::string, std::uint16_t> index;

    symbol_registry() {
        add("X", symbol_kind::vector_field, "X");
        add("Y", symbol_kind::vector_field, "Y");
        add("φ", symbol_kind::density, "\\varphi");
        add("ψ", symbol_kind::density, "\\psi");
        add("Γ", symbol_kind::connection, "\\Gamma");
        add("δ", symbol_kind::connection_difference, "\\delta");
        add("R", symbol_kind::projective_connection, "R");
        add("S", symbol_kind::projective_connection, "S");
        add("f", symbol_kind::jet_map, "f");
        add("g", symbol_kind::jet_map, "g");
    }

    std::uint16_t add(std::string_view name, symbol_kind kind, std::string_view tex) {
        auto id = static_cast<std::uint16_t>(names.size());
        names.emplace_back(name);
        latex.emplace_back(tex.empty() ? std::string{name} : std::string{tex});
        kinds.push_back(kind);
        index.emplace(std::string{name}, id);
        return id;
    }
};

symbol_registry& symbols() {
    static symbol_registry r;
    return r;
}

std::atomic<int> g_max_jet_order{12};

}  // namespace

symbol symbol_from_id(std::uint16_t id) { return symbol{id}; }

std::string to_string(symbol_kind k) {
    switch (k) {
        case symbol_kind::density: return "density";
        case symbol_kind::connection: return "connection";
        case symbol_kind::connection_difference: return "connection_difference";
        case symbol_kind::projective_connection: return "projective_connection";
        case symbol_kind::vector_field: return "vector_field";
        case symbol_kind::jet_map: return "jet_map";
    }
    return "unknown";
}

symbol symbol::intern(std::string_view name, symbol_kind kind, std::string_view latex) {
    auto& r = symbols();
    std::lock_guard lock{r.mutex};
    if (auto it = r.index.find(std::string{name}); it != r.index.end()) {
        if (r.kinds[it->second] != kind)
            throw std::invalid_argument("symbol '" + std::string{name} + "' already registered as " +
                                        to_string(r.kinds[it->second]));
        return symbol{it->second};
    }
    if (r.names.size() >= 0xFFFF) throw std::length_error("too many symbols");
    return symbol{r.add(name, kind, latex)};
}

std::string_view symbol::name() const {
    auto& r = symbols();
    std::lock_guard lock{r.mutex};
    return r.names.at(id_);
}

std::string_view symbol::latex() const {
    auto& r = symbols();
    std::lock_guard lock{r.mutex};
    return r.latex.at(id_);
}

symbol_kind symbol::kind() const {
    auto& r = symbols();
    std::lock_guard lock{r.mutex};
    return r.kinds.at(id_);
}

namespace sym {
symbol X() { return symbol_from_id(0); }
symbol Y() { return symbol_from_id(1); }
symbol phi() { return symbol_from_id(2); }
symbol psi() { return symbol_from_id(3); }
symbol Gamma() { return symbol_from_id(4); }
symbol delta() { return symbol_from_id(5); }
symbol R() { return symbol_from_id(6); }
symbol S() { return symbol_from_id(7); }
symbol f() { return symbol_from_id(8); }
symbol g() { return symbol_from_id(9); }
}  // namespace sym

function_symbol density(symbol s, param_ratfun weight) { return {s, std::move(weight)}; }

function_symbol vector_field(symbol s) {
    if (s.kind() != symbol_kind::vector_field) throw std::invalid_argument(std::string{s.name()} + " is not a vector field");
    return {s, param_ratfun{-1}};
}

function_symbol connection(symbol s) {
    if (s.kind() != symbol_kind::connection) throw std::invalid_argument(std::string{s.name()} + " is not a connection");
    return {s, param_ratfun{0}};
}

function_symbol projective_connection(symbol s) {
    if (s.kind() != symbol_kind::projective_connection)
        throw std::invalid_argument(std::string{s.name()} + " is not a projective connection");
    return {s, param_ratfun{2}};
}

function_symbol connection_difference(symbol s) {
    if (s.kind() != symbol_kind::connection_difference)
        throw std::invalid_argument(std::string{s.name()} + " is not a connection difference");
    return {s, param_ratfun{1}};
}

jet_var jet_var::from_key(std::uint32_t key) {
    return {symbol_from_id(static_cast<std::uint16_t>(key >> 16)), static_cast<std::uint16_t>(key & 0xFFFFu)};
}

int max_jet_order() { return g_max_jet_order.load(); }

void set_max_jet_order(int order) {
    if (order < 1 || order > 1000) throw std::invalid_argument("jet bound must lie in [1, 1000]");
    g_max_jet_order.store(order);
}

// ---------------------------------------------------------------------------
// Monomials

std::int64_t monomial::degree() const {
    std::int64_t d = z_degree;
    for (auto& [k, e] : factors) d += e;
    return d;
}

std::int32_t monomial::exponent(const jet_var& v) const {
    auto key = v.key();
    auto it = std::lower_bound(factors.begin(), factors.end(), key,
                               [](const auto& f, std::uint32_t k) { return f.first < k; });
    return it != factors.end() && it->first == key ? it->second : 0;
}

bool monomial::contains(symbol s) const {
    for (auto& [k, e] : factors)
        if ((k >> 16) == s.id()) return true;
    return false;
}

bool monomial_less::operator()(const monomial& a, const monomial& b) const {
    auto da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    if (a.factors != b.factors) return a.factors < b.factors;
    return a.z_degree < b.z_degree;
}

monomial operator*(const monomial& a, const monomial& b) {
    monomial out;
    out.z_degree = a.z_degree + b.z_degree;
    out.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            out.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
            out.factors.push_back(b.factors[j++]);
        } else {
            auto e = a.factors[i].second + b.factors[j].second;
            if (e != 0) out.factors.emplace_back(a.factors[i].first, e);
            ++i;
            ++j;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// diff_poly

diff_poly::diff_poly(const param_ratfun& c) {
    if (!c.is_zero()) terms_.emplace(monomial{}, c);
}

diff_poly diff_poly::jet(symbol s, int order) {
    if (order < 0) throw std::invalid_argument("negative jet order");
    if (order > max_jet_order())
        throw jet_order_overflow("jet order " + std::to_string(order) + " of " + std::string{s.name()} +
                                 " exceeds the bound " + std::to_string(max_jet_order()));
    monomial m;
    m.factors.emplace_back(jet_var{s, static_cast<std::uint16_t>(order)}.key(), 1);
    return from_term(std::move(m), param_ratfun{1});
}

diff_poly diff_poly::z(std::uint32_t power) {
    monomial m;
    m.z_degree = power;
    return from_term(std::move(m), param_ratfun{1});
}

diff_poly diff_poly::from_term(monomial m, param_ratfun c) {
    diff_poly out;
    if (!c.is_zero()) out.terms_.emplace(std::move(m), std::move(c));
    return out;
}

bool diff_poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == monomial{});
}

param_ratfun diff_poly::coefficient(const monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? param_ratfun{} : it->second;
}

param_ratfun diff_poly::constant_term() const { return coefficient(monomial{}); }

bool diff_poly::contains(symbol s) const {
    for (auto& [m, c] : terms_)
        if (m.contains(s)) return true;
    return false;
}

int diff_poly::max_order(symbol s) const {
    int best = -1;
    for (auto& [m, c] : terms_)
        for (auto& [k, e] : m.factors) {
            auto v = jet_var::from_key(k);
            if (v.sym == s) best = std::max(best, int{v.order});
        }
    return best;
}

std::vector<jet_var> diff_poly::jet_vars() const {
    std::set<std::uint32_t> keys;
    for (auto& [m, c] : terms_)
        for (auto& [k, e] : m.factors) keys.insert(k);
    std::vector<jet_var> out;
    for (auto k : keys) out.push_back(jet_var::from_key(k));
    return out;
}

std::vector<param> diff_poly::parameters() const {
    std::set<param> ps;
    for (auto& [m, c] : terms_)
        for (auto p : c.variables()) ps.insert(p);
    return {ps.begin(), ps.end()};
}

void diff_poly::add_term(const monomial& m, const param_ratfun& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

diff_poly diff_poly::operator-() const {
    diff_poly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

diff_poly& diff_poly::operator+=(const diff_poly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

diff_poly& diff_poly::operator-=(const diff_poly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

diff_poly operator*(const diff_poly& a, const diff_poly& b) {
    diff_poly out;
    if (a.is_zero() || b.is_zero()) return out;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

diff_poly diff_poly::scaled(const param_ratfun& c) const {
    if (c.is_zero()) return {};
    if (c.is_one()) return *this;
    diff_poly out = *this;
    for (auto& [m, k] : out.terms_) k *= c;
    return out;
}

diff_poly diff_poly::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    diff_poly out{1}, base = *this;
    while (n) {
        if (n & 1) out *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return out;
}

diff_poly diff_poly::inverse() const {
    if (terms_.size() != 1) throw division_by_zero("only a single nonzero term is invertible: " + to_string());
    const auto& [m, c] = *terms_.begin();
    if (m.z_degree != 0) throw division_by_zero("the coordinate z is not invertible");
    monomial inv;
    for (auto& [k, e] : m.factors) inv.factors.emplace_back(k, -e);
    return from_term(std::move(inv), c.inverse());
}

diff_poly diff_poly::map_coefficients(const std::function<param_ratfun(const param_ratfun&)>& fn) const {
    diff_poly out;
    for (auto& [m, c] : terms_) out.add_term(m, fn(c));
    return out;
}

diff_poly diff_poly::specialize(param p, const rational& value) const {
    return map_coefficients([&](const param_ratfun& c) { return c.specialize(p, value); });
}

diff_poly diff_poly::substitute_param(param p, const param_ratfun& value) const {
    return map_coefficients([&](const param_ratfun& c) { return c.substitute(p, value); });
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string primes(int order) {
    if (order <= 3) return std::string(static_cast<std::size_t>(order), '\'');
    return {};
}

std::string coefficient_prefix(const param_ratfun& c, bool latex) {
    if (c.is_one()) return {};
    if ((-c).is_one()) return "-";
    bool simple = c.is_polynomial() && c.numerator().size() == 1;
    std::string body = latex ? c.to_latex() : c.to_string();
    if (simple) return latex ? body + " " : body + "*";
    return latex ? "\\left(" + body + "\\right) " : "(" + body + ")*";
}

}  // namespace

std::string to_string(const jet_var& v) {
    std::string s{v.sym.name()};
    if (v.order <= 3) return s + primes(v.order);
    return s + "^(" + std::to_string(v.order) + ")";
}

std::string to_latex(const jet_var& v) {
    std::string s{v.sym.latex()};
    if (v.order <= 3) return s + primes(v.order);
    return s + "^{(" + std::to_string(v.order) + ")}";
}

namespace {

std::string monomial_string(const monomial& m, bool latex) {
    std::string s;
    for (auto& [k, e] : m.factors) {
        auto v = jet_var::from_key(k);
        if (!s.empty()) s += latex ? " " : "*";
        if (e == 1) {
            s += latex ? to_latex(v) : to_string(v);
        } else if (latex) {
            s += "{" + to_latex(v) + "}^{" + std::to_string(e) + "}";
        } else {
            s += to_string(v) + "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
        }
    }
    if (m.z_degree > 0) {
        if (!s.empty()) s += latex ? " " : "*";
        s += "z";
        if (m.z_degree > 1) s += latex ? "^{" + std::to_string(m.z_degree) + "}" : "^" + std::to_string(m.z_degree);
    }
    return s;
}

std::string render(const diff_poly::term_map& terms, bool latex) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [m, c] : terms) {
        std::string t;
        if (m == monomial{}) {
            t = latex ? c.to_latex() : c.to_string();
            if (!c.is_polynomial() || c.numerator().size() > 1) t = latex ? "\\left(" + t + "\\right)" : "(" + t + ")";
        } else {
            t = coefficient_prefix(c, latex) + monomial_string(m, latex);
        }
        if (first) {
            out = t;
        } else if (!t.empty() && t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
        first = false;
    }
    return out;
}

}  // namespace

std::string diff_poly::to_string() const { return render(terms_, false); }
std::string diff_poly::to_latex() const { return render(terms_, true); }

// ---------------------------------------------------------------------------
// Operations

diff_poly poly_arith(const diff_poly& a, const diff_poly& b, poly_op op) {
    switch (op) {
        case poly_op::add: return a + b;
        case poly_op::sub: return a - b;
        case poly_op::mul: return a * b;
        case poly_op::scale:
            if (!b.is_constant()) throw std::invalid_argument("scale expects a constant factor");
            return a.scaled(b.constant_term());
    }
    throw std::invalid_argument("unknown polynomial operation");
}

diff_poly total_derivative(const diff_poly& a) {
    diff_poly out;
    const int bound = max_jet_order();
    for (auto& [m, c] : a.terms()) {
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            auto [key, e] = m.factors[i];
            auto v = jet_var::from_key(key);
            if (v.order + 1 > bound)
                throw jet_order_overflow("total derivative of " + to_string(v) + " exceeds the jet bound " +
                                         std::to_string(bound) + " (symbol " + std::string{v.sym.name()} + ")");
            monomial dm = m;
            if (e == 1) dm.factors.erase(dm.factors.begin() + static_cast<std::ptrdiff_t>(i));
            else dm.factors[i].second = e - 1;
            monomial next;
            next.factors.emplace_back(jet_var{v.sym, static_cast<std::uint16_t>(v.order + 1)}.key(), 1);
            out += diff_poly::from_term(dm * next, c * param_ratfun{e});
        }
        if (m.z_degree > 0) {
            monomial dm = m;
            dm.z_degree -= 1;
            out += diff_poly::from_term(std::move(dm), c * param_ratfun{static_cast<long>(m.z_degree)});
        }
    }
    return out;
}

diff_poly total_derivative(const diff_poly& a, int times) {
    diff_poly out = a;
    for (int k = 0; k < times; ++k) out = total_derivative(out);
    return out;
}

diff_poly covariant_derivative(const diff_poly& a, const param_ratfun& weight, symbol connection) {
    diff_poly out = total_derivative(a);
    if (!weight.is_zero()) out -= (diff_poly::jet(connection) * a).scaled(weight);
    return out;
}

diff_poly covariant_power(const diff_poly& a, const param_ratfun& weight, int k, symbol connection) {
    diff_poly out = a;
    param_ratfun w = weight;
    for (int i = 0; i < k; ++i) {
        out = covariant_derivative(out, w, connection);
        w += param_ratfun{1};
    }
    return out;
}

diff_poly substitute_jets(const diff_poly& a, const std::map<jet_var, diff_poly>& images) {
    if (images.empty()) return a;
    std::map<std::uint32_t, const diff_poly*> by_key;
    for (auto& [v, img] : images) by_key.emplace(v.key(), &img);
    std::map<std::pair<std::uint32_t, std::int32_t>, diff_poly> powers;
    auto power_of = [&](std::uint32_t key, std::int32_t e) -> const diff_poly& {
        auto [it, inserted] = powers.try_emplace({key, e});
        if (inserted) it->second = by_key.at(key)->pow(e);
        return it->second;
    };
    diff_poly out;
    for (auto& [m, c] : a.terms()) {
        monomial kept;
        kept.z_degree = m.z_degree;
        std::vector<std::pair<std::uint32_t, std::int32_t>> replaced;
        for (auto& f : m.factors) {
            if (by_key.count(f.first)) replaced.push_back(f);
            else kept.factors.push_back(f);
        }
        diff_poly t = diff_poly::from_term(std::move(kept), c);
        for (auto& [key, e] : replaced) {
            t = t * power_of(key, e);
            if (t.is_zero()) break;
        }
        out += t;
    }
    return out;
}

diff_poly substitute_symbol(const diff_poly& a, symbol target, const diff_poly& replacement) {
    int top = a.max_order(target);
    if (top < 0) return a;
    std::map<jet_var, diff_poly> images;
    diff_poly d = replacement;
    for (int k = 0; k <= top; ++k) {
        images.emplace(jet_var{target, static_cast<std::uint16_t>(k)}, d);
        if (k < top) d = total_derivative(d);
    }
    return substitute_jets(a, images);
}

diff_poly coefficient_of_jet(const diff_poly& a, const jet_var& v) {
    diff_poly out;
    const auto key = v.key();
    for (auto& [m, c] : a.terms()) {
        if (m.exponent(v) != 1) continue;
        monomial rest = m;
        rest.factors.erase(std::find_if(rest.factors.begin(), rest.factors.end(),
                                        [&](const auto& f) { return f.first == key; }));
        out += diff_poly::from_term(std::move(rest), c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Linear systems from polynomial identities

namespace {

// Splits a coefficient c = (Σ u_i·p_i + p_0)/d into its parts.
void split_affine(const param_ratfun& c, const std::vector<param>& unknowns, std::vector<param_ratfun>& coeffs,
                  param_ratfun& constant) {
    for (auto& u : unknowns)
        if (c.denominator().has_variable(u))
            throw nonlinear_unknown("unknown " + std::string{u.name()} + " occurs in a denominator: " + c.to_string());
    std::vector<param_poly> parts(unknowns.size());
    param_poly rest;
    for (auto& [m, k] : c.numerator().terms()) {
        int hits = 0;
        std::size_t which = 0;
        param_poly::monomial reduced;
        for (auto& [v, e] : m) {
            auto it = std::find_if(unknowns.begin(), unknowns.end(), [&](const param& u) { return u.id() == v; });
            if (it == unknowns.end()) {
                reduced.emplace_back(v, e);
                continue;
            }
            hits += static_cast<int>(e);
            which = static_cast<std::size_t>(it - unknowns.begin());
        }
        if (hits > 1)
            throw nonlinear_unknown("nonlinear occurrence of unknowns in coefficient " + c.to_string());
        auto t = param_poly::from_term(std::move(reduced), k);
        if (hits == 0) rest += t;
        else parts[which] += t;
    }
    coeffs.clear();
    for (auto& p : parts) coeffs.emplace_back(p, c.denominator());
    constant = param_ratfun{rest, c.denominator()};
}

}  // namespace

void collect_into(linear_system& system, const diff_poly& a) {
    std::vector<param_ratfun> coeffs;
    param_ratfun constant;
    for (auto& [m, c] : a.terms()) {
        split_affine(c, system.unknowns(), coeffs, constant);
        system.add_row(coeffs, -constant);
    }
}

linear_system collect_linear_system(const diff_poly& a, const std::vector<param>& unknowns) {
    linear_system system{unknowns};
    collect_into(system, a);
    return system;
}

}  // namespace projcoh
