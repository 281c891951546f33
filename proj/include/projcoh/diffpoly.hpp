#pragma once

// Differential polynomials: finite sums of monomials in jets of formal
// function symbols and the coordinate z, with coefficients in Q(λ, μ, ...).

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "projcoh/linear_system.hpp"
#include "projcoh/scalar_field.hpp"

namespace projcoh {

enum class symbol_kind {
    density,
    connection,
    connection_difference,
    projective_connection,
    vector_field,
    jet_map,
};

std::string to_string(symbol_kind k);

/// Interned name of a formal function. The standard symbols below occupy the
/// first ids so monomial order (and hence every rendered report) is stable.
class symbol {
public:
    static symbol intern(std::string_view name, symbol_kind kind, std::string_view latex = {});

    std::uint16_t id() const { return id_; }
    std::string_view name() const;
    std::string_view latex() const;
    symbol_kind kind() const;

    auto operator<=>(const symbol&) const = default;

private:
    explicit symbol(std::uint16_t id) : id_{id} {}
    friend symbol symbol_from_id(std::uint16_t);
    std::uint16_t id_;
};

namespace sym {
symbol X();
symbol Y();
symbol phi();
symbol psi();
symbol Gamma();
symbol delta();
symbol R();
symbol S();
symbol f();
symbol g();
}  // namespace sym

/// A symbol together with its density interpretation. Vector fields are
/// (-1)-densities, the projective connection a 2-density and the difference
/// of two connections a 1-density.
struct function_symbol {
    symbol sym;
    param_ratfun weight;

    symbol_kind kind() const { return sym.kind(); }
};

function_symbol density(symbol s, param_ratfun weight);
function_symbol vector_field(symbol s);
function_symbol connection(symbol s);
function_symbol projective_connection(symbol s);
function_symbol connection_difference(symbol s);

struct jet_var {
    symbol sym;
    std::uint16_t order = 0;

    std::uint32_t key() const { return (std::uint32_t{sym.id()} << 16) | order; }
    static jet_var from_key(std::uint32_t key);
    auto operator<=>(const jet_var&) const = default;
};

struct jet_order_overflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct nonlinear_unknown : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Largest jet order any expression may carry (default 12).
int max_jet_order();
void set_max_jet_order(int order);

/// Product of jet powers and a power of z. Exponents are nonzero integers;
/// negative exponents only arise from inverting a single invertible term.
struct monomial {
    std::vector<std::pair<std::uint32_t, std::int32_t>> factors;  // sorted by jet key
    std::uint32_t z_degree = 0;

    std::int64_t degree() const;
    std::int32_t exponent(const jet_var& v) const;
    bool contains(symbol s) const;
    friend bool operator==(const monomial&, const monomial&) = default;
};

/// Degree-lexicographic order (total degree, then jet keys, then z).
struct monomial_less {
    bool operator()(const monomial& a, const monomial& b) const;
};

monomial operator*(const monomial& a, const monomial& b);

class diff_poly {
public:
    using term_map = std::map<monomial, param_ratfun, monomial_less>;

    diff_poly() = default;
    diff_poly(const param_ratfun& c);
    diff_poly(long c) : diff_poly(param_ratfun{c}) {}
    static diff_poly jet(symbol s, int order = 0);
    static diff_poly jet(const jet_var& v) { return jet(v.sym, v.order); }
    static diff_poly of(const function_symbol& f) { return jet(f.sym, 0); }
    static diff_poly z(std::uint32_t power = 1);
    static diff_poly from_term(monomial m, param_ratfun c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t size() const { return terms_.size(); }
    const term_map& terms() const { return terms_; }
    param_ratfun coefficient(const monomial& m) const;
    /// Constant coefficient (the term with the empty monomial).
    param_ratfun constant_term() const;

    bool contains(symbol s) const;
    int max_order(symbol s) const;
    std::vector<jet_var> jet_vars() const;
    std::vector<param> parameters() const;

    diff_poly operator-() const;
    diff_poly& operator+=(const diff_poly& o);
    diff_poly& operator-=(const diff_poly& o);
    friend diff_poly operator+(diff_poly a, const diff_poly& b) { return a += b; }
    friend diff_poly operator-(diff_poly a, const diff_poly& b) { return a -= b; }
    friend diff_poly operator*(const diff_poly& a, const diff_poly& b);
    diff_poly& operator*=(const diff_poly& o) { return *this = *this * o; }
    diff_poly scaled(const param_ratfun& c) const;
    diff_poly pow(int n) const;
    /// Inverse of a single term with nonzero coefficient.
    diff_poly inverse() const;

    diff_poly map_coefficients(const std::function<param_ratfun(const param_ratfun&)>& fn) const;
    diff_poly specialize(param p, const rational& value) const;
    diff_poly substitute_param(param p, const param_ratfun& value) const;

    friend bool operator==(const diff_poly&, const diff_poly&) = default;

    std::string to_string() const;
    std::string to_latex() const;

private:
    void add_term(const monomial& m, const param_ratfun& c);
    term_map terms_;
};

std::string to_string(const jet_var& v);
std::string to_latex(const jet_var& v);

enum class poly_op { add, sub, mul, scale };
/// For scale, b must be constant.
diff_poly poly_arith(const diff_poly& a, const diff_poly& b, poly_op op);

/// d/dz: Leibniz on jets, dz/dz = 1.
diff_poly total_derivative(const diff_poly& a);
diff_poly total_derivative(const diff_poly& a, int times);

/// ∇a = da/dz − w·Γ·a for a density of weight w; the result has weight w+1.
diff_poly covariant_derivative(const diff_poly& a, const param_ratfun& weight, symbol connection = sym::Gamma());
/// ∇^k with weights w, w+1, ..., w+k−1.
diff_poly covariant_power(const diff_poly& a, const param_ratfun& weight, int k,
                          symbol connection = sym::Gamma());

/// Replaces each jet of target of order k by the k-th total derivative of
/// replacement.
diff_poly substitute_symbol(const diff_poly& a, symbol target, const diff_poly& replacement);
/// Simultaneous replacement of individual jet variables.
diff_poly substitute_jets(const diff_poly& a, const std::map<jet_var, diff_poly>& images);

/// One equation per distinct jet monomial of a, which must be affine-linear
/// in the unknowns.
linear_system collect_linear_system(const diff_poly& a, const std::vector<param>& unknowns);
/// Appends the equations of a to an existing system.
void collect_into(linear_system& system, const diff_poly& a);

/// Terms of a whose monomial contains the given jet with exponent 1, with
/// that factor removed.
diff_poly coefficient_of_jet(const diff_poly& a, const jet_var& v);

}  // namespace projcoh
