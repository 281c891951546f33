#pragma once

// Exact arithmetic in Q(λ, μ, ...): sparse multivariate polynomials over the
// rationals and their fraction field.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace projcoh {

using rational = mpq_class;

std::string to_string(const rational& q);

struct division_by_zero : std::domain_error {
    using std::domain_error::domain_error;
};

struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// A named indeterminate of the coefficient field. λ and μ are always ids 0
/// and 1; everything else (unknown coefficients, Möbius parameters) is
/// interned on first use. Interning is thread-safe.
class param {
public:
    static param lambda() { return param{0}; }
    static param mu() { return param{1}; }
    static param intern(std::string_view name, std::string_view latex = {});
    static param from_id(std::uint16_t id);

    std::uint16_t id() const { return id_; }
    std::string_view name() const;
    std::string_view latex() const;

    auto operator<=>(const param&) const = default;

private:
    explicit param(std::uint16_t id) : id_{id} {}
    std::uint16_t id_;
};

/// Sparse polynomial in the registered parameters with rational
/// coefficients. Terms are kept sorted by decreasing graded-lex order
/// (λ > μ > later params), so the first term is the leading one.
class param_poly {
public:
    using monomial = std::vector<std::pair<std::uint16_t, std::uint32_t>>;
    using term = std::pair<monomial, rational>;

    param_poly() = default;
    param_poly(const rational& c);
    param_poly(long c) : param_poly(rational{c}) {}
    static param_poly variable(param p);
    static param_poly from_term(monomial m, const rational& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    rational constant_value() const;
    rational constant_term() const;
    const std::vector<term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    const monomial& leading_monomial() const;
    const rational& leading_coefficient() const;

    std::vector<param> variables() const;
    bool has_variable(param p) const;
    std::uint32_t degree(param p) const;
    std::uint32_t total_degree() const;

    param_poly operator-() const;
    param_poly& operator+=(const param_poly& o);
    param_poly& operator-=(const param_poly& o);
    param_poly& operator*=(const param_poly& o);
    friend param_poly operator+(param_poly a, const param_poly& b) { return a += b; }
    friend param_poly operator-(param_poly a, const param_poly& b) { return a -= b; }
    friend param_poly operator*(const param_poly& a, const param_poly& b);
    param_poly scaled(const rational& c) const;
    param_poly pow(unsigned n) const;

    param_poly substitute(param p, const param_poly& value) const;
    param_poly evaluate(param p, const rational& value) const;
    rational evaluate(const std::map<param, rational>& at) const;
    param_poly derivative(param p) const;

    /// Coefficients c_k with this = Σ c_k p^k.
    std::vector<param_poly> coefficients_in(param p) const;
    static param_poly from_coefficients(param p, const std::vector<param_poly>& coeffs);

    /// Scaled to leading coefficient 1 (zero stays zero).
    param_poly monic() const;
    /// Scaled to integer coefficients with gcd 1 and positive leading coefficient.
    param_poly primitive_integer() const;

    friend bool operator==(const param_poly&, const param_poly&) = default;

    std::string to_string() const;
    std::string to_latex() const;

private:
    void add_scaled(const param_poly& o, const rational& c);
    std::vector<term> terms_;
};

/// Graded-lex comparison: negative when a < b.
int compare_monomials(const param_poly::monomial& a, const param_poly::monomial& b);

/// Exact quotient; throws std::domain_error when b does not divide a.
param_poly exact_divide(const param_poly& a, const param_poly& b);
/// Monic greatest common divisor (recursive primitive PRS).
param_poly gcd(const param_poly& a, const param_poly& b);

struct root_report {
    param variable = param::lambda();
    std::vector<rational> roots;  // with multiplicity, ascending
    param_poly residual;          // primitive integer factor without rational roots
};

/// All rational roots of a univariate polynomial via the rational-root theorem.
root_report rational_roots(const param_poly& p);

/// Element of the fraction field. Canonical: coprime, monic denominator,
/// zero as 0/1.
class param_ratfun {
public:
    param_ratfun() : den_{1} {}
    param_ratfun(const param_poly& p) : num_{p}, den_{1} {}
    param_ratfun(const rational& c) : num_{c}, den_{1} {}
    param_ratfun(long c) : num_{c}, den_{1} {}
    param_ratfun(const param_poly& num, const param_poly& den);
    static param_ratfun variable(param p) { return param_ratfun{param_poly::variable(p)}; }

    const param_poly& numerator() const { return num_; }
    const param_poly& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return den_.is_one() && num_.is_constant(); }
    rational constant_value() const;
    bool has_variable(param p) const { return num_.has_variable(p) || den_.has_variable(p); }
    std::vector<param> variables() const;

    param_ratfun operator-() const;
    param_ratfun& operator+=(const param_ratfun& o);
    param_ratfun& operator-=(const param_ratfun& o);
    param_ratfun& operator*=(const param_ratfun& o);
    param_ratfun& operator/=(const param_ratfun& o);
    friend param_ratfun operator+(param_ratfun a, const param_ratfun& b) { return a += b; }
    friend param_ratfun operator-(param_ratfun a, const param_ratfun& b) { return a -= b; }
    friend param_ratfun operator*(param_ratfun a, const param_ratfun& b) { return a *= b; }
    friend param_ratfun operator/(param_ratfun a, const param_ratfun& b) { return a /= b; }
    param_ratfun inverse() const;
    param_ratfun pow(int n) const;

    rational evaluate(const std::map<param, rational>& at) const;
    param_ratfun specialize(param p, const rational& value) const;
    param_ratfun substitute(param p, const param_ratfun& value) const;
    param_ratfun derivative(param p) const;

    friend bool operator==(const param_ratfun&, const param_ratfun&) = default;

    std::string to_string() const;
    std::string to_latex() const;

private:
    void normalize();
    param_poly num_;
    param_poly den_;
};

enum class field_op { add, sub, mul, div };
param_ratfun ratfun_arith(const param_ratfun& a, const param_ratfun& b, field_op op);

/// Parses an integer or p/q literal.
rational parse_rational(std::string_view text);

}  // namespace projcoh
