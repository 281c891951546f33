#pragma once

// Linear differential operators between density modules, the Lie derivative
// action on densities and on operators, transvectants, and the projectively
// invariant operators I_k with their cocycles J_k.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "projcoh/diffpoly.hpp"

namespace projcoh {

/// flat: Γ = R = 0 and ∇ is d/dz. covariant: ∇ uses the symbol Γ and R is
/// eliminated as Γ′ − Γ²/2. covariant_free_r: ∇ uses Γ and R is an
/// independent 2-density.
enum class chart_mode { flat, covariant, covariant_free_r };

std::string to_string(chart_mode m);
std::optional<chart_mode> parse_chart_mode(std::string_view s);

/// ∇a for a density of weight w (plain d/dz in the flat chart).
diff_poly nabla(const diff_poly& a, const param_ratfun& weight, chart_mode mode);
diff_poly nabla_power(const diff_poly& a, const param_ratfun& weight, int k, chart_mode mode);

/// R in the given chart: 0, Γ′ − Γ²/2, or the free symbol R.
diff_poly projective_r(chart_mode mode);
/// ∇^k R, R treated as a 2-density.
diff_poly nabla_r(int k, chart_mode mode);
/// R ↦ Γ′ − Γ²/2 (covariant), R ↦ 0 (flat), unchanged otherwise.
diff_poly eliminate_r(const diff_poly& a, chart_mode mode);

/// A = Σ a_i ∇^i : F_source → F_target.
class diff_operator {
public:
    diff_operator(param_ratfun source, param_ratfun target, std::vector<diff_poly> coefficients,
                  chart_mode mode);

    static diff_operator identity(const param_ratfun& weight, chart_mode mode);
    /// ∇^k (d^k in the flat chart) from F_w to F_{w+k}.
    static diff_operator derivative(const param_ratfun& weight, int k, chart_mode mode);
    /// Multiplication by a function of the given weight.
    static diff_operator multiplication(const diff_poly& c, const param_ratfun& source,
                                        const param_ratfun& c_weight, chart_mode mode);
    /// Reads the coefficients off an expression linear in the jets of arg.
    static diff_operator from_image(const diff_poly& image, symbol arg, const param_ratfun& source,
                                    const param_ratfun& target, chart_mode mode);

    const param_ratfun& source() const { return source_; }
    const param_ratfun& target() const { return target_; }
    chart_mode mode() const { return mode_; }
    int order() const { return static_cast<int>(coefficients_.size()) - 1; }
    const std::vector<diff_poly>& coefficients() const { return coefficients_; }
    diff_poly coefficient(int i) const;
    bool is_zero() const { return coefficients_.empty(); }

    /// A applied to an expression taken to be a density of the source weight.
    diff_poly apply(const diff_poly& arg) const;
    /// A applied to a formal density; its weight must equal the source weight.
    diff_poly apply(const function_symbol& arg) const;
    /// A(φ) for the standard argument symbol φ.
    diff_poly image() const;

    diff_operator scaled(const param_ratfun& c) const;
    friend diff_operator operator+(const diff_operator& a, const diff_operator& b);
    friend diff_operator operator-(const diff_operator& a, const diff_operator& b);

    std::string to_string() const;
    std::string to_latex() const;

private:
    param_ratfun source_, target_;
    std::vector<diff_poly> coefficients_;
    chart_mode mode_;
};

struct weight_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// B ∘ A.
diff_operator compose(const diff_operator& b, const diff_operator& a);

/// A value linear in the jets of a field symbol and of an argument symbol.
struct bidiff_expr {
    diff_poly value;
    symbol field = sym::X();
    symbol argument = sym::phi();

    bool is_zero() const { return value.is_zero(); }
    /// (field jet order i, argument jet order j) ↦ coefficient, in raw jets.
    std::map<std::pair<int, int>, diff_poly> table() const;
    /// Replaces the field by an expression (e.g. a generator or a bracket).
    bidiff_expr at(const diff_poly& field_value) const;
    std::string to_string() const { return value.to_string(); }
    std::string to_latex() const { return value.to_latex(); }
};

/// L_X^λ(φ) = X∇φ + λφ∇X.
diff_poly lie_action_density(const diff_poly& x, const diff_poly& arg, const param_ratfun& lambda,
                             chart_mode mode);
diff_poly lie_action_density(const function_symbol& x, const function_symbol& arg, chart_mode mode);

/// L_X^{λ,μ} applied to an operator given by its image on φ.
diff_poly lie_action_on_image(const diff_poly& x, const diff_poly& image, const param_ratfun& lambda,
                              const param_ratfun& mu, symbol arg = sym::phi());
/// L_X^{λ,μ}(A) = L_X^μ ∘ A − A ∘ L_X^λ.
bidiff_expr lie_action_operator(const diff_poly& x, const diff_operator& a);

/// XY′ − YX′.
diff_poly vf_bracket(const diff_poly& x, const diff_poly& y);

/// t(t−1)⋯(t−i+1)/i!.
param_ratfun falling_binomial(const param_ratfun& t, int i);

/// Σ_{i+j=m} (−1)^i m! C(2λ+m−1, i) C(2μ+m−1, j) φ^(i) ψ^(j).
bidiff_expr transvectant(int m, const param_ratfun& lambda, const param_ratfun& mu, symbol first = sym::phi(),
                         symbol second = sym::psi());

enum class invariant_name { I3, I4, I5, I6, I6p };
enum class cocycle_name { J3, J4, J5, J6_0, J6_m4 };

std::string to_string(invariant_name n);
std::string to_string(cocycle_name n);
std::optional<invariant_name> parse_invariant_name(std::string_view s);
std::optional<cocycle_name> parse_cocycle_name(std::string_view s);
invariant_name invariant_of(cocycle_name n);
cocycle_name cocycle_of(invariant_name n);
/// Order k of the cocycle (3, 4, 5, 6, 6); the target weight is λ + k − 1.
int cocycle_order(cocycle_name n);
/// The weight an order-6 name is pinned to.
std::optional<rational> fixed_lambda(cocycle_name n);

struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The operators I_3, ..., I_6′ with coefficients in ∇^k R. Throws
/// precondition_error when I6/I6′ is requested away from λ = 0 / λ = −4.
diff_operator build_invariant_operator(invariant_name name, const param_ratfun& lambda,
                                       chart_mode mode = chart_mode::covariant);

/// Coefficients b_i of ∇^{3+i}X ∇^{k−3−i}φ in J_k, with b_0 = 1.
std::vector<param_ratfun> cocycle_leading_coefficients(cocycle_name name, const param_ratfun& lambda);

/// A cochain X ↦ c(X) ∈ D_{λ,μ}, stored as its value on the generic field X.
struct cochain {
    std::string name;
    param_ratfun lambda, mu;
    chart_mode mode = chart_mode::flat;
    bidiff_expr generic;

    bidiff_expr operator()(const diff_poly& x) const { return generic.at(x); }
};

/// Σ b_i ∇^{3+i}X ∇^{k−3−i}φ for arbitrary coefficients.
diff_poly leading_part(const std::vector<param_ratfun>& b, int k, const param_ratfun& lambda, chart_mode mode);

/// J_k(X) = leading part − L_X^{λ,λ+k−1}(I_k).
cochain build_cocycle(cocycle_name name, const param_ratfun& lambda, chart_mode mode = chart_mode::covariant);

/// X ↦ L_X(A).
cochain coboundary_of(const diff_operator& a, std::string name = "coboundary");

}  // namespace projcoh
