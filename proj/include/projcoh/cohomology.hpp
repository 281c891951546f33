#pragma once

// Cocycle and sl2-vanishing checks, projective-class invariance, coboundary
// solving, classification of invariant bilinear operators and the table of
// relative cohomology dimensions.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "projcoh/linear_system.hpp"
#include "projcoh/operators.hpp"

namespace projcoh {

/// c([X,Y]) − L_X(c(Y)) + L_Y(c(X)); zero iff c is a 1-cocycle.
diff_poly verify_cocycle(const cochain& c);

struct generator_residual {
    std::string generator;  // "1", "z", "z^2"
    diff_poly residual;
};

/// The projective vector fields 1, z, z² (times d/dz).
std::vector<std::pair<std::string, diff_poly>> sl2_generators();

/// c(X) for X ∈ {1, z, z²}; a free R is first expressed through Γ.
std::vector<generator_residual> verify_sl2_vanishing(const cochain& c);

/// δ^(k) for k = 1..order written in Γ-jets and δ, from R(Γ + δ) = R(Γ).
std::vector<std::pair<jet_var, diff_poly>> derive_delta_constraint(int order);

/// Rewrites every δ-jet of positive order with the rules above.
diff_poly apply_delta_rules(const diff_poly& a);

/// An invariant-operator template: R∇^{k−3} plus unknown multiples of the
/// lower R-monomials of matching weight.
struct invariance_template {
    invariant_name name;
    param_ratfun lambda;
    diff_operator op;                 // covariant_free_r chart
    std::vector<param> unknowns;      // coefficients inside op
    std::vector<param> leading;       // b_1, b_2, ... of the matching cocycle
};

invariance_template make_invariance_template(invariant_name name, const param_ratfun& lambda);

struct invariance_report {
    /// template(Γ) − template(Γ + δ) with δ-jets rewritten, applied to φ.
    diff_poly residual;
    linear_system system;
    solve_report solution;
    /// Template with the solution substituted (when solvable and unique).
    std::optional<diff_operator> recovered;
    std::vector<param> undetermined;
};

/// Projective-class invariance alone: the residual for arbitrary values of
/// the unknowns and the linear conditions it imposes.
invariance_report verify_projective_invariance(const diff_operator& tmpl, const std::vector<param>& unknowns);

/// Projective invariance stacked with sl2-vanishing of the associated
/// cocycle; R² type coefficients are invisible to the first condition alone.
invariance_report recover_invariant_operator(invariant_name name, const param_ratfun& lambda);

/// Coefficients of the paper operator in the template's unknowns.
std::map<param, param_ratfun> printed_coefficients(const invariance_template& t);

struct coboundary_report {
    solve_report solution;
    int order_bound = 0;
    int order_needed = 0;
    /// Unsolvable, but a larger ansatz could still succeed.
    bool indeterminate = false;
    std::optional<diff_operator> witness;                 // generic witness
    std::vector<std::pair<rational, diff_operator>> exceptional_witnesses;
    /// Ansatz with coefficients polynomial in z (degree ≤ 2) found the same
    /// solvability pattern.
    bool widened_consistent = true;
    std::vector<rational> widened_extra_values;
};

/// Solves L_X(A) = c(X) for A = Σ_{i ≤ order_bound} a_i d^i in the flat chart.
coboundary_report solve_coboundary(const cochain& c, int order_bound);
/// Default order bound: the order that can possibly produce c.
coboundary_report solve_coboundary(const cochain& c);

struct dimension_jump {
    rational lambda;
    std::size_t dimension = 0;
};

struct classify_report {
    int m = 0;
    param_ratfun w1, w2;
    symbol first, second;
    std::vector<bidiff_expr> basis;  // normalized, generic parameters
    std::size_t dimension = 0;
    std::vector<dimension_jump> jumps;
    std::vector<param_poly> unresolved_factors;
    /// The basis is also annihilated by the actions of 1 and z.
    bool translation_and_scaling_verified = false;
    linear_system system;
};

/// sl2-invariant bilinear maps F_{w1} ⊗ F_{w2} → F_{w1+w2+m} of total order m.
classify_report classify_invariant_bilinear(int m, const param_ratfun& w1, const param_ratfun& w2,
                                            symbol first = sym::phi(), symbol second = sym::psi());

/// Scales a coefficient vector to primitive integral polynomial form.
std::vector<param_ratfun> normalize_vector(std::vector<param_ratfun> v);

struct table_cell {
    rational lambda;
    std::size_t cocycles = 0;      // dim Z
    std::size_t coboundaries = 0;  // dim B
    std::size_t dimension = 0;     // dim H = dim Z − dim B
};

struct table_row {
    int k = 0;  // μ − λ
    std::size_t generic_cocycles = 0, generic_coboundaries = 0, generic_dimension = 0;
    std::vector<table_cell> exceptional;  // only λ where some dimension differs from generic
    std::vector<bidiff_expr> generic_basis;
    std::vector<std::string> notes;
    /// The printed case list, as (generic dimension, exceptional λ ↦ dimension).
    std::size_t printed_generic = 0;
    std::map<rational, std::size_t> printed_exceptional;
    bool matches_printed = false;

    std::size_t dimension_at(const rational& lambda) const;
};

table_row cohomology_row(int k);
/// Rows for k_min..k_max, computed concurrently.
std::vector<table_row> cohomology_table(int k_min, int k_max);

}  // namespace projcoh
