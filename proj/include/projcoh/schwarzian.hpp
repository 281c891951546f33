#pragma once

// Truncated jets of point maps, their composition, the Schwarzian derivative
// and the transformation law of projective connections.

#include <optional>
#include <string>
#include <vector>

#include "projcoh/operators.hpp"

namespace projcoh {

struct non_invertible_jet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Jets f^(1), ..., f^(N) of a map at a base point, optionally with the value
/// f itself. Expressions in z are functions of the base point.
class jet_series {
public:
    explicit jet_series(std::vector<diff_poly> jets, std::optional<diff_poly> value = std::nullopt);

    /// Jets of a formal map symbol: f', f'', ...
    static jet_series symbolic(symbol f, int order);
    static jet_series identity(int order);
    /// Derivatives of an expression in z, with its value.
    static jet_series of_function(const diff_poly& f, int order);
    /// (a t + b)/(c t + d) at the point t, with symbolic a, b, c, d, t.
    static jet_series mobius(int order);

    int order() const { return static_cast<int>(jets_.size()); }
    /// k-th derivative, 1 ≤ k ≤ order.
    const diff_poly& operator[](int k) const;
    const std::vector<diff_poly>& jets() const { return jets_; }
    const std::optional<diff_poly>& value() const { return value_; }
    jet_series truncated(int order) const;

    std::string to_string() const;

private:
    std::vector<diff_poly> jets_;
    std::optional<diff_poly> value_;
};

/// Inverse of a first jet: a nonzero constant or a single invertible term.
diff_poly invert_first_jet(const diff_poly& f1);

/// Jets of f∘g (f's jets are taken at the image point g) up to the shared order.
jet_series compose_jets(const jet_series& f, const jet_series& g);

/// S(f) = f'''/f' − (3/2)(f''/f')².
diff_poly schwarzian(const jet_series& f);

/// S(f∘g) − S(f)·g'² − S(g) for formal maps f, g.
diff_poly verify_schwarzian_cocycle(int order);
diff_poly schwarzian_cocycle_residual(const jet_series& f, const jet_series& g);

/// R in the source chart from R in the target chart: R∘f·f'² + S(f).
diff_poly transport_projective_connection(const diff_poly& r_target, const jet_series& f);

/// Difference between transporting a free R by f then g and by f∘g at once.
diff_poly verify_projective_transition_consistency(int order);
diff_poly transition_residual(const jet_series& f, const jet_series& g);

/// R_source − R_target f'² − S(f) where both R are built from connections
/// related by Γ_source = Γ_target∘f·f' + f''/f'. Zero confirms the sign
/// used by transport_projective_connection.
diff_poly derive_transition_law_residual();

struct correspondence_report {
    invariant_name name;
    diff_operator substituted;  // I_k with Γ = 0 and R ↦ −S
    diff_operator printed;      // the group cocycle in S and d/dx
    int sign = 1;               // global sign applied to substituted
    diff_operator residual;     // sign·substituted − printed
    bool match = false;
    /// Every residual term has even degree in the S-jets.
    bool residual_even = true;
    /// Same comparison for R ↦ +S.
    diff_operator alternate_residual;
    bool alternate_match = false;
};

/// The Diff(S¹) cocycle paired with I_k, in the free symbol S.
diff_operator printed_group_cocycle(invariant_name name, const param_ratfun& lambda);
correspondence_report check_sch_correspondence(invariant_name name, const param_ratfun& lambda);

}  // namespace projcoh
