#pragma once

// Linear systems over Q(params) and their exact solution with detection of
// the parameter values where solvability or solution dimension changes.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "projcoh/scalar_field.hpp"

namespace projcoh {

/// Rows are equations Σ_j rows[i][j]·unknowns[j] = rhs[i]. Rows are stored
/// with denominators cleared, scaled to integral primitive form with a positive
/// leading entry; polynomial factors common to a row are kept so that
/// specialization stays faithful. Duplicates are dropped on insertion.
class linear_system {
public:
    linear_system() = default;
    explicit linear_system(std::vector<param> unknowns) : unknowns_{std::move(unknowns)} {}

    const std::vector<param>& unknowns() const { return unknowns_; }
    const std::vector<std::vector<param_ratfun>>& rows() const { return rows_; }
    const std::vector<param_ratfun>& rhs() const { return rhs_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    /// Returns false when the row was trivial (0 = 0) or a duplicate.
    bool add_row(std::vector<param_ratfun> coeffs, param_ratfun rhs);
    void append(const linear_system& other);

    /// Denominators cleared from inserted rows.
    const std::vector<param_poly>& cleared_denominators() const { return cleared_; }

    /// Parameters occurring in any entry (unknowns excluded).
    std::vector<param> parameters() const;

    linear_system specialize(param p, const rational& value) const;

    std::string to_string() const;

private:
    std::vector<param> unknowns_;
    std::vector<std::vector<param_ratfun>> rows_;
    std::vector<param_ratfun> rhs_;
    std::vector<param_poly> cleared_;
};

enum class resolution { becomes_solvable, becomes_unsolvable, dimension_jump };
std::string to_string(resolution r);

struct exceptional_value {
    rational value;
    resolution kind = resolution::dimension_jump;
    bool solvable = false;
    std::size_t rank = 0;
    std::size_t solution_dimension = 0;
    std::map<param, rational> solution;  // particular solution when solvable
};

struct solve_report {
    bool generic_solvable = false;
    std::size_t rank = 0;
    /// Dimension of the solution set when solvable (kernel dimension).
    std::size_t solution_dimension = 0;
    std::map<param, param_ratfun> solution;
    std::vector<std::map<param, param_ratfun>> kernel_basis;
    std::vector<param_poly> obstruction_factors;
    std::vector<param_poly> pivot_factors;
    /// The single parameter the exceptional analysis ran over, if any.
    std::optional<param> parameter;
    std::vector<exceptional_value> exceptional_values;
    /// Factors whose roots are irrational or that involve several parameters.
    std::vector<param_poly> unresolved_factors;

    const exceptional_value* at(const rational& v) const;
};

/// Fraction-free elimination with lowest-degree pivoting. Every pivot,
/// obstruction and cancelled row content is a candidate exceptional factor;
/// each rational root of a candidate is re-solved exactly.
solve_report solve(const linear_system& system);

struct rational_solution {
    bool solvable = false;
    std::size_t rank = 0;
    std::size_t kernel_dimension = 0;
    std::vector<rational> particular;
};

/// Plain Gaussian elimination for a system with constant entries.
rational_solution solve_rational(const linear_system& system);

}  // namespace projcoh
