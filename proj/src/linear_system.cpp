#include "projcoh/linear_system.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace projcoh {

namespace {

param_poly lcm(const param_poly& a, const param_poly& b) {
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    return exact_divide(a * b, gcd(a, b)).monic();
}

// Clears denominators and makes the row integral and primitive with a positive
// leading entry. With strip_content the polynomial content is divided out too.
std::vector<param_poly> canonical_row(const std::vector<param_ratfun>& entries, std::vector<param_poly>* cleared,
                                      bool strip_content = true) {
    param_poly den{1};
    for (auto& e : entries) den = lcm(den, e.denominator());
    std::vector<param_poly> polys;
    polys.reserve(entries.size());
    for (auto& e : entries) polys.push_back(e.numerator() * exact_divide(den, e.denominator()));
    param_poly content;
    for (auto& p : polys) {
        if (p.is_zero()) continue;
        if (!strip_content) {
            content = param_poly{1};
            break;
        }
        content = gcd(content, p);
        if (content.is_one()) break;
    }
    if (content.is_zero()) return {};
    if (cleared) {
        if (!den.is_constant()) cleared->push_back(den);
        if (!content.is_constant()) cleared->push_back(content);
    }
    rational scale = 1;
    for (auto& p : polys) {
        if (p.is_zero()) continue;
        auto prim = exact_divide(p, content);
        scale = prim.leading_coefficient();
        break;
    }
    // integral primitive form of the row
    for (auto& p : polys) p = exact_divide(p, content);
    mpz_class den_lcm = 1, num_gcd = 0;
    for (auto& p : polys)
        for (auto& [m, c] : p.terms()) {
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
        }
    rational s{den_lcm, num_gcd};
    s.canonicalize();
    if (scale < 0) s = -s;
    for (auto& p : polys) p = p.scaled(s);
    return polys;
}

}  // namespace

bool linear_system::add_row(std::vector<param_ratfun> coeffs, param_ratfun rhs) {
    if (coeffs.size() != unknowns_.size()) throw std::invalid_argument("row width does not match the unknowns");
    coeffs.push_back(std::move(rhs));
    std::vector<param_poly> cleared;
    auto polys = canonical_row(coeffs, &cleared, false);
    if (polys.empty()) return false;
    std::vector<param_ratfun> row;
    row.reserve(polys.size());
    for (auto& p : polys) row.emplace_back(p);
    param_ratfun b = row.back();
    row.pop_back();
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i] == row && rhs_[i] == b) return false;
    for (auto& c : cleared)
        if (std::find(cleared_.begin(), cleared_.end(), c) == cleared_.end()) cleared_.push_back(c);
    rows_.push_back(std::move(row));
    rhs_.push_back(std::move(b));
    return true;
}

void linear_system::append(const linear_system& other) {
    if (other.unknowns_ != unknowns_) throw std::invalid_argument("cannot append systems over different unknowns");
    for (std::size_t i = 0; i < other.rows_.size(); ++i) add_row(other.rows_[i], other.rhs_[i]);
}

std::vector<param> linear_system::parameters() const {
    std::set<param> ps;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (auto& e : rows_[i])
            for (auto p : e.variables()) ps.insert(p);
        for (auto p : rhs_[i].variables()) ps.insert(p);
    }
    for (auto& u : unknowns_) ps.erase(u);
    return {ps.begin(), ps.end()};
}

linear_system linear_system::specialize(param p, const rational& value) const {
    linear_system out{unknowns_};
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::vector<param_ratfun> row;
        for (auto& e : rows_[i]) row.push_back(e.specialize(p, value));
        out.add_row(std::move(row), rhs_[i].specialize(p, value));
    }
    return out;
}

std::string linear_system::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        bool first = true;
        for (std::size_t j = 0; j < unknowns_.size(); ++j) {
            if (rows_[i][j].is_zero()) continue;
            if (!first) os << " + ";
            os << "(" << rows_[i][j].to_string() << ")*" << unknowns_[j].name();
            first = false;
        }
        if (first) os << "0";
        os << " = " << rhs_[i].to_string() << "\n";
    }
    return os.str();
}

std::string to_string(resolution r) {
    switch (r) {
        case resolution::becomes_solvable: return "becomes_solvable";
        case resolution::becomes_unsolvable: return "becomes_unsolvable";
        case resolution::dimension_jump: return "dimension_jump";
    }
    return "unknown";
}

const exceptional_value* solve_report::at(const rational& v) const {
    for (auto& e : exceptional_values)
        if (e.value == v) return &e;
    return nullptr;
}

rational_solution solve_rational(const linear_system& system) {
    const std::size_t n = system.unknowns().size();
    std::vector<std::vector<rational>> m;
    for (std::size_t i = 0; i < system.size(); ++i) {
        std::vector<rational> row;
        for (auto& e : system.rows()[i]) row.push_back(e.constant_value());
        row.push_back(system.rhs()[i].constant_value());
        m.push_back(std::move(row));
    }
    rational_solution out;
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            rational f = m[i][c];
            for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    out.kernel_dimension = n - r;
    out.solvable = true;
    for (std::size_t i = r; i < m.size(); ++i)
        if (m[i][n] != 0) out.solvable = false;
    if (out.solvable) {
        out.particular.assign(n, rational{0});
        for (std::size_t i = 0; i < r; ++i) out.particular[pivot_cols[i]] = m[i][n];
    }
    return out;
}

namespace {

struct echelon {
    std::vector<std::vector<param_poly>> rows;  // coefficient part + rhs
    std::vector<std::size_t> pivot_cols;
    std::vector<param_poly> pivots;
    std::vector<param_poly> cancelled;
    std::vector<param_poly> obstructions;
};

bool row_zero(const std::vector<param_poly>& row, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j)
        if (!row[j].is_zero()) return false;
    return true;
}

echelon eliminate(const linear_system& system) {
    const std::size_t n = system.unknowns().size();
    echelon e;
    auto& rows = e.rows;
    for (std::size_t i = 0; i < system.size(); ++i) {
        std::vector<param_ratfun> entries = system.rows()[i];
        entries.push_back(system.rhs()[i]);
        auto polys = canonical_row(entries, &e.cancelled);
        if (!polys.empty()) rows.push_back(std::move(polys));
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t best = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i) {
            if (rows[i][c].is_zero()) continue;
            if (best == rows.size()) {
                best = i;
                continue;
            }
            const auto& a = rows[i][c];
            const auto& b = rows[best][c];
            if (a.total_degree() < b.total_degree() ||
                (a.total_degree() == b.total_degree() && a.size() < b.size()))
                best = i;
        }
        if (best == rows.size()) continue;
        std::swap(rows[best], rows[r]);
        const param_poly piv = rows[r][c];
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c].is_zero()) continue;
            const param_poly f = rows[i][c];
            param_poly g = gcd(piv, f);
            param_poly a = exact_divide(piv, g), b = exact_divide(f, g);
            for (std::size_t j = c; j <= n; ++j) rows[i][j] = a * rows[i][j] - b * rows[r][j];
            if (!a.is_constant()) e.cancelled.push_back(a);
            std::vector<param_ratfun> as_ratfun(rows[i].begin(), rows[i].end());
            auto canon = canonical_row(as_ratfun, &e.cancelled);
            if (canon.empty()) canon.assign(n + 1, param_poly{});
            rows[i] = std::move(canon);
        }
        e.pivot_cols.push_back(c);
        e.pivots.push_back(piv);
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (row_zero(rows[i], n) && !rows[i][n].is_zero()) e.obstructions.push_back(rows[i][n]);
    rows.resize(r);
    return e;
}

void add_unique(std::vector<param_poly>& out, const param_poly& p) {
    if (p.is_constant()) return;
    auto q = p.primitive_integer();
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
}

}  // namespace

solve_report solve(const linear_system& system) {
    const std::size_t n = system.unknowns().size();
    const auto& unknowns = system.unknowns();
    solve_report report;
    echelon e = eliminate(system);

    report.rank = e.pivots.size();
    report.generic_solvable = e.obstructions.empty();
    for (auto& o : e.obstructions) {
        if (o.is_constant()) {
            // unconditional contradiction
            if (std::find(report.obstruction_factors.begin(), report.obstruction_factors.end(), param_poly{1}) ==
                report.obstruction_factors.end())
                report.obstruction_factors.push_back(param_poly{1});
        } else {
            add_unique(report.obstruction_factors, o);
        }
    }
    for (auto& p : e.pivots) add_unique(report.pivot_factors, p);

    // back-substitution over the fraction field
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    auto back_substitute = [&](const std::vector<param_ratfun>& free_values, bool homogeneous) {
        std::vector<param_ratfun> x = free_values;
        for (std::size_t i = e.pivot_cols.size(); i-- > 0;) {
            std::size_t c = e.pivot_cols[i];
            param_ratfun acc = homogeneous ? param_ratfun{} : param_ratfun{e.rows[i][n]};
            for (std::size_t j = c + 1; j < n; ++j)
                if (!e.rows[i][j].is_zero() && !x[j].is_zero()) acc -= param_ratfun{e.rows[i][j]} * x[j];
            x[c] = acc / param_ratfun{e.rows[i][c]};
        }
        return x;
    };
    report.solution_dimension = n - report.rank;
    if (report.generic_solvable) {
        auto x = back_substitute(std::vector<param_ratfun>(n), false);
        for (std::size_t j = 0; j < n; ++j) report.solution.emplace(unknowns[j], x[j]);
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<param_ratfun> seed(n);
        seed[f] = param_ratfun{1};
        auto x = back_substitute(seed, true);
        std::map<param, param_ratfun> v;
        for (std::size_t j = 0; j < n; ++j) v.emplace(unknowns[j], x[j]);
        report.kernel_basis.push_back(std::move(v));
    }

    auto params = system.parameters();
    std::vector<param_poly> candidates;
    for (auto& p : e.pivots) add_unique(candidates, p);
    for (auto& p : e.obstructions) add_unique(candidates, p);
    for (auto& p : e.cancelled) add_unique(candidates, p);
    for (auto& p : system.cleared_denominators()) add_unique(candidates, p);
    if (params.size() != 1) {
        report.unresolved_factors = candidates;
        return report;
    }
    const param lam = params.front();
    report.parameter = lam;
    std::set<rational> roots;
    for (auto& c : candidates) {
        if (c.variables().size() != 1) {
            add_unique(report.unresolved_factors, c);
            continue;
        }
        auto rr = rational_roots(c);
        roots.insert(rr.roots.begin(), rr.roots.end());
        if (!rr.residual.is_constant()) add_unique(report.unresolved_factors, rr.residual);
    }
    for (auto& r : roots) {
        auto special = solve_rational(system.specialize(lam, r));
        exceptional_value ev;
        ev.value = r;
        ev.solvable = special.solvable;
        ev.rank = special.rank;
        ev.solution_dimension = special.kernel_dimension;
        if (special.solvable)
            for (std::size_t j = 0; j < n; ++j) ev.solution.emplace(unknowns[j], special.particular[j]);
        if (special.solvable != report.generic_solvable) {
            ev.kind = special.solvable ? resolution::becomes_solvable : resolution::becomes_unsolvable;
        } else if (special.solvable && special.kernel_dimension != report.solution_dimension) {
            ev.kind = resolution::dimension_jump;
        } else {
            continue;
        }
        report.exceptional_values.push_back(std::move(ev));
    }
    return report;
}

}  // namespace projcoh
