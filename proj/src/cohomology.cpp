#include "projcoh/cohomology.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace projcoh {

namespace {

const diff_poly& x_jet() {
    static const diff_poly x = diff_poly::jet(sym::X());
    return x;
}

param unknown(const std::string& name, const std::string& latex) { return param::intern(name, latex); }

std::vector<param> indexed_unknowns(const std::string& stem, int count) {
    std::vector<param> out;
    for (int i = 0; i < count; ++i)
        out.push_back(unknown(stem + std::to_string(i), stem + "_{" + std::to_string(i) + "}"));
    return out;
}

// Flat chart of a cochain: Γ = R = 0.
diff_poly flatten(const diff_poly& a) {
    return substitute_symbol(substitute_symbol(a, sym::R(), diff_poly{}), sym::Gamma(), diff_poly{});
}

std::map<param, param_ratfun> kernel_vector(const solve_report& r, std::size_t i) { return r.kernel_basis.at(i); }

}  // namespace

// ---------------------------------------------------------------------------
// Cocycle and sl2 checks

diff_poly verify_cocycle(const cochain& c) {
    const diff_poly y = diff_poly::jet(sym::Y());
    const diff_poly& cx = c.generic.value;
    const diff_poly cy = c(y).value;
    const diff_poly cxy = c(vf_bracket(x_jet(), y)).value;
    return cxy - lie_action_on_image(x_jet(), cy, c.lambda, c.mu) + lie_action_on_image(y, cx, c.lambda, c.mu);
}

std::vector<std::pair<std::string, diff_poly>> sl2_generators() {
    return {{"1", diff_poly{1}}, {"z", diff_poly::z()}, {"z^2", diff_poly::z(2)}};
}

std::vector<generator_residual> verify_sl2_vanishing(const cochain& c) {
    diff_poly value = c.generic.value;
    if (c.mode == chart_mode::covariant_free_r) value = eliminate_r(value, chart_mode::covariant);
    std::vector<generator_residual> out;
    for (auto& [name, g] : sl2_generators()) out.push_back({name, substitute_symbol(value, c.generic.field, g)});
    return out;
}

// ---------------------------------------------------------------------------
// Projective invariance

std::vector<std::pair<jet_var, diff_poly>> derive_delta_constraint(int order) {
    std::vector<std::pair<jet_var, diff_poly>> rules;
    if (order < 1) return rules;
    const diff_poly g = diff_poly::jet(sym::Gamma()), d = diff_poly::jet(sym::delta());
    const jet_var d1{sym::delta(), 1};
    diff_poly rule = g * d + (d * d).scaled(param_ratfun{rational{1, 2}});
    const diff_poly first = rule;
    rules.emplace_back(d1, rule);
    for (int k = 2; k <= order; ++k) {
        rule = substitute_jets(total_derivative(rule), {{d1, first}});
        rules.emplace_back(jet_var{sym::delta(), static_cast<std::uint16_t>(k)}, rule);
    }
    return rules;
}

diff_poly apply_delta_rules(const diff_poly& a) {
    const int top = a.max_order(sym::delta());
    if (top < 1) return a;
    std::map<jet_var, diff_poly> images;
    for (auto& [v, rule] : derive_delta_constraint(top)) images.emplace(v, rule);
    return substitute_jets(a, images);
}

invariance_template make_invariance_template(invariant_name name, const param_ratfun& lambda) {
    const auto mode = chart_mode::covariant_free_r;
    const cocycle_name cname = cocycle_of(name);
    if (auto fixed = fixed_lambda(cname); fixed && !(lambda == param_ratfun{*fixed}))
        throw precondition_error(to_string(name) + " is defined only at λ = " + fixed->get_str());
    const param alpha = unknown("α", "\\alpha"), beta = unknown("β", "\\beta"), kappa = unknown("κ", "\\kappa"),
                rho = unknown("ρ", "\\rho"), sigma = unknown("σ", "\\sigma");
    auto v = [](param p) { return param_ratfun::variable(p); };
    const diff_poly r = projective_r(mode), r1 = nabla_r(1, mode), r2 = nabla_r(2, mode), r3 = nabla_r(3, mode);
    const int k = cocycle_order(cname);
    std::vector<diff_poly> c;
    std::vector<param> unknowns;
    switch (name) {
        case invariant_name::I3: c = {r}; break;
        case invariant_name::I4:
            c = {r1.scaled(v(alpha)), r};
            unknowns = {alpha};
            break;
        case invariant_name::I5:
            c = {r2.scaled(v(beta)) + (r * r).scaled(v(kappa)), r1.scaled(v(alpha)), r};
            unknowns = {alpha, beta, kappa};
            break;
        case invariant_name::I6:
        case invariant_name::I6p:
            c = {r3.scaled(v(rho)) + (r * r1).scaled(v(sigma)), r2.scaled(v(beta)) + (r * r).scaled(v(kappa)),
                 r1.scaled(v(alpha)), r};
            unknowns = {alpha, beta, kappa, rho, sigma};
            break;
    }
    std::vector<param> leading;
    for (int i = 1; i <= k - 3; ++i) leading.push_back(unknown("b" + std::to_string(i), "b_{" + std::to_string(i) + "}"));
    return {name, lambda, diff_operator{lambda, lambda + param_ratfun{k - 1}, std::move(c), mode}, unknowns, leading};
}

std::map<param, param_ratfun> printed_coefficients(const invariance_template& t) {
    const param_ratfun& l = t.lambda;
    auto q = [](long n, long d = 1) { return param_ratfun{rational{n, d}}; };
    std::vector<param_ratfun> values;
    switch (t.name) {
        case invariant_name::I3: break;
        case invariant_name::I4: values = {-l / q(2)}; break;
        case invariant_name::I5: {
            const param_ratfun two_l1 = l * q(2) + q(1);
            values = {-two_l1 / q(2), l * two_l1 / q(10), l * (l + q(3)) / q(5)};
            break;
        }
        case invariant_name::I6: values = {q(-3, 2), q(3, 10), q(4, 5), q(0), q(0)}; break;
        case invariant_name::I6p: values = {q(9, 2), q(63, 10), q(4, 5), q(14, 5), q(8, 5)}; break;
    }
    std::map<param, param_ratfun> out;
    for (std::size_t i = 0; i < t.unknowns.size(); ++i) out[t.unknowns[i]] = values[i];
    auto b = cocycle_leading_coefficients(cocycle_of(t.name), t.lambda);
    for (std::size_t i = 0; i < t.leading.size(); ++i) out[t.leading[i]] = b[i + 1];
    return out;
}

namespace {

std::vector<param> undetermined_unknowns(const solve_report& s, const std::vector<param>& unknowns) {
    std::vector<param> out;
    for (auto& u : unknowns)
        for (auto& k : s.kernel_basis)
            if (auto it = k.find(u); it != k.end() && !it->second.is_zero()) {
                out.push_back(u);
                break;
            }
    return out;
}

diff_operator substitute_unknowns(const diff_operator& op, const std::map<param, param_ratfun>& values) {
    std::vector<diff_poly> c;
    for (auto& a : op.coefficients()) {
        diff_poly b = a;
        for (auto& [p, v] : values) b = b.substitute_param(p, v);
        c.push_back(std::move(b));
    }
    return {op.source(), op.target(), std::move(c), op.mode()};
}

diff_poly projective_residual(const diff_operator& tmpl) {
    const diff_poly img = tmpl.image();
    const diff_poly shifted =
        substitute_symbol(img, sym::Gamma(), diff_poly::jet(sym::Gamma()) + diff_poly::jet(sym::delta()));
    return apply_delta_rules(img - shifted);
}

}  // namespace

invariance_report verify_projective_invariance(const diff_operator& tmpl, const std::vector<param>& unknowns) {
    invariance_report out;
    out.residual = projective_residual(tmpl);
    out.system = collect_linear_system(out.residual, unknowns);
    out.solution = solve(out.system);
    out.undetermined = undetermined_unknowns(out.solution, unknowns);
    if (out.solution.generic_solvable && out.solution.solution_dimension == 0)
        out.recovered = substitute_unknowns(tmpl, out.solution.solution);
    return out;
}

invariance_report recover_invariant_operator(invariant_name name, const param_ratfun& lambda) {
    const auto t = make_invariance_template(name, lambda);
    std::vector<param> all = t.unknowns;
    all.insert(all.end(), t.leading.begin(), t.leading.end());

    invariance_report out;
    out.residual = projective_residual(t.op);
    out.system = collect_linear_system(out.residual, all);

    const int k = cocycle_order(cocycle_of(name));
    std::vector<param_ratfun> b{param_ratfun{1}};
    for (auto& p : t.leading) b.push_back(param_ratfun::variable(p));
    const diff_poly image = eliminate_r(t.op.image(), chart_mode::covariant);
    const diff_poly value = leading_part(b, k, lambda, chart_mode::covariant) -
                            lie_action_on_image(x_jet(), image, t.op.source(), t.op.target());
    for (auto& [gname, g] : sl2_generators()) collect_into(out.system, substitute_symbol(value, sym::X(), g));

    out.solution = solve(out.system);
    out.undetermined = undetermined_unknowns(out.solution, all);
    if (out.solution.generic_solvable && out.solution.solution_dimension == 0)
        out.recovered = substitute_unknowns(t.op, out.solution.solution);
    return out;
}

// ---------------------------------------------------------------------------
// Coboundaries

namespace {

diff_operator operator_from_values(const std::vector<param>& unknowns, const std::map<param, param_ratfun>& values,
                                   const param_ratfun& source, const param_ratfun& target) {
    std::vector<diff_poly> c;
    for (auto& u : unknowns) {
        auto it = values.find(u);
        c.emplace_back(it == values.end() ? param_ratfun{} : it->second);
    }
    return {source, target, std::move(c), chart_mode::flat};
}

std::set<rational> solvable_values(const solve_report& r) {
    std::set<rational> out;
    for (auto& e : r.exceptional_values)
        if (e.kind == resolution::becomes_solvable) out.insert(e.value);
    return out;
}

}  // namespace

coboundary_report solve_coboundary(const cochain& c, int order_bound) {
    const diff_poly target_value = c.mode == chart_mode::flat ? c.generic.value : flatten(c.generic.value);
    coboundary_report out;
    out.order_bound = order_bound;
    out.order_needed = std::max(0, target_value.max_order(c.generic.field) - 1);

    const auto a = indexed_unknowns("a", order_bound + 1);
    diff_poly image;
    for (int i = 0; i <= order_bound; ++i)
        image += diff_poly::jet(sym::phi(), i).scaled(param_ratfun::variable(a[static_cast<std::size_t>(i)]));
    const diff_poly eq = lie_action_on_image(x_jet(), image, c.lambda, c.mu) - target_value;
    out.solution = solve(collect_linear_system(eq, a));
    out.indeterminate = !out.solution.generic_solvable && order_bound < out.order_needed;

    if (out.solution.generic_solvable) out.witness = operator_from_values(a, out.solution.solution, c.lambda, c.mu);
    if (out.solution.parameter) {
        const param p = *out.solution.parameter;
        for (auto& e : out.solution.exceptional_values) {
            if (!e.solvable) continue;
            std::map<param, param_ratfun> values;
            for (auto& [u, v] : e.solution) values.emplace(u, v);
            out.exceptional_witnesses.emplace_back(
                e.value, operator_from_values(a, values, c.lambda.specialize(p, e.value), c.mu.specialize(p, e.value)));
        }
    }

    // Coefficients polynomial in z up to degree 2.
    std::vector<param> wide;
    diff_poly wide_image;
    for (int i = 0; i <= order_bound; ++i)
        for (int e = 0; e <= 2; ++e) {
            auto u = unknown("a" + std::to_string(i) + "z" + std::to_string(e),
                             "a_{" + std::to_string(i) + "," + std::to_string(e) + "}");
            wide.push_back(u);
            wide_image += (diff_poly::z(static_cast<std::uint32_t>(e)) * diff_poly::jet(sym::phi(), i))
                              .scaled(param_ratfun::variable(u));
        }
    const diff_poly wide_eq = lie_action_on_image(x_jet(), wide_image, c.lambda, c.mu) - target_value;
    const auto wide_report = solve(collect_linear_system(wide_eq, wide));
    const auto narrow_values = solvable_values(out.solution), wide_values = solvable_values(wide_report);
    for (auto& v : wide_values)
        if (!narrow_values.count(v)) out.widened_extra_values.push_back(v);
    out.widened_consistent =
        wide_report.generic_solvable == out.solution.generic_solvable && out.widened_extra_values.empty();
    return out;
}

coboundary_report solve_coboundary(const cochain& c) {
    const diff_poly v = c.mode == chart_mode::flat ? c.generic.value : flatten(c.generic.value);
    return solve_coboundary(c, std::max(0, v.max_order(c.generic.field) - 1));
}

// ---------------------------------------------------------------------------
// Invariant bilinear operators

std::vector<param_ratfun> normalize_vector(std::vector<param_ratfun> v) {
    param_poly den{1};
    for (auto& e : v) {
        if (e.is_zero()) continue;
        den = exact_divide(den * e.denominator(), gcd(den, e.denominator()));
    }
    std::vector<param_poly> nums;
    param_poly content;
    for (auto& e : v) {
        nums.push_back(e.numerator() * exact_divide(den, e.denominator()));
        if (!nums.back().is_zero()) content = gcd(content, nums.back());
    }
    if (content.is_zero()) return v;
    mpz_class den_lcm = 1, num_gcd = 0;
    for (auto& n : nums) {
        n = exact_divide(n, content);
        for (auto& [m, c] : n.terms()) {
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
        }
    }
    rational s{den_lcm, num_gcd};
    s.canonicalize();
    for (auto& n : nums)
        if (!n.is_zero()) {
            if (n.leading_coefficient() < 0) s = -s;
            break;
        }
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = param_ratfun{nums[i].scaled(s)};
    return v;
}

namespace {

// L_x applied to the bilinear expression b minus its action on both slots.
diff_poly bilinear_action(const diff_poly& b, const diff_poly& x, const param_ratfun& w1, const param_ratfun& w2,
                          int m, symbol first, symbol second) {
    const param_ratfun target = w1 + w2 + param_ratfun{m};
    diff_poly out = lie_action_density(x, b, target, chart_mode::flat);
    out -= substitute_symbol(b, first, lie_action_density(x, diff_poly::jet(first), w1, chart_mode::flat));
    out -= substitute_symbol(b, second, lie_action_density(x, diff_poly::jet(second), w2, chart_mode::flat));
    return out;
}

diff_poly bilinear_ansatz(const std::vector<param>& c, int m, symbol first, symbol second) {
    diff_poly out;
    for (int i = 0; i <= m; ++i)
        out += (diff_poly::jet(first, i) * diff_poly::jet(second, m - i))
                   .scaled(param_ratfun::variable(c[static_cast<std::size_t>(i)]));
    return out;
}

diff_poly bilinear_from(const std::vector<param_ratfun>& c, int m, symbol first, symbol second) {
    diff_poly out;
    for (int i = 0; i <= m; ++i)
        out += (diff_poly::jet(first, i) * diff_poly::jet(second, m - i)).scaled(c[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<param_ratfun> as_vector(const std::map<param, param_ratfun>& v, const std::vector<param>& order) {
    std::vector<param_ratfun> out;
    for (auto& p : order) {
        auto it = v.find(p);
        out.push_back(it == v.end() ? param_ratfun{} : it->second);
    }
    return out;
}

}  // namespace

classify_report classify_invariant_bilinear(int m, const param_ratfun& w1, const param_ratfun& w2, symbol first,
                                            symbol second) {
    if (m < 0) throw std::invalid_argument("order must be non-negative");
    classify_report out{m, w1, w2, first, second, {}, 0, {}, {}, false, {}};
    const auto c = indexed_unknowns("c", m + 1);
    const diff_poly b = bilinear_ansatz(c, m, first, second);
    out.system = collect_linear_system(bilinear_action(b, diff_poly::z(2), w1, w2, m, first, second), c);
    const auto s = solve(out.system);
    out.dimension = s.solution_dimension;
    out.unresolved_factors = s.unresolved_factors;
    for (auto& e : s.exceptional_values)
        if (e.kind == resolution::dimension_jump) out.jumps.push_back({e.value, e.solution_dimension});
    bool verified = true;
    for (std::size_t i = 0; i < s.kernel_basis.size(); ++i) {
        auto vec = normalize_vector(as_vector(kernel_vector(s, i), c));
        diff_poly value = bilinear_from(vec, m, first, second);
        for (auto& x : {diff_poly{1}, diff_poly::z()})
            if (!bilinear_action(value, x, w1, w2, m, first, second).is_zero()) verified = false;
        out.basis.push_back({value, first, second});
    }
    out.translation_and_scaling_verified = verified;
    return out;
}

// ---------------------------------------------------------------------------
// Cohomology table

std::size_t table_row::dimension_at(const rational& lambda) const {
    for (auto& c : exceptional)
        if (c.lambda == lambda) return c.dimension;
    return generic_dimension;
}

namespace {

struct printed_case {
    std::size_t generic;
    std::map<rational, std::size_t> exceptional;
};

printed_case printed_for(int k) {
    switch (k) {
        case 2: return {1, {{rational{-1, 2}, 0}}};
        case 3: return {1, {{rational{-1}, 0}}};
        case 4: return {1, {{rational{-1, 2}, 0}}};
        case 5: return {0, {{rational{0}, 1}, {rational{-4}, 1}}};
        default: return {0, {}};
    }
}

std::string fmt(const rational& q) { return q.get_str(); }

}  // namespace

table_row cohomology_row(int k) {
    if (k < 0 || k > 6) throw std::out_of_range("shift must lie in 0..6");
    const param lam = param::lambda();
    const param_ratfun lambda = param_ratfun::variable(lam);
    const param_ratfun mu = lambda + param_ratfun{k};
    const int m = k + 1;
    const symbol xs = sym::X(), ps = sym::phi();
    table_row row;
    row.k = k;

    // Z: cocycles X^(i) φ^(m−i) vanishing on sl2.
    const auto c = indexed_unknowns("c", m + 1);
    const diff_poly ansatz = bilinear_ansatz(c, m, xs, ps);
    linear_system z_sys{c};
    for (int i = 0; i < std::min(3, m + 1); ++i) {
        std::vector<param_ratfun> r(c.size());
        r[static_cast<std::size_t>(i)] = param_ratfun{1};
        z_sys.add_row(r, param_ratfun{});
    }
    collect_into(z_sys, bilinear_action(ansatz, diff_poly::z(2), param_ratfun{-1}, lambda, m, xs, ps));
    collect_into(z_sys, verify_cocycle(cochain{"candidate", lambda, mu, chart_mode::flat, {ansatz, xs, ps}}));

    // V: sl2-invariant constant-coefficient operators; K: those commuting with every L_X.
    const auto a = indexed_unknowns("a", k + 1);
    diff_poly a_image;
    for (int i = 0; i <= k; ++i)
        a_image += diff_poly::jet(ps, i).scaled(param_ratfun::variable(a[static_cast<std::size_t>(i)]));
    const diff_poly action = lie_action_on_image(x_jet(), a_image, lambda, mu);
    linear_system v_sys{a};
    for (auto& [name, g] : sl2_generators()) collect_into(v_sys, substitute_symbol(action, xs, g));
    linear_system k_sys = collect_linear_system(action, a);

    const auto zs = solve(z_sys), vs = solve(v_sys), ks = solve(k_sys);
    row.generic_cocycles = zs.solution_dimension;
    row.generic_coboundaries = vs.solution_dimension - ks.solution_dimension;
    row.generic_dimension = row.generic_cocycles - row.generic_coboundaries;
    for (std::size_t i = 0; i < zs.kernel_basis.size(); ++i)
        row.generic_basis.push_back(
            {bilinear_from(normalize_vector(as_vector(kernel_vector(zs, i), c)), m, xs, ps), xs, ps});

    std::set<rational> candidates;
    for (auto* s : {&zs, &vs, &ks}) {
        for (auto& e : s->exceptional_values) candidates.insert(e.value);
        for (auto& f : s->unresolved_factors)
            row.notes.push_back("factor with no rational root left unresolved: " + f.to_string());
    }
    for (auto& v : candidates) {
        auto dz = solve_rational(z_sys.specialize(lam, v)).kernel_dimension;
        auto dv = solve_rational(v_sys.specialize(lam, v)).kernel_dimension;
        auto dk = solve_rational(k_sys.specialize(lam, v)).kernel_dimension;
        table_cell cell{v, dz, dv - dk, dz - (dv - dk)};
        if (cell.cocycles == row.generic_cocycles && cell.coboundaries == row.generic_coboundaries) continue;
        row.exceptional.push_back(cell);
    }

    const auto printed = printed_for(k);
    row.printed_generic = printed.generic;
    row.printed_exceptional = printed.exceptional;
    bool ok = row.generic_dimension == printed.generic;
    if (!ok)
        row.notes.push_back("discrepancy: generic dimension " + std::to_string(row.generic_dimension) +
                            " differs from the printed " + std::to_string(printed.generic));
    for (auto& [v, d] : printed.exceptional) {
        auto got = row.dimension_at(v);
        if (got != d) {
            ok = false;
            row.notes.push_back("discrepancy: printed case list gives dimension " + std::to_string(d) + " at λ = " +
                                fmt(v) + ", computed " + std::to_string(got));
        }
    }
    for (auto& cell : row.exceptional) {
        if (cell.dimension != row.generic_dimension && !printed.exceptional.count(cell.lambda)) {
            ok = false;
            row.notes.push_back("discrepancy: computed exceptional value λ = " + fmt(cell.lambda) + " (dimension " +
                                std::to_string(cell.dimension) + ") is absent from the printed case list");
        }
        if (cell.dimension == row.generic_dimension)
            row.notes.push_back("at λ = " + fmt(cell.lambda) + " the cocycle space (" + std::to_string(cell.cocycles) +
                                ") and coboundary space (" + std::to_string(cell.coboundaries) +
                                ") both change; the quotient keeps its generic dimension");
    }
    row.matches_printed = ok;
    return row;
}

std::vector<table_row> cohomology_table(int k_min, int k_max) {
    if (k_min < 0 || k_max > 6 || k_min > k_max) throw std::out_of_range("k range must satisfy 0 <= a <= b <= 6");
    std::vector<std::future<table_row>> jobs;
    for (int k = k_min; k <= k_max; ++k) jobs.push_back(std::async(std::launch::async, cohomology_row, k));
    std::vector<table_row> rows;
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

}  // namespace projcoh
