#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace projcoh;
using namespace projcoh::testing;

namespace {

const param_ratfun L = param_ratfun::variable(param::lambda());
const param_ratfun M = param_ratfun::variable(param::mu());

diff_poly j(symbol s, int k = 0) { return diff_poly::jet(s, k); }
param_ratfun q(long n, long d = 1) { return param_ratfun{rational{n, d}}; }

diff_poly without_gamma(const diff_poly& a) { return substitute_symbol(a, sym::Gamma(), diff_poly{}); }

}  // namespace

TEST_CASE("apply") {
    const auto phi = j(sym::phi());
    CHECK(diff_operator::identity(L, chart_mode::flat).image() == phi);
    const auto i3 = build_invariant_operator(invariant_name::I3, L, chart_mode::covariant_free_r);
    CHECK(i3.image() == j(sym::R()) * phi);
    CHECK(i3.target() == L + q(2));

    const auto i4 = build_invariant_operator(invariant_name::I4, L, chart_mode::covariant_free_r);
    const auto g = j(sym::Gamma()), r = j(sym::R());
    const auto expected = r * (j(sym::phi(), 1) - (g * phi).scaled(L)) -
                          ((j(sym::R(), 1) - (g * r).scaled(q(2))) * phi).scaled(L / q(2));
    CHECK(i4.image() == expected);

    CHECK(i4.apply(density(sym::psi(), L)) == substitute_symbol(expected, sym::phi(), j(sym::psi())));
    CHECK_THROWS_AS(i4.apply(density(sym::psi(), L + q(1))), weight_mismatch);
}

TEST_CASE("printed invariant operators") {
    const auto r = j(sym::R()), r1 = j(sym::R(), 1), r2 = j(sym::R(), 2), r3 = j(sym::R(), 3);
    auto flat = [](const diff_operator& op) {
        std::vector<diff_poly> c;
        for (auto& a : op.coefficients()) c.push_back(without_gamma(a));
        return c;
    };
    auto i4 = flat(build_invariant_operator(invariant_name::I4, L, chart_mode::covariant_free_r));
    CHECK(i4 == std::vector<diff_poly>{r1.scaled(-L / q(2)), r});

    auto i5 = flat(build_invariant_operator(invariant_name::I5, L, chart_mode::covariant_free_r));
    CHECK(i5 == std::vector<diff_poly>{r2.scaled(L * (L * q(2) + q(1)) / q(10)) + (r * r).scaled(L * (L + q(3)) / q(5)),
                                       r1.scaled(-(L * q(2) + q(1)) / q(2)), r});

    auto i6 = flat(build_invariant_operator(invariant_name::I6, q(0), chart_mode::covariant_free_r));
    CHECK(i6 == std::vector<diff_poly>{diff_poly{}, r2.scaled(q(3, 10)) + (r * r).scaled(q(4, 5)), r1.scaled(q(-3, 2)), r});

    const auto i6p_op = build_invariant_operator(invariant_name::I6p, q(-4), chart_mode::covariant_free_r);
    CHECK(i6p_op.target() == q(1));
    auto i6p = flat(i6p_op);
    CHECK(i6p == std::vector<diff_poly>{r3.scaled(q(14, 5)) + (r * r1).scaled(q(8, 5)),
                                        r2.scaled(q(63, 10)) + (r * r).scaled(q(4, 5)), r1.scaled(q(9, 2)), r});

    CHECK_THROWS_AS(build_invariant_operator(invariant_name::I6, q(1)), precondition_error);
    CHECK_THROWS_AS(build_invariant_operator(invariant_name::I6p, L), precondition_error);
}

TEST_CASE("composition") {
    const auto d = diff_operator::derivative(L, 1, chart_mode::flat);
    const auto d1 = diff_operator::derivative(L + q(1), 1, chart_mode::flat);
    const auto dd = compose(d1, d);
    CHECK(dd.order() == 2);
    CHECK(dd.image() == j(sym::phi(), 2));

    const auto psi = j(sym::psi());
    const auto mult = diff_operator::multiplication(psi, L + q(1), q(2), chart_mode::flat);
    const auto psi_d = compose(mult, d);
    CHECK(psi_d.coefficients() == std::vector<diff_poly>{diff_poly{}, psi});

    const auto mult0 = diff_operator::multiplication(psi, L, q(2), chart_mode::flat);
    const auto d_psi = compose(diff_operator::derivative(L + q(2), 1, chart_mode::flat), mult0);
    CHECK(d_psi.coefficients() == std::vector<diff_poly>{j(sym::psi(), 1), psi});

    CHECK_THROWS_AS(compose(d, d), weight_mismatch);
}

TEST_CASE("composition agrees with applying twice") {
    for (int trial = 0; trial < 20; ++trial) {
        const param_ratfun a{random_rational()}, b{random_rational()}, c{random_rational()};
        const auto A = random_flat_operator(a, b, 3), B = random_flat_operator(b, c, 3);
        CHECK(compose(B, A).image() == B.apply(A.image()));
    }
}

TEST_CASE("density action") {
    const auto x = j(sym::X()), phi = j(sym::phi());
    CHECK(lie_action_density(x, phi, q(0), chart_mode::flat) == x * j(sym::phi(), 1));
    const auto flat = lie_action_density(x, phi, L, chart_mode::flat);
    CHECK(lie_action_density(x, phi, L, chart_mode::covariant) == flat);
    CHECK(flat == x * j(sym::phi(), 1) + (j(sym::X(), 1) * phi).scaled(L));
    CHECK(lie_action_density(x, j(sym::Y()), q(-1), chart_mode::flat) == vf_bracket(x, j(sym::Y())));
    CHECK(lie_action_density(vector_field(sym::X()), density(sym::phi(), L), chart_mode::covariant) == flat);
}

TEST_CASE("density action is a Lie algebra action") {
    const auto x = j(sym::X()), y = j(sym::Y()), phi = j(sym::phi());
    for (const auto& w : {L, q(-1, 2), q(3)}) {
        auto act = [&](const diff_poly& v, const diff_poly& a) { return lie_action_density(v, a, w, chart_mode::flat); };
        CHECK(act(vf_bracket(x, y), phi) == act(x, act(y, phi)) - act(y, act(x, phi)));
    }
}

TEST_CASE("operator action examples") {
    const auto x = j(sym::X()), phi = j(sym::phi());
    CHECK(lie_action_operator(x, diff_operator::identity(L, chart_mode::flat)).is_zero());

    const diff_operator d{L, M, {diff_poly{}, diff_poly{1}}, chart_mode::flat};
    CHECK(lie_action_operator(x, d).value ==
          (j(sym::X(), 1) * j(sym::phi(), 1)).scaled(M - L - q(1)) - (j(sym::X(), 2) * phi).scaled(L));

    const diff_operator a{q(-1, 2), q(3, 2), {diff_poly{}, diff_poly{}, diff_poly{-2}}, chart_mode::flat};
    CHECK(lie_action_operator(x, a).value == -(j(sym::X(), 3) * phi));
}

TEST_CASE("operator action is a Lie algebra action on random operators") {
    const auto x = j(sym::X()), y = j(sym::Y());
    for (int trial = 0; trial < 20; ++trial) {
        const param_ratfun s{random_rational()}, t = s + q(random_int(0, 4));
        const auto A = random_flat_operator(s, t, 3);
        const auto ly = lie_action_operator(y, A).value, lx = lie_action_operator(x, A).value;
        const auto lhs = lie_action_operator(vf_bracket(x, y), A).value;
        const auto rhs = lie_action_on_image(x, ly, s, t) - lie_action_on_image(y, lx, s, t);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("operator action is a Lie algebra action for symbolic weights") {
    const auto x = j(sym::X()), y = j(sym::Y());
    const diff_operator A{L, M, {j(sym::psi()), diff_poly::z(), diff_poly{q(3)}}, chart_mode::flat};
    const auto lhs = lie_action_operator(vf_bracket(x, y), A).value;
    const auto rhs = lie_action_on_image(x, lie_action_operator(y, A).value, L, M) -
                     lie_action_on_image(y, lie_action_operator(x, A).value, L, M);
    CHECK_FALSE(lhs.is_zero());
    CHECK(lhs == rhs);
}

TEST_CASE("vector field bracket") {
    const auto x = j(sym::X());
    CHECK(vf_bracket(x, x).is_zero());
    CHECK(vf_bracket(diff_poly{1}, diff_poly::z()) == diff_poly{1});
    CHECK(vf_bracket(diff_poly::z(), diff_poly::z(2)) == diff_poly::z(2));
}

TEST_CASE("transvectants") {
    CHECK(transvectant(0, L, M).value == j(sym::phi()) * j(sym::psi()));
    CHECK(transvectant(1, L, M).to_string() == "2*μ*φ*ψ' - 2*λ*φ'*ψ");
    const auto t3 = transvectant(3, L, q(-1), sym::X(), sym::phi());
    const auto table = t3.table();
    REQUIRE(table.size() == 1);
    CHECK(table.begin()->first == std::pair{3, 0});
    CHECK(falling_binomial(q(5), 2) == q(10));
    CHECK(falling_binomial(L, 2) == L * (L - q(1)) / q(2));
}

TEST_CASE("names") {
    CHECK(parse_cocycle_name("J6'") == cocycle_name::J6_m4);
    CHECK(parse_cocycle_name("J6_0") == cocycle_name::J6_0);
    CHECK(parse_invariant_name("I6'") == invariant_name::I6p);
    CHECK_FALSE(parse_cocycle_name("J7"));
    CHECK(cocycle_order(cocycle_name::J5) == 5);
    CHECK(fixed_lambda(cocycle_name::J6_m4) == rational{-4});
    CHECK_FALSE(fixed_lambda(cocycle_name::J4));
    CHECK(parse_chart_mode("flat") == chart_mode::flat);
    CHECK_FALSE(parse_chart_mode("curved"));
}

TEST_CASE("flat cocycles reproduce the printed formulas") {
    auto flat = [](cocycle_name n, const param_ratfun& l) { return build_cocycle(n, l, chart_mode::flat).generic.value; };
    auto t = [](int a, int b) { return j(sym::X(), a) * j(sym::phi(), b); };
    CHECK(flat(cocycle_name::J3, L) == t(3, 0));
    CHECK(flat(cocycle_name::J4, L) == t(3, 1) - t(4, 0).scaled(L / q(2)));
    CHECK(flat(cocycle_name::J5, L) == t(3, 2) - t(4, 1).scaled((L * q(2) + q(1)) / q(2)) +
                                           t(5, 0).scaled(L * (L * q(2) + q(1)) / q(10)));
    CHECK(flat(cocycle_name::J6_0, q(0)) == t(3, 3) - t(4, 2).scaled(q(3, 2)) + t(5, 1).scaled(q(3, 10)));
    CHECK(flat(cocycle_name::J6_m4, q(-4)) ==
          t(3, 3) + t(4, 2).scaled(q(9, 2)) + t(5, 1).scaled(q(63, 10)) + t(6, 0).scaled(q(14, 5)));
    CHECK_THROWS_AS(build_cocycle(cocycle_name::J6_0, q(1)), precondition_error);
}

TEST_CASE("covariant cocycles agree with the flat ones") {
    for (auto n : {cocycle_name::J3, cocycle_name::J4, cocycle_name::J5}) {
        CHECK(build_cocycle(n, L, chart_mode::covariant).generic.value ==
              build_cocycle(n, L, chart_mode::flat).generic.value);
    }
}
