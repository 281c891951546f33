#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace projcoh;
using namespace projcoh::testing;

namespace {

const param_ratfun L = param_ratfun::variable(param::lambda());
const param_ratfun M = param_ratfun::variable(param::mu());

param_ratfun q(long n, long d = 1) { return param_ratfun{rational{n, d}}; }

}  // namespace

TEST_CASE("field arithmetic examples") {
    CHECK(ratfun_arith(L / (L + q(1)), q(1) / (L + q(1)), field_op::add) == q(1));
    CHECK(ratfun_arith(L * q(2) + q(1), q(1) / (L * q(2) + q(1)), field_op::mul) == q(1));
    const auto c = (L * q(2) + q(1)) / q(2);
    CHECK(ratfun_arith(c, q(0), field_op::sub) == c);
    CHECK(c.to_string() == "λ + 1/2");
    CHECK_THROWS_AS(ratfun_arith(L, q(0), field_op::div), division_by_zero);
    CHECK_THROWS_AS(q(0).inverse(), division_by_zero);
}

TEST_CASE("canonical form") {
    const auto a = (L * L - q(1)) / (L * q(2) - q(2));
    CHECK(a == (L + q(1)) / q(2));
    CHECK(a.denominator().is_one());
    const param_ratfun zero{param_poly{}, param_poly::variable(param::lambda())};
    CHECK(zero.denominator().is_one());
    CHECK(zero.is_zero());
    const auto b = (L + q(1)) / (L * q(3) + q(6));
    CHECK(b.denominator() == param_poly::variable(param::lambda()) + param_poly{2});
    CHECK(param_ratfun{b.numerator(), b.denominator()} == b);
}

TEST_CASE("field axioms on random elements") {
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = random_ratfun(), b = random_ratfun(), c = random_ratfun();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = random_ratfun(), b = random_ratfun();
        const std::map<param, rational> at{{param::lambda(), random_rational()}, {param::mu(), random_rational()}};
        try {
            const rational va = a.evaluate(at), vb = b.evaluate(at);
            CHECK((a * b).evaluate(at) == va * vb);
            CHECK((a + b).evaluate(at) == va + vb);
            ++checked;
        } catch (const pole_error&) {
        }
    }
    CHECK(checked > 40);
}

TEST_CASE("evaluation examples") {
    CHECK((L * q(2) + q(1)).evaluate({{param::lambda(), rational{-1, 2}}}) == 0);
    CHECK((L * (L * q(2) + q(1)) / q(10)).evaluate({{param::lambda(), 0}}) == 0);
    CHECK((L * (L + q(3)) / q(5)).evaluate({{param::lambda(), 2}}) == 2);
    CHECK((L * M).evaluate({{param::lambda(), rational{2, 3}}, {param::mu(), 3}}) == 2);
}

TEST_CASE("poles are reported with the vanishing factor") {
    const auto f = q(1) / (L * q(2) + q(1));
    try {
        (void)f.evaluate({{param::lambda(), rational{-1, 2}}});
        FAIL("expected a pole");
    } catch (const pole_error& e) {
        CHECK(std::string{e.what()}.find("λ") != std::string::npos);
    }
    CHECK_THROWS_AS(f.specialize(param::lambda(), rational{-1, 2}), pole_error);
    CHECK_THROWS_AS((void)L.evaluate({}), std::invalid_argument);
}

TEST_CASE("rational roots") {
    const param_poly l = param_poly::variable(param::lambda());
    auto r = rational_roots(l.scaled(2) + param_poly{1});
    CHECK(r.roots == std::vector<rational>{rational{-1, 2}});
    CHECK(r.residual.is_one());
    CHECK(rational_roots(l + param_poly{1}).roots == std::vector<rational>{rational{-1}});
    r = rational_roots(l * l + param_poly{1});
    CHECK(r.roots.empty());
    CHECK(r.residual == l * l + param_poly{1});
    CHECK_THROWS_AS(rational_roots(param_poly{}), std::domain_error);
    CHECK_THROWS_AS(rational_roots(l * param_poly::variable(param::mu())), std::invalid_argument);
}

TEST_CASE("rational roots of products of random linear factors") {
    const param_poly l = param_poly::variable(param::lambda());
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<rational> expected;
        param_poly p = param_poly{random_nonzero_rational()};
        const int n = static_cast<int>(random_int(1, 4));
        for (int i = 0; i < n; ++i) {
            const rational root = random_rational(6);
            expected.push_back(root);
            p *= l.scaled(rational{root.get_den()}) - param_poly{rational{root.get_num()}};
        }
        p *= l * l + param_poly{2};
        std::sort(expected.begin(), expected.end());
        auto r = rational_roots(p);
        CHECK(r.roots == expected);
        CHECK(r.residual == l * l + param_poly{2});
    }
}

TEST_CASE("gcd and exact division") {
    const param_poly l = param_poly::variable(param::lambda()), m = param_poly::variable(param::mu());
    const param_poly a = (l + m) * (l.scaled(2) + param_poly{1}), b = (l + m) * (m - param_poly{3});
    CHECK(gcd(a, b) == l + m);
    CHECK(exact_divide(a, l + m) == l.scaled(2) + param_poly{1});
    CHECK_THROWS_AS(exact_divide(a, m - param_poly{3}), std::domain_error);
}

TEST_CASE("rational literals") {
    CHECK(parse_rational("-3/2") == rational{-3, 2});
    CHECK(parse_rational("4") == 4);
    CHECK(parse_rational("6/4") == rational{3, 2});
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}
