#pragma once

// Random inputs and small oracles shared by the test binaries.

#include <random>
#include <vector>

#include "projcoh/operators.hpp"

namespace projcoh::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen{20240917};
    return gen;
}

inline long random_int(long lo, long hi) { return std::uniform_int_distribution<long>{lo, hi}(rng()); }

inline rational random_rational(long bound = 9) {
    rational q{random_int(-bound, bound), random_int(1, bound)};
    q.canonicalize();
    return q;
}

inline rational random_nonzero_rational(long bound = 9) {
    rational q;
    do q = random_rational(bound);
    while (q == 0);
    return q;
}

/// Polynomial in λ and μ of total degree at most 2.
inline param_poly random_poly() {
    const param_poly l = param_poly::variable(param::lambda()), m = param_poly::variable(param::mu());
    const param_poly basis[] = {param_poly{1}, l, m, l * l, l * m, m * m};
    param_poly out;
    for (auto& b : basis)
        if (random_int(0, 2)) out += b.scaled(random_rational());
    return out;
}

inline param_ratfun random_ratfun() {
    param_poly den;
    do den = random_poly();
    while (den.is_zero());
    return {random_poly(), den};
}

/// Flat operator of order ≤ max_order with coefficients in Q[z] of degree ≤ 2.
inline diff_operator random_flat_operator(const param_ratfun& source, const param_ratfun& target, int max_order) {
    const int order = static_cast<int>(random_int(0, max_order));
    std::vector<diff_poly> coeffs;
    for (int i = 0; i <= order; ++i) {
        diff_poly c;
        for (std::uint32_t p = 0; p <= 2; ++p)
            if (random_int(0, 1)) c += diff_poly::z(p).scaled(param_ratfun{random_rational()});
        coeffs.push_back(c);
    }
    if (coeffs.back().is_zero()) coeffs.back() = diff_poly{param_ratfun{random_nonzero_rational()}};
    return {source, target, std::move(coeffs), chart_mode::flat};
}

/// ∂a/∂v for a single jet variable, exponents arbitrary.
inline diff_poly partial(const diff_poly& a, const jet_var& v) {
    diff_poly out;
    for (auto& [m, c] : a.terms()) {
        const auto e = m.exponent(v);
        if (!e) continue;
        monomial rest = m;
        for (auto it = rest.factors.begin(); it != rest.factors.end(); ++it)
            if (it->first == v.key()) {
                if (e == 1) rest.factors.erase(it);
                else it->second = e - 1;
                break;
            }
        out += diff_poly::from_term(std::move(rest), c * param_ratfun{e});
    }
    return out;
}

}  // namespace projcoh::testing
