#include "projcoh/scalar_field.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace projcoh {

std::string to_string(const rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// Parameter registry

namespace {

struct param_registry {
    std::mutex mutex;
    std::deque<std::string> names;
    std::deque<std::string> latex;
    std::unordered_map<std::string, std::uint16_t> index;

    param_registry() {
        add("λ", "\\lambda");
        add("μ", "\\mu");
    }

    std::uint16_t add(std::string_view name, std::string_view tex) {
        auto id = static_cast<std::uint16_t>(names.size());
        names.emplace_back(name);
        latex.emplace_back(tex.empty() ? std::string{name} : std::string{tex});
        index.emplace(std::string{name}, id);
        return id;
    }
};

param_registry& registry() {
    static param_registry r;
    return r;
}

}  // namespace

param param::intern(std::string_view name, std::string_view latex) {
    auto& r = registry();
    std::lock_guard lock{r.mutex};
    if (auto it = r.index.find(std::string{name}); it != r.index.end()) return param{it->second};
    if (r.names.size() >= 0xFFFF) throw std::length_error("too many parameters");
    return param{r.add(name, latex)};
}

param param::from_id(std::uint16_t id) {
    auto& r = registry();
    std::lock_guard lock{r.mutex};
    if (id >= r.names.size()) throw std::out_of_range("unknown parameter id");
    return param{id};
}

std::string_view param::name() const {
    auto& r = registry();
    std::lock_guard lock{r.mutex};
    return r.names.at(id_);
}

std::string_view param::latex() const {
    auto& r = registry();
    std::lock_guard lock{r.mutex};
    return r.latex.at(id_);
}

// ---------------------------------------------------------------------------
// Monomials

namespace {

using pmono = param_poly::monomial;

std::uint32_t mono_degree(const pmono& m) {
    std::uint32_t d = 0;
    for (auto& [v, e] : m) d += e;
    return d;
}

pmono mono_mul(const pmono& a, const pmono& b) {
    pmono out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

// a / b when b divides a.
bool mono_div(const pmono& a, const pmono& b, pmono& out) {
    out.clear();
    std::size_t i = 0;
    for (auto& [v, e] : b) {
        while (i < a.size() && a[i].first < v) out.push_back(a[i++]);
        if (i == a.size() || a[i].first != v || a[i].second < e) return false;
        if (a[i].second > e) out.emplace_back(v, a[i].second - e);
        ++i;
    }
    while (i < a.size()) out.push_back(a[i++]);
    return true;
}

struct mono_greater {
    bool operator()(const pmono& a, const pmono& b) const { return compare_monomials(a, b) > 0; }
};

std::string power_suffix(std::uint32_t e, bool latex) {
    if (e == 1) return {};
    return latex ? "^{" + std::to_string(e) + "}" : "^" + std::to_string(e);
}

}  // namespace

int compare_monomials(const pmono& a, const pmono& b) {
    auto da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da > db ? 1 : -1;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            if (a[i].second != b[j].second) return a[i].second > b[j].second ? 1 : -1;
            ++i;
            ++j;
        } else {
            return a[i].first < b[j].first ? 1 : -1;
        }
    }
    if (i < a.size()) return 1;
    if (j < b.size()) return -1;
    return 0;
}

// ---------------------------------------------------------------------------
// param_poly

param_poly::param_poly(const rational& c) {
    if (c != 0) {
        terms_.emplace_back(monomial{}, c);
        terms_.back().second.canonicalize();
    }
}

param_poly param_poly::from_term(monomial m, const rational& c) {
    param_poly out;
    if (c != 0) {
        out.terms_.emplace_back(std::move(m), c);
        out.terms_.back().second.canonicalize();
    }
    return out;
}

param_poly param_poly::variable(param p) {
    param_poly out;
    out.terms_.emplace_back(monomial{{p.id(), 1}}, rational{1});
    return out;
}

bool param_poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

bool param_poly::is_one() const {
    return terms_.size() == 1 && terms_[0].first.empty() && terms_[0].second == 1;
}

rational param_poly::constant_value() const {
    if (!is_constant()) throw std::domain_error("polynomial is not constant: " + to_string());
    return terms_.empty() ? rational{0} : terms_[0].second;
}

rational param_poly::constant_term() const {
    if (!terms_.empty() && terms_.back().first.empty()) return terms_.back().second;
    return 0;
}

const param_poly::monomial& param_poly::leading_monomial() const {
    if (terms_.empty()) throw std::domain_error("leading monomial of zero polynomial");
    return terms_.front().first;
}

const rational& param_poly::leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return terms_.front().second;
}

std::vector<param> param_poly::variables() const {
    std::vector<std::uint16_t> ids;
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m) ids.push_back(v);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<param> out;
    for (auto id : ids) out.push_back(param::from_id(id));
    return out;
}

bool param_poly::has_variable(param p) const {
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m)
            if (v == p.id()) return true;
    return false;
}

std::uint32_t param_poly::degree(param p) const {
    std::uint32_t d = 0;
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m)
            if (v == p.id()) d = std::max(d, e);
    return d;
}

std::uint32_t param_poly::total_degree() const {
    return terms_.empty() ? 0 : mono_degree(terms_.front().first);
}

param_poly param_poly::operator-() const {
    param_poly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

void param_poly::add_scaled(const param_poly& o, const rational& s) {
    if (o.terms_.empty() || s == 0) return;
    std::vector<term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        int cmp;
        if (i == terms_.size()) cmp = -1;
        else if (j == o.terms_.size()) cmp = 1;
        else cmp = compare_monomials(terms_[i].first, o.terms_[j].first);
        if (cmp > 0) {
            out.push_back(std::move(terms_[i++]));
        } else if (cmp < 0) {
            out.emplace_back(o.terms_[j].first, o.terms_[j].second * s);
            ++j;
        } else {
            rational c = terms_[i].second + o.terms_[j].second * s;
            if (c != 0) out.emplace_back(std::move(terms_[i].first), c);
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
}

param_poly& param_poly::operator+=(const param_poly& o) {
    add_scaled(o, 1);
    return *this;
}

param_poly& param_poly::operator-=(const param_poly& o) {
    add_scaled(o, -1);
    return *this;
}

param_poly operator*(const param_poly& a, const param_poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return b.scaled(a.terms_[0].second);
    if (b.is_constant()) return a.scaled(b.terms_[0].second);
    std::map<pmono, rational, mono_greater> acc;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) acc[mono_mul(ma, mb)] += ca * cb;
    param_poly out;
    out.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) out.terms_.emplace_back(m, c);
    return out;
}

param_poly& param_poly::operator*=(const param_poly& o) { return *this = *this * o; }

param_poly param_poly::scaled(const rational& c) const {
    if (c == 0) return {};
    param_poly out = *this;
    for (auto& [m, k] : out.terms_) k *= c;
    return out;
}

param_poly param_poly::pow(unsigned n) const {
    param_poly out{1}, base = *this;
    while (n) {
        if (n & 1u) out *= base;
        n >>= 1u;
        if (n) base *= base;
    }
    return out;
}

param_poly param_poly::substitute(param p, const param_poly& value) const {
    auto coeffs = coefficients_in(p);
    param_poly out;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        out *= value;
        out += coeffs[k];
    }
    return out;
}

param_poly param_poly::evaluate(param p, const rational& value) const {
    return substitute(p, param_poly{value});
}

rational param_poly::evaluate(const std::map<param, rational>& at) const {
    rational sum = 0;
    for (auto& [m, c] : terms_) {
        rational t = c;
        for (auto& [v, e] : m) {
            auto it = std::find_if(at.begin(), at.end(), [&](auto& kv) { return kv.first.id() == v; });
            if (it == at.end()) {
                auto& r = registry();
                std::string nm;
                {
                    std::lock_guard lock{r.mutex};
                    nm = r.names.at(v);
                }
                throw std::invalid_argument("no value supplied for parameter " + nm);
            }
            rational base = it->second;
            rational acc = 1;
            for (std::uint32_t k = 0; k < e; ++k) acc *= base;
            t *= acc;
        }
        sum += t;
    }
    return sum;
}

param_poly param_poly::derivative(param p) const {
    param_poly out;
    for (auto& [m, c] : terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i].first != p.id()) continue;
            monomial dm = m;
            rational k = c * m[i].second;
            if (--dm[i].second == 0) dm.erase(dm.begin() + static_cast<std::ptrdiff_t>(i));
            param_poly t;
            t.terms_.emplace_back(std::move(dm), k);
            out += t;
        }
    }
    return out;
}

std::vector<param_poly> param_poly::coefficients_in(param p) const {
    std::vector<param_poly> out(degree(p) + 1);
    for (auto& [m, c] : terms_) {
        monomial rest;
        std::uint32_t k = 0;
        for (auto& ve : m) {
            if (ve.first == p.id()) k = ve.second;
            else rest.push_back(ve);
        }
        param_poly t;
        t.terms_.emplace_back(std::move(rest), c);
        out[k] += t;
    }
    return out;
}

param_poly param_poly::from_coefficients(param p, const std::vector<param_poly>& coeffs) {
    param_poly out;
    param_poly x = variable(p);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        out *= x;
        out += coeffs[k];
    }
    return out;
}

param_poly param_poly::monic() const {
    if (is_zero()) return {};
    return scaled(1 / leading_coefficient());
}

param_poly param_poly::primitive_integer() const {
    if (is_zero()) return {};
    mpz_class den_lcm = 1, num_gcd = 0;
    for (auto& [m, c] : terms_) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    rational s{den_lcm, num_gcd};
    s.canonicalize();
    if (leading_coefficient() < 0) s = -s;
    return scaled(s);
}

namespace {

std::string param_name(std::uint16_t id, bool latex) {
    auto& r = registry();
    std::lock_guard lock{r.mutex};
    return latex ? r.latex.at(id) : r.names.at(id);
}

std::string mono_string(const pmono& m, bool latex) {
    std::string s;
    for (auto& [v, e] : m) {
        if (!s.empty() && !latex) s += "*";
        s += param_name(v, latex) + power_suffix(e, latex);
        if (latex) s += " ";
    }
    if (latex && !s.empty()) s.pop_back();
    return s;
}

std::string rational_latex(const rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

}  // namespace

std::string param_poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [m, c] : terms_) {
        rational a = abs(c);
        if (first) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        first = false;
        if (m.empty()) {
            s += a.get_str();
        } else {
            if (a != 1) s += a.get_str() + "*";
            s += mono_string(m, false);
        }
    }
    return s;
}

std::string param_poly::to_latex() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [m, c] : terms_) {
        rational a = abs(c);
        if (first) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        first = false;
        if (m.empty()) {
            s += rational_latex(a);
        } else {
            if (a != 1) s += rational_latex(a);
            s += mono_string(m, true);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Division and gcd

param_poly exact_divide(const param_poly& a, const param_poly& b) {
    if (b.is_zero()) throw division_by_zero("polynomial division by zero");
    if (b.is_constant()) return a.scaled(1 / b.constant_value());
    param_poly q, r = a;
    const auto& lb = b.leading_monomial();
    const rational lcb = b.leading_coefficient();
    pmono quot;
    while (!r.is_zero()) {
        if (!mono_div(r.leading_monomial(), lb, quot))
            throw std::domain_error("inexact polynomial division: " + a.to_string() + " by " + b.to_string());
        param_poly mono_term = param_poly::from_term(quot, r.leading_coefficient() / lcb);
        q += mono_term;
        r -= mono_term * b;
    }
    return q;
}

namespace {

std::uint16_t max_variable(const param_poly& a, const param_poly& b) {
    std::uint16_t v = 0;
    bool any = false;
    for (const auto* p : {&a, &b})
        for (auto& [m, c] : p->terms())
            for (auto& [id, e] : m) {
                if (!any || id > v) v = id;
                any = true;
            }
    return v;
}

param_poly content_in(const param_poly& p, param v) {
    param_poly g;
    for (auto& c : p.coefficients_in(v)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

using upoly = std::vector<param_poly>;

void trim(upoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

upoly pseudo_remainder(upoly a, const upoly& b) {
    const std::size_t m = b.size() - 1;
    const param_poly& lc = b.back();
    trim(a);
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        param_poly lead = a.back();
        for (auto& c : a) c *= lc;
        for (std::size_t k = 0; k <= m; ++k) a[k + shift] -= lead * b[k];
        trim(a);
    }
    return a;
}

// Integer coefficients with gcd 1 across the whole vector.
void strip_rational_content(upoly& a) {
    mpz_class num = 0, den = 1;
    for (auto& c : a)
        for (auto& [m, q] : c.terms()) {
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        }
    if (num == 0) return;
    rational scale{den, num};
    scale.canonicalize();
    if (scale == 1) return;
    for (auto& c : a) c = c.scaled(scale);
}

upoly make_primitive(upoly a) {
    strip_rational_content(a);
    param_poly g;
    for (auto& c : a) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    if (!g.is_one() && !g.is_zero())
        for (auto& c : a) c = exact_divide(c, g);
    strip_rational_content(a);
    return a;
}

}  // namespace

param_poly gcd(const param_poly& a, const param_poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return param_poly{1};
    if (a.monic() == b.monic()) return a.monic();

    param v = param::from_id(max_variable(a, b));
    if (!a.has_variable(v)) return gcd(a, content_in(b, v));
    if (!b.has_variable(v)) return gcd(content_in(a, v), b);

    param_poly ca = content_in(a, v), cb = content_in(b, v);
    upoly pa = exact_divide(a, ca).coefficients_in(v);
    upoly pb = exact_divide(b, cb).coefficients_in(v);
    param_poly gc = gcd(ca, cb);
    if (pa.size() < pb.size()) std::swap(pa, pb);
    strip_rational_content(pa);
    strip_rational_content(pb);

    upoly g;
    for (;;) {
        upoly r = pseudo_remainder(pa, pb);
        if (r.empty()) {
            g = make_primitive(pb);
            break;
        }
        if (r.size() == 1) {
            g = {param_poly{1}};
            break;
        }
        pa = std::move(pb);
        pb = make_primitive(std::move(r));
    }
    return (gc * param_poly::from_coefficients(v, g)).monic();
}

// ---------------------------------------------------------------------------
// Rational roots

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> small, large;
    if (n == 0) return {};
    if (n > mpz_class{"1000000000000000000"})
        throw std::domain_error("coefficient too large for rational-root search");
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

rational horner(const std::vector<rational>& c, const rational& x) {
    rational acc = 0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
}

std::vector<rational> synthetic_divide(const std::vector<rational>& c, const rational& r) {
    // c has degree n; returns quotient of degree n-1
    std::size_t n = c.size() - 1;
    std::vector<rational> q(n);
    rational carry = 0;
    for (std::size_t k = n; k-- > 0;) {
        carry = c[k + 1] + carry * r;
        q[k] = carry;
    }
    return q;
}

}  // namespace

root_report rational_roots(const param_poly& p) {
    if (p.is_zero()) throw std::domain_error("identically zero condition");
    auto vars = p.variables();
    if (vars.size() > 1) throw std::invalid_argument("rational_roots expects a univariate polynomial: " + p.to_string());
    root_report out;
    if (vars.empty()) {
        out.residual = param_poly{1};
        return out;
    }
    out.variable = vars.front();
    std::vector<rational> c;
    for (auto& k : p.primitive_integer().coefficients_in(out.variable)) c.push_back(k.constant_value());

    while (c.size() > 1 && c.front() == 0) {
        out.roots.push_back(0);
        c.erase(c.begin());
    }
    bool progress = true;
    while (c.size() > 1 && progress) {
        progress = false;
        auto lead = c.back(), tail = c.front();
        // c is integral up to a common factor; rescale to integers
        mpz_class den_lcm = 1;
        for (auto& k : c) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), k.get_den_mpz_t());
        mpz_class a0 = mpz_class{tail * den_lcm}, an = mpz_class{lead * den_lcm};
        for (auto& num : positive_divisors(a0)) {
            for (auto& den : positive_divisors(an)) {
                for (int sign : {1, -1}) {
                    rational r{num * sign, den};
                    r.canonicalize();
                    if (horner(c, r) == 0) {
                        out.roots.push_back(r);
                        c = synthetic_divide(c, r);
                        progress = true;
                        break;
                    }
                }
                if (progress) break;
            }
            if (progress) break;
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    std::vector<param_poly> coeffs;
    for (auto& k : c) coeffs.emplace_back(k);
    out.residual = param_poly::from_coefficients(out.variable, coeffs).primitive_integer();
    return out;
}

// ---------------------------------------------------------------------------
// param_ratfun

param_ratfun::param_ratfun(const param_poly& num, const param_poly& den) : num_{num}, den_{den} {
    if (den_.is_zero()) throw division_by_zero("rational function with zero denominator");
    normalize();
}

void param_ratfun::normalize() {
    if (num_.is_zero()) {
        den_ = param_poly{1};
        return;
    }
    if (den_.is_constant()) {
        num_ = num_.scaled(1 / den_.constant_value());
        den_ = param_poly{1};
        return;
    }
    param_poly g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ = exact_divide(num_, g);
        den_ = exact_divide(den_, g);
    }
    rational lc = den_.leading_coefficient();
    if (lc != 1) {
        num_ = num_.scaled(1 / lc);
        den_ = den_.scaled(1 / lc);
    }
    if (den_.is_constant()) den_ = param_poly{1};
}

rational param_ratfun::constant_value() const {
    if (!is_constant()) throw std::domain_error("not a constant: " + to_string());
    return num_.constant_value();
}

std::vector<param> param_ratfun::variables() const {
    auto a = num_.variables(), b = den_.variables();
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

param_ratfun param_ratfun::operator-() const {
    param_ratfun out = *this;
    out.num_ = -out.num_;
    return out;
}

param_ratfun& param_ratfun::operator+=(const param_ratfun& o) {
    if (o.is_zero()) return *this;
    if (den_.is_one() && o.den_.is_one()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

param_ratfun& param_ratfun::operator-=(const param_ratfun& o) { return *this += -o; }

param_ratfun& param_ratfun::operator*=(const param_ratfun& o) {
    if (is_zero() || o.is_zero()) return *this = param_ratfun{};
    if (den_.is_one() && o.den_.is_one()) {
        num_ *= o.num_;
        return *this;
    }
    param_poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    param_poly n = exact_divide(num_, g1) * exact_divide(o.num_, g2);
    param_poly d = exact_divide(den_, g2) * exact_divide(o.den_, g1);
    num_ = std::move(n);
    den_ = std::move(d);
    rational lc = den_.leading_coefficient();
    if (lc != 1) {
        num_ = num_.scaled(1 / lc);
        den_ = den_.scaled(1 / lc);
    }
    if (den_.is_constant()) den_ = param_poly{1};
    return *this;
}

param_ratfun& param_ratfun::operator/=(const param_ratfun& o) { return *this *= o.inverse(); }

param_ratfun param_ratfun::inverse() const {
    if (is_zero()) throw division_by_zero("division by zero in Q(params)");
    return param_ratfun{den_, num_};
}

param_ratfun param_ratfun::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    param_ratfun out{1}, base = *this;
    auto k = static_cast<unsigned>(n);
    while (k) {
        if (k & 1u) out *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return out;
}

namespace {

std::string vanishing_factor(const param_poly& den, const std::map<param, rational>& at) {
    auto vars = den.variables();
    if (vars.size() == 1) {
        auto it = at.find(vars.front());
        if (it != at.end()) {
            param_poly lin = param_poly::variable(vars.front()) - param_poly{it->second};
            return lin.primitive_integer().to_string();
        }
    }
    return den.to_string();
}

}  // namespace

rational param_ratfun::evaluate(const std::map<param, rational>& at) const {
    rational d = den_.evaluate(at);
    if (d == 0) {
        std::ostringstream msg;
        msg << "pole: denominator " << den_.to_string() << " vanishes (factor " << vanishing_factor(den_, at) << ")";
        throw pole_error(msg.str());
    }
    return num_.evaluate(at) / d;
}

param_ratfun param_ratfun::specialize(param p, const rational& value) const {
    param_poly d = den_.evaluate(p, value);
    if (d.is_zero()) {
        std::ostringstream msg;
        msg << "pole: denominator " << den_.to_string() << " vanishes (factor "
            << vanishing_factor(den_, {{p, value}}) << ")";
        throw pole_error(msg.str());
    }
    return param_ratfun{num_.evaluate(p, value), d};
}

param_ratfun param_ratfun::substitute(param p, const param_ratfun& value) const {
    if (!has_variable(p)) return *this;
    if (value.is_polynomial()) {
        param_poly d = den_.substitute(p, value.num_);
        if (d.is_zero()) throw pole_error("substitution makes denominator vanish: " + den_.to_string());
        return param_ratfun{num_.substitute(p, value.num_), d};
    }
    auto homogenize = [&](const param_poly& poly, std::uint32_t deg) {
        auto coeffs = poly.coefficients_in(p);
        param_poly out;
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            out += coeffs[k] * value.num_.pow(static_cast<unsigned>(k)) *
                   value.den_.pow(deg - static_cast<unsigned>(k));
        return out;
    };
    std::uint32_t dn = num_.degree(p), dd = den_.degree(p);
    param_ratfun n{homogenize(num_, dn)}, d{homogenize(den_, dd)};
    if (d.is_zero()) throw pole_error("substitution makes denominator vanish: " + den_.to_string());
    return n / d * param_ratfun{value.den_}.pow(static_cast<int>(dd) - static_cast<int>(dn));
}

param_ratfun param_ratfun::derivative(param p) const {
    if (!has_variable(p)) return {};
    return param_ratfun{num_.derivative(p) * den_ - num_ * den_.derivative(p), den_ * den_};
}

std::string param_ratfun::to_string() const {
    if (den_.is_one()) return num_.to_string();
    auto wrap = [](const param_poly& x) {
        return x.size() == 1 && x.leading_coefficient() == 1 ? x.to_string() : "(" + x.to_string() + ")";
    };
    return wrap(num_) + "/" + wrap(den_);
}

std::string param_ratfun::to_latex() const {
    if (den_.is_one()) return num_.to_latex();
    return "\\frac{" + num_.to_latex() + "}{" + den_.to_latex() + "}";
}

param_ratfun ratfun_arith(const param_ratfun& a, const param_ratfun& b, field_op op) {
    switch (op) {
        case field_op::add: return a + b;
        case field_op::sub: return a - b;
        case field_op::mul: return a * b;
        case field_op::div: return a / b;
    }
    throw std::invalid_argument("unknown field operation");
}

rational parse_rational(std::string_view text) {
    std::string s{text};
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool slash = false, digits = false;
    for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] == '/' && !slash && digits) {
            slash = true;
            digits = false;
        } else if (s[k] >= '0' && s[k] <= '9') {
            digits = true;
        } else {
            throw std::invalid_argument("malformed rational literal '" + s + "'");
        }
    }
    if (!digits) throw std::invalid_argument("malformed rational literal '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    rational q;
    q.set_str(s, 10);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace projcoh
