#include "perturb/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "perturb/errors.hpp"

namespace perturb {

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (const auto& [s, e] : factors) d += e;
    return d;
}

bool monomial_order_before(const FactorVec& a, const FactorVec& b) {
    std::uint64_t da = 0, db = 0;
    for (const auto& [s, e] : a) da += e;
    for (const auto& [s, e] : b) db += e;
    if (da != db) return da > db;  // higher total degree listed first
    // Lexicographic over the symbol order: at the first difference the term
    // whose exponent sits on the earlier symbol (or is larger there) leads.
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first != b[j].first) return a[i].first < b[j].first;
        if (a[i].second != b[j].second) return a[i].second > b[j].second;
        ++i, ++j;
    }
    return false;  // equal maps (same degree forces i==a.size() and j==b.size())
}

Polynomial::Polynomial(const Rational& c) {
    if (!c.is_zero()) terms_.push_back({c, {}});
}

Polynomial Polynomial::variable(const Symbol& s) {
    Polynomial p;
    p.terms_.push_back({Rational(1), {{s, 1}}});
    return p;
}

Polynomial Polynomial::term(const Rational& coeff, FactorVec factors) {
    Polynomial p;
    if (coeff.is_zero()) return p;
    std::sort(factors.begin(), factors.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    FactorVec merged;
    for (const auto& [s, e] : factors) {
        if (e == 0) continue;
        if (!merged.empty() && merged.back().first == s)
            merged.back().second += e;
        else
            merged.emplace_back(s, e);
    }
    p.terms_.push_back({coeff, std::move(merged)});
    return p;
}

Polynomial Polynomial::from_terms(std::vector<Monomial> terms) {
    std::sort(terms.begin(), terms.end(), [](const Monomial& x, const Monomial& y) {
        return monomial_order_before(x.factors, y.factors);
    });
    Polynomial p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().factors == t.factors)
            p.terms_.back().coeff += t.coeff;
        else
            p.terms_.push_back(std::move(t));
        if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    }
    return p;
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    return terms_[0].coeff;
}

std::uint64_t Polynomial::total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.degree());
    return d;
}

bool Polynomial::contains_symbol(const Symbol& s) const {
    for (const auto& t : terms_)
        for (const auto& [sym, e] : t.factors)
            if (sym == s) return true;
    return false;
}

std::vector<Symbol> Polynomial::symbols() const {
    std::set<Symbol> seen;
    for (const auto& t : terms_)
        for (const auto& [sym, e] : t.factors) seen.insert(sym);
    return {seen.begin(), seen.end()};
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    // Merge of two canonical term lists.
    Polynomial r;
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        const auto& ta = a.terms_[i];
        const auto& tb = b.terms_[j];
        if (ta.factors == tb.factors) {
            Rational c = ta.coeff + tb.coeff;
            if (!c.is_zero()) r.terms_.push_back({c, ta.factors});
            ++i, ++j;
        } else if (monomial_order_before(ta.factors, tb.factors)) {
            r.terms_.push_back(ta);
            ++i;
        } else {
            r.terms_.push_back(tb);
            ++j;
        }
    }
    for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

namespace {

FactorVec multiply_factors(const FactorVec& a, const FactorVec& b) {
    FactorVec r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        } else if (a[i].first < b[j].first) {
            r.push_back(a[i++]);
        } else {
            r.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(b[j]);
    return r;
}

}  // namespace

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::map<FactorVec, Rational, FactorVecOrder> acc;
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            FactorVec f = multiply_factors(ta.factors, tb.factors);
            auto it = acc.find(f);
            if (it == acc.end())
                acc.emplace(std::move(f), ta.coeff * tb.coeff);
            else
                it->second += ta.coeff * tb.coeff;
        }
    }
    Polynomial r;
    for (auto& [f, c] : acc)
        if (!c.is_zero()) r.terms_.push_back({c, f});
    return r;
}

Polynomial pow(const Polynomial& p, std::uint32_t e) {
    Polynomial r(1);
    Polynomial base = p;
    while (e) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

Polynomial substitute(const Polynomial& p, const std::map<Symbol, Polynomial>& map) {
    for (const auto& [key, value] : map)
        for (const auto& [other, unused] : map)
            if (!(key == other) && value.contains_symbol(other))
                throw Error(ErrorCode::CyclicSubstitution,
                            "replacement for " + key.spelling() + " mentions rewritten symbol " +
                                other.spelling());
    Polynomial result;
    for (const auto& t : p.terms()) {
        Polynomial term_val(t.coeff);
        FactorVec untouched;
        for (const auto& [s, e] : t.factors) {
            auto it = map.find(s);
            if (it == map.end())
                untouched.emplace_back(s, e);
            else
                term_val *= pow(it->second, e);
        }
        if (!untouched.empty()) term_val *= Polynomial::term(Rational(1), untouched);
        result += term_val;
    }
    return result;
}

Polynomial differentiate(const Polynomial& p, const Symbol& s) {
    std::vector<Monomial> out;
    for (const auto& t : p.terms()) {
        for (std::size_t k = 0; k < t.factors.size(); ++k) {
            if (!(t.factors[k].first == s)) continue;
            Monomial d;
            d.coeff = t.coeff * Rational(static_cast<long>(t.factors[k].second));
            d.factors = t.factors;
            if (d.factors[k].second == 1)
                d.factors.erase(d.factors.begin() + static_cast<std::ptrdiff_t>(k));
            else
                d.factors[k].second -= 1;
            out.push_back(std::move(d));
            break;
        }
    }
    return Polynomial::from_terms(std::move(out));
}

Rational evaluate_exact(const Polynomial& p, const std::map<Symbol, Rational>& assignment) {
    std::set<Symbol> missing;
    for (const auto& t : p.terms())
        for (const auto& [s, e] : t.factors)
            if (!assignment.count(s)) missing.insert(s);
    if (!missing.empty()) {
        std::string names;
        for (const auto& s : missing) names += (names.empty() ? "" : ", ") + s.spelling();
        throw Error(ErrorCode::UnboundSymbol, "unbound symbols: " + names);
    }
    Rational sum(0);
    for (const auto& t : p.terms()) {
        Rational v = t.coeff;
        for (const auto& [s, e] : t.factors) v *= assignment.at(s).pow(e);
        sum += v;
    }
    return sum;
}

EpsilonGroups collect_by_epsilon(const Polynomial& p) {
    EpsilonGroups groups;
    for (const auto& t : p.terms()) {
        FactorVec eps_part, coord_part;
        for (const auto& [s, e] : t.factors)
            (s.is_epsilon() ? eps_part : coord_part).emplace_back(s, e);
        groups[eps_part] += Polynomial::term(t.coeff, coord_part);
    }
    return groups;
}

PolyStats stats(const Polynomial& p) {
    PolyStats st;
    st.terms = p.terms().size();
    for (const auto& t : p.terms()) {
        std::uint64_t deg = t.degree();
        if (deg > 0) {
            st.ops += deg - 1;
            // A coefficient other than +-1 costs one more multiplication.
            if (!t.coeff.is_one() && !(-t.coeff).is_one()) st.ops += 1;
        }
    }
    if (st.terms > 0) st.ops += st.terms - 1;
    return st;
}

std::string polynomial_to_json(const Polynomial& p) {
    std::ostringstream os;
    os << "[";
    bool first_term = true;
    for (const auto& t : p.terms()) {
        if (!first_term) os << ",";
        first_term = false;
        os << "{\"coeff\":\"" << t.coeff.fraction_string() << "\",\"factors\":[";
        bool first_factor = true;
        for (const auto& [s, e] : t.factors) {
            if (!first_factor) os << ",";
            first_factor = false;
            os << "[\"" << s.spelling() << "\"," << e << "]";
        }
        os << "]}";
    }
    os << "]";
    return os.str();
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << t.coeff.str();
        for (const auto& [s, e] : t.factors) {
            os << "*" << s.spelling();
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

}  // namespace perturb
