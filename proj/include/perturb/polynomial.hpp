#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "perturb/rational.hpp"
#include "perturb/symbol.hpp"

namespace perturb {

// Sorted (symbol, positive exponent) pairs; the canonical factor map of a monomial.
using FactorVec = std::vector<std::pair<Symbol, std::uint32_t>>;

struct Monomial {
    Rational coeff;     // never zero in a canonical polynomial
    FactorVec factors;  // sorted by symbol, no zero exponents

    std::uint64_t degree() const;
    bool operator==(const Monomial&) const = default;
};

// Strict graded-lex order on factor maps (higher degree first, then lexicographic
// over the symbol order). Canonical polynomials keep terms sorted by this.
bool monomial_order_before(const FactorVec& a, const FactorVec& b);

// Canonical sparse multivariate polynomial with exact rational coefficients.
// Canonical form is unique, so operator== is mathematical equality. All values
// are immutable once built; every operation returns a fresh polynomial.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(const Rational& c);
    explicit Polynomial(long c) : Polynomial(Rational(c)) {}

    static Polynomial variable(const Symbol& s);
    static Polynomial term(const Rational& coeff, FactorVec factors);
    static Polynomial from_terms(std::vector<Monomial> terms);  // normalizes

    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].factors.empty()); }
    // Constant value; zero polynomial yields 0.
    Rational constant_value() const;
    std::uint64_t total_degree() const;
    bool contains_symbol(const Symbol& s) const;
    std::vector<Symbol> symbols() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    std::string str() const;  // debugging aid

  private:
    std::vector<Monomial> terms_;  // canonical: sorted, combined, no zero coeffs
};

Polynomial pow(const Polynomial& p, std::uint32_t e);

// Simultaneous single-pass substitution. A symbol may appear in its own
// replacement (p -> p + eps); replacements must not mention other rewritten
// symbols, which would make the single pass order-dependent.
Polynomial substitute(const Polynomial& p, const std::map<Symbol, Polynomial>& map);

Polynomial differentiate(const Polynomial& p, const Symbol& s);

// Exact evaluation; throws UnboundSymbol listing every missing symbol.
Rational evaluate_exact(const Polynomial& p, const std::map<Symbol, Rational>& assignment);

// Partition of the terms by their exact epsilon part. The empty key holds the
// epsilon-free terms; each value contains no epsilon symbols, and
// sum(key * value) over the map reproduces the input exactly.
struct FactorVecOrder {
    bool operator()(const FactorVec& a, const FactorVec& b) const { return monomial_order_before(a, b); }
};
using EpsilonGroups = std::map<FactorVec, Polynomial, FactorVecOrder>;
EpsilonGroups collect_by_epsilon(const Polynomial& p);

struct PolyStats {
    std::uint64_t terms = 0;
    // Multiplications: factor multiplicity - 1 per term, plus 1 when the
    // term's coefficient is neither 1 nor -1. Additions: terms - 1.
    std::uint64_t ops = 0;
};
PolyStats stats(const Polynomial& p);

// JSON term-list form used by the table files:
//   [{"coeff": "n/d", "factors": [["p_0_1", 2], ...]}, ...]
std::string polynomial_to_json(const Polynomial& p);

}  // namespace perturb
