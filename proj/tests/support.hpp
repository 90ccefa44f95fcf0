#pragma once

// Shared helpers for the test binaries.

#include <array>
#include <vector>

#include "perturb/eval.hpp"
#include "perturb/polynomial.hpp"
#include "perturb/rng.hpp"

namespace perturb::testing {

inline Polynomial var(const Symbol& s) { return Polynomial::variable(s); }
inline Polynomial coord(std::int64_t i, int axis) { return var(Symbol::coordinate(i, axis)); }
inline Polynomial eps(std::int64_t i, int axis) { return var(Symbol::eps_coord(i, axis)); }
inline Polynomial rat(long n, long d = 1) { return Polynomial(Rational(n, d)); }

inline IndexedPoint pt(std::int64_t index, long x, long y) {
    return {index, Rational(x), Rational(y)};
}

inline IndexedPoint ptr(std::int64_t index, Rational x, Rational y) {
    return {index, std::move(x), std::move(y)};
}

// Independent expansion of the orientation determinant: the textbook six-term
// cofactor form written out literally, used as an oracle against the builders.
inline Polynomial orient_six_terms(std::int64_t i, std::int64_t j, std::int64_t k) {
    Polynomial xi = coord(i, 1), yi = coord(i, 2);
    Polynomial xj = coord(j, 1), yj = coord(j, 2);
    Polynomial xk = coord(k, 1), yk = coord(k, 2);
    return xi * yj - xi * yk - yi * xj + yi * xk + xj * yk - yj * xk;
}

// Small random polynomial over a fixed symbol pool, for algebraic-identity
// property tests.
inline Polynomial random_poly(SplitMix64& rng, int max_terms = 5, bool with_eps = false) {
    std::vector<Symbol> pool{Symbol::coordinate(0, 1), Symbol::coordinate(0, 2),
                             Symbol::coordinate(1, 1), Symbol::coordinate(1, 2)};
    if (with_eps) {
        pool.push_back(Symbol::eps_coord(0, 1));
        pool.push_back(Symbol::eps_coord(1, 2));
    }
    Polynomial p;
    int terms = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_terms)));
    for (int t = 0; t < terms; ++t) {
        long c = static_cast<long>(rng.next_below(9)) - 4;
        FactorVec factors;
        int nf = static_cast<int>(rng.next_below(3));
        for (int f = 0; f < nf; ++f)
            factors.emplace_back(pool[rng.next_below(pool.size())],
                                 1 + static_cast<std::uint32_t>(rng.next_below(2)));
        p += Polynomial::term(Rational(c), factors);
    }
    return p;
}

// Segments through one common point Q = (qx, qy): every pair of them crosses
// the base line at the same parameter once Q lies on it, which makes rich
// degenerate segment-order inputs that are not cocircular.
inline std::array<Segment, 2> pencil_pair(SplitMix64& rng, const Rational& qx, const Rational& qy) {
    std::array<Segment, 2> out;
    for (int s = 0; s < 2; ++s) {
        Rational dx = rng.next_rational(), dy = rng.next_rational();
        while (dx.is_zero() && dy.is_zero()) dx = rng.next_rational();
        Rational u(1 + static_cast<long>(rng.next_below(5)), 1 + static_cast<long>(rng.next_below(5)));
        Rational v(1 + static_cast<long>(rng.next_below(5)), 1 + static_cast<long>(rng.next_below(5)));
        out[static_cast<std::size_t>(s)] = {
            IndexedPoint{2 + 2 * s, qx - dx * u, qy - dy * u},
            IndexedPoint{3 + 2 * s, qx + dx * v, qy + dy * v}};
    }
    return out;
}

}  // namespace perturb::testing
