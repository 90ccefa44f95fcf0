#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "perturb/errors.hpp"
#include "perturb/schemes.hpp"
#include "support.hpp"

using namespace perturb;
using namespace perturb::testing;

namespace {

FactorVec product(std::initializer_list<Symbol> symbols) {
    FactorVec f;
    for (const auto& s : symbols) f.emplace_back(s, 1);
    std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return f;
}

}  // namespace

TEST_CASE("point expansions per scheme") {
    auto [ex, ey] = expand_point(SchemeId::E, 5);
    CHECK(ex == coord(5, 1) + eps(5, 1));
    CHECK(ey == coord(5, 2) + eps(5, 2));

    auto [ax, ay] = expand_point(SchemeId::A, 2);
    Polynomial e = Polynomial::variable(Symbol::eps_global());
    CHECK(ax == coord(2, 1) + e * coord(2, 2));
    CHECK(ay == coord(2, 2) + e * e * coord(2, 1) +
                    e * e * e * (coord(2, 1) * coord(2, 1) + coord(2, 2) * coord(2, 2)));

    auto [yx, yy] = expand_point(SchemeId::YL, 0);
    CHECK(yx == coord(0, 1));
    CHECK(yy == coord(0, 2));
    CHECK(expand_point(SchemeId::YT, 0) == expand_point(SchemeId::YL, 0));
}

TEST_CASE("distinct points get disjoint epsilons, shared slots share them") {
    auto [x0, y0] = expand_point(SchemeId::E, 0);
    auto [x1, y1] = expand_point(SchemeId::E, 1);
    for (const auto& s : (x0 + y0).symbols())
        if (s.is_epsilon()) CHECK(!(x1 + y1).contains_symbol(s));
    auto [x0b, y0b] = expand_point(SchemeId::E, 0);
    CHECK(x0 == x0b);
    CHECK(y0 == y0b);
}

TEST_CASE("scheme E magnitude order") {
    Symbol ei1 = Symbol::eps_coord(0, 1), ei2 = Symbol::eps_coord(0, 2);
    Symbol ej1 = Symbol::eps_coord(1, 1), ej2 = Symbol::eps_coord(1, 2);
    auto cmp = [](const FactorVec& a, const FactorVec& b) {
        return compare_keys(SchemeId::E, a, b);
    };
    // Full chain for the two-point cross product: 1, e_i2, e_i1, e_j2,
    // e_i1 e_j2, e_j1, e_i2 e_j1.
    std::vector<FactorVec> chain{{},
                                 product({ei2}),
                                 product({ei1}),
                                 product({ej2}),
                                 product({ei1, ej2}),
                                 product({ej1}),
                                 product({ei2, ej1})};
    for (std::size_t i = 0; i < chain.size(); ++i)
        for (std::size_t j = 0; j < chain.size(); ++j) {
            int expected = i == j ? 0 : (i < j ? -1 : 1);
            CHECK(cmp(chain[i], chain[j]) == expected);
        }
}

TEST_CASE("scheme E products never tie") {
    SplitMix64 rng(3);
    std::vector<Symbol> pool;
    for (std::int64_t i = 0; i < 4; ++i)
        for (int axis : {1, 2}) pool.push_back(Symbol::eps_coord(i, axis));
    for (int trial = 0; trial < 300; ++trial) {
        FactorVec a, b;
        for (const auto& s : pool) {
            if (rng.next_below(2)) a.emplace_back(s, 1);
            if (rng.next_below(2)) b.emplace_back(s, 1);
        }
        int c = compare_keys(SchemeId::E, a, b);
        CHECK((c == 0) == (a == b));
        CHECK(c == -compare_keys(SchemeId::E, b, a));
    }
}

TEST_CASE("scheme A orders by power") {
    FactorVec e1{{Symbol::eps_global(), 1}};
    FactorVec e2{{Symbol::eps_global(), 2}};
    CHECK(compare_keys(SchemeId::A, e1, e2) < 0);
    CHECK(compare_keys(SchemeId::A, {}, e1) < 0);
}

TEST_CASE("derivative orders: degree first for YT, unit first always") {
    FactorVec d1{{Symbol::coordinate(0, 1), 1}};
    FactorVec d2{{Symbol::coordinate(0, 1), 1}, {Symbol::coordinate(1, 2), 1}};
    CHECK(compare_keys(SchemeId::YT, d1, d2) < 0);
    CHECK(compare_keys(SchemeId::YT, {}, d1) < 0);
    CHECK(compare_keys(SchemeId::YL, {}, d1) < 0);
    // YL decides at the highest differing symbol: a second derivative of an
    // early symbol precedes a first derivative of a later one.
    FactorVec dxx{{Symbol::coordinate(0, 1), 2}};
    FactorVec dy{{Symbol::coordinate(0, 2), 1}};
    CHECK(compare_keys(SchemeId::YL, dxx, dy) < 0);
    CHECK(compare_keys(SchemeId::YT, dy, dxx) < 0);  // degree wins under YT
}

TEST_CASE("compare_keys is a strict total order") {
    SplitMix64 rng(17);
    std::vector<Symbol> coords{Symbol::coordinate(0, 1), Symbol::coordinate(0, 2),
                               Symbol::coordinate(1, 1), Symbol::coordinate(1, 2)};
    for (SchemeId scheme : {SchemeId::YL, SchemeId::YT}) {
        std::vector<FactorVec> keys;
        for (int t = 0; t < 40; ++t) {
            FactorVec k;
            for (const auto& s : coords)
                if (rng.next_below(2)) k.emplace_back(s, 1 + static_cast<std::uint32_t>(rng.next_below(3)));
            keys.push_back(k);
        }
        for (const auto& a : keys) CHECK(compare_keys(scheme, a, a) == 0);
        for (const auto& a : keys)
            for (const auto& b : keys) {
                int ab = compare_keys(scheme, a, b);
                CHECK(ab == -compare_keys(scheme, b, a));
                CHECK((ab == 0) == (a == b));
                if (ab == 0) continue;
                for (const auto& c : keys) {
                    // transitivity: a<b and b<c imply a<c
                    if (ab < 0 && compare_keys(scheme, b, c) < 0)
                        CHECK(compare_keys(scheme, a, c) < 0);
                }
            }
    }
}

TEST_CASE("mixed key families are rejected") {
    FactorVec e{{Symbol::eps_coord(0, 1), 1}};
    FactorVec d{{Symbol::coordinate(0, 1), 1}};
    CHECK_THROWS_AS(compare_keys(SchemeId::E, e, d), Error);
    CHECK_THROWS_AS(compare_keys(SchemeId::YL, e, d), Error);
    CHECK_THROWS_AS(compare_keys(SchemeId::A, e, e), Error);  // E epsilons are not A's
}

TEST_CASE("enumerate_keys returns present epsilon products in order") {
    Polynomial q = (coord(0, 1) + coord(1, 2)) + (coord(0, 1) + coord(0, 2)) * eps(0, 1) +
                   rat(10) * eps(0, 1) * eps(1, 2) + coord(0, 1) * eps(1, 2);
    auto keys = enumerate_keys(SchemeId::E, q);
    REQUIRE(keys.size() == 4);
    CHECK(keys[0] == FactorVec{});
    CHECK(keys[1] == product({Symbol::eps_coord(0, 1)}));
    CHECK(keys[2] == product({Symbol::eps_coord(1, 2)}));
    CHECK(keys[3] == product({Symbol::eps_coord(0, 1), Symbol::eps_coord(1, 2)}));
}

TEST_CASE("enumerate_keys for the global epsilon skips absent powers") {
    Polynomial e = Polynomial::variable(Symbol::eps_global());
    Polynomial q = coord(0, 1) + coord(0, 2) * e + rat(4) * e * e * e;
    auto keys = enumerate_keys(SchemeId::A, q);
    REQUIRE(keys.size() == 3);
    CHECK(keys[0].empty());
    CHECK(keys[1] == FactorVec{{Symbol::eps_global(), 1}});
    CHECK(keys[2] == FactorVec{{Symbol::eps_global(), 3}});
}

TEST_CASE("enumerate_keys walks derivative indices by total degree under YT") {
    // Bilinear form in four coordinates: 0th derivative, then the four first
    // derivatives, then the second-order indices.
    Polynomial f = coord(0, 1) * coord(1, 2) - coord(0, 2) * coord(1, 1);
    auto keys = enumerate_keys(SchemeId::YT, f);
    REQUIRE(keys.size() >= 5);
    CHECK(keys[0].empty());
    for (int i = 1; i <= 4; ++i) {
        std::uint64_t order = 0;
        for (const auto& [s, e] : keys[static_cast<std::size_t>(i)]) order += e;
        CHECK(order == 1);
    }
    std::uint64_t order5 = 0;
    for (const auto& [s, e] : keys[5]) order5 += e;
    CHECK(order5 == 2);
}
