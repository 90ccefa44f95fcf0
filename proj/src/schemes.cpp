#include "perturb/schemes.hpp"

#include <algorithm>

#include <gmpxx.h>

#include "perturb/errors.hpp"

namespace perturb {

std::string scheme_name(SchemeId s) {
    switch (s) {
        case SchemeId::E: return "E";
        case SchemeId::A: return "A";
        case SchemeId::YL: return "YL";
        case SchemeId::YT: return "YT";
    }
    return "?";
}

SchemeId scheme_from_name(const std::string& name) {
    if (name == "E") return SchemeId::E;
    if (name == "A") return SchemeId::A;
    if (name == "YL") return SchemeId::YL;
    if (name == "YT") return SchemeId::YT;
    throw Error(ErrorCode::ParseError, "unknown scheme '" + name + "'");
}

std::int64_t eps_weight_exponent(std::int64_t point_index, int axis) {
    return 3 * point_index - axis + 2;
}

std::pair<Polynomial, Polynomial> expand_point(SchemeId scheme, std::int64_t i) {
    Polynomial x = Polynomial::variable(Symbol::coordinate(i, 1));
    Polynomial y = Polynomial::variable(Symbol::coordinate(i, 2));
    switch (scheme) {
        case SchemeId::E: {
            Polynomial ex = Polynomial::variable(Symbol::eps_coord(i, 1));
            Polynomial ey = Polynomial::variable(Symbol::eps_coord(i, 2));
            return {x + ex, y + ey};
        }
        case SchemeId::A: {
            Polynomial e = Polynomial::variable(Symbol::eps_global());
            return {x + e * y, y + pow(e, 2) * x + pow(e, 3) * (x * x + y * y)};
        }
        case SchemeId::YL:
        case SchemeId::YT:
            return {x, y};
    }
    return {x, y};
}

namespace {

void require_family(SchemeId scheme, const TableKeyFactors& k) {
    for (const auto& [s, e] : k) {
        bool ok = false;
        switch (scheme) {
            case SchemeId::E: ok = s.kind() == Symbol::Kind::EpsCoord; break;
            case SchemeId::A: ok = s.kind() == Symbol::Kind::EpsGlobal; break;
            case SchemeId::YL:
            case SchemeId::YT: ok = s.is_coordinate(); break;
        }
        if (!ok)
            throw Error(ErrorCode::IncomparableKeys,
                        "key symbol " + s.spelling() + " does not belong to scheme " + scheme_name(scheme));
    }
}

// Magnitude-exponent comparison for scheme E. With unit exponents the weights
// are sums of distinct powers of two; comparing the descending exponent lists
// decides without big arithmetic. Repeated factors (invalid under E but legal
// input) fall back to exact big-integer sums.
int compare_eps_products(const TableKeyFactors& a, const TableKeyFactors& b) {
    bool unit = true;
    for (const auto& [s, e] : a) unit = unit && e == 1;
    for (const auto& [s, e] : b) unit = unit && e == 1;
    if (unit) {
        // Factor vectors are sorted by symbol; the weight exponent 3i-j+2 is
        // strictly increasing along them, so walk from the back.
        std::size_t i = a.size(), j = b.size();
        while (i > 0 && j > 0) {
            std::int64_t ea = eps_weight_exponent(a[i - 1].first.point(), a[i - 1].first.axis());
            std::int64_t eb = eps_weight_exponent(b[j - 1].first.point(), b[j - 1].first.axis());
            if (ea != eb) return ea < eb ? -1 : 1;
            --i, --j;
        }
        if (i == j) return 0;
        return i < j ? -1 : 1;
    }
    auto weight = [](const TableKeyFactors& k) {
        mpz_class w(0);
        for (const auto& [s, e] : k) {
            mpz_class f(1);
            mpz_mul_2exp(f.get_mpz_t(), f.get_mpz_t(),
                         static_cast<mp_bitcnt_t>(eps_weight_exponent(s.point(), s.axis())));
            w += f * e;
        }
        return w;
    };
    mpz_class wa = weight(a), wb = weight(b);
    if (wa == wb) return 0;
    return wa < wb ? -1 : 1;
}

int compare_powers(const TableKeyFactors& a, const TableKeyFactors& b) {
    std::uint64_t pa = 0, pb = 0;
    for (const auto& [s, e] : a) pa += e;
    for (const auto& [s, e] : b) pb += e;
    if (pa == pb) return 0;
    return pa < pb ? -1 : 1;
}

// Colexicographic comparison of derivative multi-indices: decide at the
// highest symbol where the indices differ; the smaller entry there is earlier.
int compare_colex(const TableKeyFactors& a, const TableKeyFactors& b) {
    std::size_t i = a.size(), j = b.size();
    while (i > 0 && j > 0) {
        const auto& [sa, ea] = a[i - 1];
        const auto& [sb, eb] = b[j - 1];
        if (sa != sb) return sa < sb ? -1 : 1;  // the larger symbol's owner is later
        if (ea != eb) return ea < eb ? -1 : 1;
        --i, --j;
    }
    if (i == j) return 0;
    return i < j ? -1 : 1;
}

std::uint64_t key_order(const TableKeyFactors& k) {
    std::uint64_t d = 0;
    for (const auto& [s, e] : k) d += e;
    return d;
}

}  // namespace

int compare_keys(SchemeId scheme, const TableKeyFactors& a, const TableKeyFactors& b) {
    require_family(scheme, a);
    require_family(scheme, b);
    switch (scheme) {
        case SchemeId::E: return compare_eps_products(a, b);
        case SchemeId::A: return compare_powers(a, b);
        case SchemeId::YL: return compare_colex(a, b);
        case SchemeId::YT: {
            std::uint64_t da = key_order(a), db = key_order(b);
            if (da != db) return da < db ? -1 : 1;
            return compare_colex(a, b);
        }
    }
    return 0;
}

namespace {

void gen_multi_indices(const std::vector<Symbol>& symbols, std::size_t pos, std::uint64_t budget,
                       TableKeyFactors& current, std::vector<TableKeyFactors>& out) {
    if (pos == symbols.size()) {
        out.push_back(current);
        return;
    }
    for (std::uint64_t e = 0; e <= budget; ++e) {
        if (e > 0) current.emplace_back(symbols[pos], static_cast<std::uint32_t>(e));
        gen_multi_indices(symbols, pos + 1, budget - e, current, out);
        if (e > 0) current.pop_back();
    }
}

}  // namespace

std::vector<TableKeyFactors> enumerate_keys(SchemeId scheme, const Polynomial& expr) {
    std::vector<TableKeyFactors> keys;
    if (scheme_uses_epsilon(scheme)) {
        for (const auto& [eps, coeff] : collect_by_epsilon(expr)) keys.push_back(eps);
    } else {
        std::vector<Symbol> coords;
        for (const auto& s : expr.symbols())
            if (s.is_coordinate()) coords.push_back(s);
        TableKeyFactors current;
        gen_multi_indices(coords, 0, expr.total_degree(), current, keys);
    }
    std::sort(keys.begin(), keys.end(), [scheme](const TableKeyFactors& a, const TableKeyFactors& b) {
        return compare_keys(scheme, a, b) < 0;
    });
    return keys;
}

}  // namespace perturb
