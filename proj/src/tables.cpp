#include "perturb/tables.hpp"

#include <map>
#include <mutex>

#include <json.hpp>

#include "perturb/errors.hpp"

namespace perturb {

std::string table_kind_name(TableKind k) {
    switch (k) {
        case TableKind::LexOrder: return "lex_order";
        case TableKind::Orient3: return "orient3";
        case TableKind::SegOrderParam: return "segment_order_param";
        case TableKind::SegOrderDual: return "segment_order_dual";
        case TableKind::SegCross: return "segment_cross";
    }
    return "?";
}

TableKind table_kind_from_name(const std::string& name) {
    if (name == "segment_cross") return TableKind::SegCross;
    return table_kind_of(predicate_from_name(name));
}

TableKind table_kind_of(PredicateKind k) {
    switch (k) {
        case PredicateKind::LexOrder: return TableKind::LexOrder;
        case PredicateKind::Orient3: return TableKind::Orient3;
        case PredicateKind::SegOrderParam: return TableKind::SegOrderParam;
        case PredicateKind::SegOrderDual: return TableKind::SegOrderDual;
    }
    return TableKind::Orient3;
}

std::size_t table_kind_arity(TableKind k) {
    return k == TableKind::SegCross ? 4
                                    : predicate_arity(static_cast<PredicateKind>(k));
}

namespace {

void validate_cross_pattern(const SlotPattern& p) {
    if (p.slots.size() != 4)
        throw Error(ErrorCode::PatternMismatch, "segment cross product needs 4 slots");
    if (p.slots[0] == p.slots[1] || p.slots[2] == p.slots[3])
        throw Error(ErrorCode::RepeatedIndex, "segment with equal endpoint indices");
    if (std::minmax(p.slots[0], p.slots[1]) == std::minmax(p.slots[2], p.slots[3]))
        throw Error(ErrorCode::IdenticalSegments, "cross product of a segment with itself");
}

Polynomial cross_expr(const SlotPattern& p, SchemeId scheme) {
    validate_cross_pattern(p);
    std::array<std::pair<Polynomial, Polynomial>, 4> pts;
    for (int i = 0; i < 4; ++i)
        pts[static_cast<std::size_t>(i)] = expand_point(scheme, p.slots[static_cast<std::size_t>(i)]);
    Polynomial ux = pts[1].first - pts[0].first, uy = pts[1].second - pts[0].second;
    Polynomial vx = pts[3].first - pts[2].first, vy = pts[3].second - pts[2].second;
    return ux * vy - uy * vx;
}

Polynomial build_expr(TableKind kind, const SlotPattern& pattern, SchemeId scheme) {
    switch (kind) {
        case TableKind::LexOrder: return sym_lex(pattern, scheme);
        case TableKind::Orient3: return sym_orient(pattern, scheme);
        case TableKind::SegOrderParam: return sym_segment_order_param(pattern, scheme).numerator;
        case TableKind::SegOrderDual: return sym_segment_order_dual(pattern, scheme);
        case TableKind::SegCross: return cross_expr(pattern, scheme);
    }
    return Polynomial();
}

EvaluationTable table_from_epsilon_groups(const Polynomial& expr, SchemeId scheme) {
    EvaluationTable t;
    t.scheme = scheme;
    auto groups = collect_by_epsilon(expr);
    std::vector<TableKeyFactors> keys;
    keys.reserve(groups.size());
    for (const auto& [k, v] : groups) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [scheme](const TableKeyFactors& a, const TableKeyFactors& b) {
        int c = compare_keys(scheme, a, b);
        if (c != 0) return c < 0;
        return monomial_order_before(a, b);  // deterministic order within a magnitude tie
    });
    // Distinct epsilon products can share one magnitude once exponents exceed
    // one (shared-endpoint patterns square an epsilon: eps_{i,2}^2 weighs
    // exactly as much as eps_{i,1}). Same-magnitude groups scale identically,
    // so their coefficients must be summed into a single row; a row whose
    // merged coefficient cancels to zero is no row at all.
    std::size_t i = 0;
    while (i < keys.size()) {
        std::size_t j = i;
        Polynomial coeff;
        while (j < keys.size() && compare_keys(scheme, keys[i], keys[j]) == 0) {
            coeff += groups.at(keys[j]);
            ++j;
        }
        if (!coeff.is_zero()) {
            t.rows.push_back({keys[i], coeff, stats(coeff)});
            if (coeff.is_constant()) {
                t.terminal = coeff.constant_value();
                return t;
            }
        }
        i = j;
    }
    if (scheme == SchemeId::E)
        throw Error(ErrorCode::NoConstantRow,
                    "epsilon products exhausted without a constant coefficient");
    return t;  // scheme A: no constant row; validity rests on distinct input points
}

EvaluationTable table_from_derivatives(const Polynomial& expr, SchemeId scheme) {
    if (expr.is_zero())
        throw Error(ErrorCode::NoConstantRow, "cannot table the zero polynomial");
    EvaluationTable t;
    t.scheme = scheme;
    for (const auto& key : enumerate_keys(scheme, expr)) {
        Polynomial deriv = expr;
        Rational factorial(1);
        for (const auto& [sym, order] : key) {
            for (std::uint32_t k = 1; k <= order; ++k) {
                deriv = differentiate(deriv, sym);
                factorial *= Rational(static_cast<long>(k));
            }
        }
        if (deriv.is_zero()) continue;
        Polynomial coeff = deriv * Polynomial(Rational(1) / factorial);  // Taylor coefficient
        t.rows.push_back({key, coeff, stats(coeff)});
        if (coeff.is_constant()) {
            t.terminal = coeff.constant_value();
            return t;
        }
    }
    throw Error(ErrorCode::NoConstantRow, "derivatives exhausted without a constant");
}

}  // namespace

EvaluationTable compute_table_from_expr(const Polynomial& expr, SchemeId scheme) {
    return scheme_uses_epsilon(scheme) ? table_from_epsilon_groups(expr, scheme)
                                       : table_from_derivatives(expr, scheme);
}

EvaluationTable compute_table(TableKind kind, const SlotPattern& pattern, SchemeId scheme) {
    // Build over representative indices (the ranks of the pattern's indices)
    // so evaluation can bind concrete points by rank; the key order induced
    // by the ranks matches the one the concrete indices would induce.
    SlotPattern reps{pattern_reps(pattern)};
    Polynomial expr = build_expr(kind, reps, scheme);
    EvaluationTable t = compute_table_from_expr(expr, scheme);
    t.kind = kind;
    t.shape = pattern_shape(pattern);
    t.arity = pattern.slots.size();
    if (kind == TableKind::SegOrderParam || kind == TableKind::SegOrderDual) {
        Polynomial num = sym_segment_order_param(reps, scheme).numerator;
        Polynomial dual = sym_segment_order_dual(reps, scheme);
        if (dual == num)
            t.dual_sign = 1;
        else if (dual == -num)
            t.dual_sign = -1;
        else
            throw Error(ErrorCode::PatternMismatch,
                        "dual determinant does not match the parametrized numerator");
    }
    return t;
}

namespace {

struct CacheKey {
    TableKind kind;
    SchemeId scheme;
    PatternShape shape;

    bool operator<(const CacheKey& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (scheme != o.scheme) return scheme < o.scheme;
        return shape < o.shape;
    }
};

std::mutex cache_mutex;
std::map<CacheKey, std::shared_ptr<const EvaluationTable>> cache;

}  // namespace

std::shared_ptr<const EvaluationTable> cached_table(TableKind kind, const SlotPattern& pattern,
                                                    SchemeId scheme) {
    CacheKey key{kind, scheme, pattern_shape(pattern)};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto table = std::make_shared<const EvaluationTable>(compute_table(kind, pattern, scheme));
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(key, table).first->second;
}

SosValidity verify_sos_properties(const Polynomial& expr) {
    SosValidity v;
    v.unit_epsilon_exponents = true;
    for (const auto& t : expr.terms())
        for (const auto& [s, e] : t.factors)
            if (s.is_epsilon() && e > 1) v.unit_epsilon_exponents = false;
    for (const auto& [key, coeff] : collect_by_epsilon(expr))
        if (!key.empty() && coeff.is_constant()) v.constant_coefficient_product = true;
    return v;
}

TableStats table_stats(const EvaluationTable& t) {
    TableStats st;
    for (const auto& row : t.rows) st.rows.push_back(row.row_stats);
    st.max_depth = t.max_depth();
    return st;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json factors_to_json(const FactorVec& f) {
    ordered_json arr = ordered_json::array();
    for (const auto& [s, e] : f) arr.push_back(ordered_json::array({s.spelling(), e}));
    return arr;
}

FactorVec factors_from_json(const ordered_json& arr) {
    FactorVec f;
    for (const auto& item : arr)
        f.emplace_back(Symbol::from_spelling(item.at(0).get<std::string>()), item.at(1).get<std::uint32_t>());
    return f;
}

ordered_json poly_to_json_obj(const Polynomial& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : p.terms()) {
        ordered_json term;
        term["coeff"] = t.coeff.fraction_string();
        term["factors"] = factors_to_json(t.factors);
        arr.push_back(std::move(term));
    }
    return arr;
}

Polynomial poly_from_json_obj(const ordered_json& arr) {
    std::vector<Monomial> terms;
    for (const auto& item : arr) {
        Monomial m;
        m.coeff = Rational::parse(item.at("coeff").get<std::string>());
        m.factors = factors_from_json(item.at("factors"));
        terms.push_back(std::move(m));
    }
    return Polynomial::from_terms(std::move(terms));
}

}  // namespace

std::string table_to_json(const EvaluationTable& t) {
    ordered_json j;
    j["kind"] = table_kind_name(t.kind);
    j["scheme"] = scheme_name(t.scheme);
    j["pattern"]["partition"] = t.shape.partition;
    j["pattern"]["ranks"] = t.shape.ranks;
    j["arity"] = t.arity;
    if (t.kind == TableKind::SegOrderParam || t.kind == TableKind::SegOrderDual)
        j["dual_sign"] = t.dual_sign;
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) {
        ordered_json r;
        r["key"] = factors_to_json(row.key);
        r["coeff"] = poly_to_json_obj(row.coeff);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["terminal"] = t.terminal ? ordered_json(t.terminal->fraction_string()) : ordered_json(nullptr);
    return j.dump(2) + "\n";
}

EvaluationTable table_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("bad table file: ") + e.what());
    }
    EvaluationTable t;
    t.kind = table_kind_from_name(j.at("kind").get<std::string>());
    t.scheme = scheme_from_name(j.at("scheme").get<std::string>());
    t.shape.partition = j.at("pattern").at("partition").get<std::vector<int>>();
    t.shape.ranks = j.at("pattern").at("ranks").get<std::vector<int>>();
    t.arity = j.at("arity").get<std::size_t>();
    if (j.contains("dual_sign")) t.dual_sign = j.at("dual_sign").get<int>();
    for (const auto& r : j.at("rows")) {
        TableRow row;
        row.key = factors_from_json(r.at("key"));
        row.coeff = poly_from_json_obj(r.at("coeff"));
        row.row_stats = stats(row.coeff);
        t.rows.push_back(std::move(row));
    }
    if (!j.at("terminal").is_null())
        t.terminal = Rational::parse(j.at("terminal").get<std::string>());
    return t;
}

}  // namespace perturb
