#include "perturb/predicates.hpp"

#include <algorithm>
#include <set>

#include "perturb/errors.hpp"

namespace perturb {

std::string predicate_name(PredicateKind k) {
    switch (k) {
        case PredicateKind::LexOrder: return "lex_order";
        case PredicateKind::Orient3: return "orient3";
        case PredicateKind::SegOrderParam: return "segment_order_param";
        case PredicateKind::SegOrderDual: return "segment_order_dual";
    }
    return "?";
}

PredicateKind predicate_from_name(const std::string& name) {
    if (name == "lex_order" || name == "lex") return PredicateKind::LexOrder;
    if (name == "orient3" || name == "orient") return PredicateKind::Orient3;
    if (name == "segment_order_param" || name == "seg-order-param" || name == "order-param")
        return PredicateKind::SegOrderParam;
    if (name == "segment_order_dual" || name == "seg-order-dual" || name == "order-dual")
        return PredicateKind::SegOrderDual;
    throw Error(ErrorCode::ParseError, "unknown predicate '" + name + "'");
}

std::size_t predicate_arity(PredicateKind k) {
    switch (k) {
        case PredicateKind::LexOrder: return 2;
        case PredicateKind::Orient3: return 3;
        case PredicateKind::SegOrderParam:
        case PredicateKind::SegOrderDual: return 6;
    }
    return 0;
}

PatternShape pattern_shape(const SlotPattern& p) {
    PatternShape shape;
    std::vector<std::int64_t> distinct;  // by first occurrence
    for (auto idx : p.slots) {
        auto it = std::find(distinct.begin(), distinct.end(), idx);
        if (it == distinct.end()) {
            shape.partition.push_back(static_cast<int>(distinct.size()));
            distinct.push_back(idx);
        } else {
            shape.partition.push_back(static_cast<int>(it - distinct.begin()));
        }
    }
    std::vector<std::int64_t> sorted = distinct;
    std::sort(sorted.begin(), sorted.end());
    for (auto idx : distinct) {
        auto pos = std::lower_bound(sorted.begin(), sorted.end(), idx) - sorted.begin();
        shape.ranks.push_back(static_cast<int>(pos));
    }
    return shape;
}

std::vector<std::int64_t> pattern_reps(const SlotPattern& p) {
    PatternShape shape = pattern_shape(p);
    std::vector<std::int64_t> reps;
    reps.reserve(p.slots.size());
    for (std::size_t i = 0; i < p.slots.size(); ++i)
        reps.push_back(shape.ranks[static_cast<std::size_t>(shape.partition[i])]);
    return reps;
}

void validate_pattern(PredicateKind kind, const SlotPattern& p) {
    if (p.slots.size() != predicate_arity(kind))
        throw Error(ErrorCode::PatternMismatch,
                    predicate_name(kind) + " needs " + std::to_string(predicate_arity(kind)) +
                        " slots, got " + std::to_string(p.slots.size()));
    switch (kind) {
        case PredicateKind::LexOrder:
            if (p.slots[0] == p.slots[1])
                throw Error(ErrorCode::SameIndex, "lexicographic order of a point with itself");
            break;
        case PredicateKind::Orient3:
            if (p.slots[0] == p.slots[1] || p.slots[0] == p.slots[2] || p.slots[1] == p.slots[2])
                throw Error(ErrorCode::RepeatedIndex, "orientation needs three distinct indices");
            break;
        case PredicateKind::SegOrderParam:
        case PredicateKind::SegOrderDual: {
            for (int s = 0; s < 3; ++s)
                if (p.slots[2 * s] == p.slots[2 * s + 1])
                    throw Error(ErrorCode::RepeatedIndex,
                                "segment " + std::to_string(s) + " has equal endpoint indices");
            auto seg = [&](int s) {
                return std::minmax(p.slots[2 * s], p.slots[2 * s + 1]);
            };
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b)
                    if (seg(a) == seg(b))
                        throw Error(ErrorCode::IdenticalSegments,
                                    "segments " + std::to_string(a) + " and " + std::to_string(b) +
                                        " are the same edge");
            // Both compared segments hanging off one base endpoint meet the
            // base line there for every perturbation (endpoint perturbation
            // preserves incidence), so their order is identically tied.
            auto contains = [&](int s, std::int64_t idx) {
                return p.slots[2 * s] == idx || p.slots[2 * s + 1] == idx;
            };
            for (std::int64_t base_end : {p.slots[0], p.slots[1]})
                if (contains(1, base_end) && contains(2, base_end))
                    throw Error(ErrorCode::TiedByIncidence,
                                "both compared segments pass through base endpoint " +
                                    std::to_string(base_end));
            break;
        }
    }
}

namespace {

struct Vec2 {
    Polynomial x, y;
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
};

Polynomial cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

std::vector<Vec2> expanded_slots(const SlotPattern& p, SchemeId scheme) {
    std::vector<Vec2> pts;
    pts.reserve(p.slots.size());
    for (auto idx : p.slots) {
        auto [x, y] = expand_point(scheme, idx);
        pts.push_back({std::move(x), std::move(y)});
    }
    return pts;
}

}  // namespace

Polynomial sym_lex(const SlotPattern& p, SchemeId scheme) {
    validate_pattern(PredicateKind::LexOrder, p);
    auto pts = expanded_slots(p, scheme);
    return pts[0].x - pts[1].x;
}

Polynomial sym_orient(const SlotPattern& p, SchemeId scheme) {
    validate_pattern(PredicateKind::Orient3, p);
    auto pts = expanded_slots(p, scheme);
    return cross(pts[1] - pts[0], pts[2] - pts[0]);
}

SegOrderParts sym_segment_order_param(const SlotPattern& p, SchemeId scheme) {
    validate_pattern(PredicateKind::SegOrderParam, p);
    auto pts = expanded_slots(p, scheme);
    Vec2 r = pts[1] - pts[0];
    Vec2 s = pts[3] - pts[2];
    Vec2 sp = pts[5] - pts[4];
    Vec2 q = pts[2] - pts[0];
    Vec2 qp = pts[4] - pts[0];
    SegOrderParts parts;
    parts.den1 = cross(r, s);
    parts.den2 = cross(r, sp);
    parts.numerator = cross(q, s) * parts.den2 - cross(qp, sp) * parts.den1;
    return parts;
}

std::array<Polynomial, 3> sym_dual_line(std::int64_t a, std::int64_t b, SchemeId scheme) {
    if (a == b) throw Error(ErrorCode::RepeatedIndex, "segment with equal endpoint indices");
    auto [xa, ya] = expand_point(scheme, a);
    auto [xb, yb] = expand_point(scheme, b);
    return {yb - ya, xa - xb, xb * ya - xa * yb};
}

Polynomial sym_segment_order_dual(const SlotPattern& p, SchemeId scheme) {
    validate_pattern(PredicateKind::SegOrderDual, p);
    std::array<std::array<Polynomial, 3>, 3> m;
    for (int s = 0; s < 3; ++s)
        m[static_cast<std::size_t>(s)] = sym_dual_line(p.slots[2 * s], p.slots[2 * s + 1], scheme);
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::pair<Polynomial, Polynomial> sym_wedge_line(std::int64_t a, std::int64_t b) {
    if (a == b) throw Error(ErrorCode::RepeatedIndex, "segment with equal endpoint indices");
    Polynomial A = Polynomial::variable(Symbol::line_coef(1));
    Polynomial B = Polynomial::variable(Symbol::line_coef(2));
    Polynomial C = Polynomial::variable(Symbol::line_coef(3));
    auto form = [&](std::int64_t point) {
        return A * Polynomial::variable(Symbol::coordinate(point, 1)) +
               B * Polynomial::variable(Symbol::coordinate(point, 2)) + C;
    };
    return {form(a), form(b)};
}

}  // namespace perturb
