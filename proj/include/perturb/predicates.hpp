#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "perturb/polynomial.hpp"
#include "perturb/schemes.hpp"

namespace perturb {

enum class PredicateKind { LexOrder, Orient3, SegOrderParam, SegOrderDual };

std::string predicate_name(PredicateKind k);
PredicateKind predicate_from_name(const std::string& name);
std::size_t predicate_arity(PredicateKind k);  // number of slots

// Global vertex indices filling a predicate's slots. Segment-order patterns
// read as ordered endpoint pairs (0,1), (2,3), (4,5); indices may repeat
// across segments (shared endpoints) but not within one.
struct SlotPattern {
    std::vector<std::int64_t> slots;
};

// Structure of a pattern that the symbolic tables depend on: which slots
// coincide, and the relative order of the distinct indices (the epsilon
// magnitudes and the derivative-variable order both follow global index
// order, so two patterns share a table only if both parts agree; scheme A
// ignores the ranks).
struct PatternShape {
    std::vector<int> partition;  // first-occurrence label per slot
    std::vector<int> ranks;      // rank of each label's index among the distinct indices

    bool operator==(const PatternShape&) const = default;
    bool operator<(const PatternShape& o) const {
        if (partition != o.partition) return partition < o.partition;
        return ranks < o.ranks;
    }
};

PatternShape pattern_shape(const SlotPattern& p);

// Representative index each slot maps to when building table polynomials:
// the rank of its global index. Binding concrete points by rank keeps the
// key order of a cached table identical to the order concrete indices induce.
std::vector<std::int64_t> pattern_reps(const SlotPattern& p);

void validate_pattern(PredicateKind kind, const SlotPattern& p);

// x-coordinate difference of the two slots under the scheme's expansion; the
// lexicographic predicate's symbolic form (perturbed first coordinates are
// unique under E, so no second-coordinate row is needed).
Polynomial sym_lex(const SlotPattern& p, SchemeId scheme);

// Orientation determinant of three points over the scheme's expanded
// coordinates; the unperturbed part is the usual 6-term form.
Polynomial sym_orient(const SlotPattern& p, SchemeId scheme);

struct SegOrderParts {
    Polynomial numerator;  // (q x s)(r x s') - (q' x s')(r x s)
    Polynomial den1;       // r x s
    Polynomial den2;       // r x s'
};

// Parametrized segment order: with r = P1-P0, s = P3-P2, s' = P5-P4,
// q = P2-P0, q' = P4-P0, the intersection parameters along the base segment
// are t = (q x s)/(r x s) and t' = (q' x s')/(r x s'), and
// numerator = (t - t') * den1 * den2 after clearing denominators.
SegOrderParts sym_segment_order_param(const SlotPattern& p, SchemeId scheme);

// Homogeneous coefficients (A, B, C) of the line through slots (a, b):
// (y_b - y_a, x_a - x_b, x_b*y_a - x_a*y_b) over expanded coordinates.
// A point P is on the line iff A*P.x + B*P.y + C = 0.
std::array<Polynomial, 3> sym_dual_line(std::int64_t a, std::int64_t b, SchemeId scheme);

// Dual segment order: determinant of the three dual lines' coefficient rows.
// Identical to the parametrized numerator up to one global sign.
Polynomial sym_segment_order_dual(const SlotPattern& p, SchemeId scheme);

// Incidence forms <l*, (p_a, 1)> and <l*, (p_b, 1)> for a candidate dual
// point l* = (ell_1, ell_2, ell_3), as polynomials in the line coefficients
// and the endpoint coordinates. Their sign pair classifies which wedge of
// segment ab the dual point of a crossing line lies in.
std::pair<Polynomial, Polynomial> sym_wedge_line(std::int64_t a, std::int64_t b);

}  // namespace perturb
