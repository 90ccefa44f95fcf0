#pragma once

#include <cstdint>
#include <vector>

#include "perturb/rational.hpp"
#include "perturb/tables.hpp"

namespace perturb {

// A range point carrying the global vertex index that identifies it for
// tie-breaking. Two points may share coordinates (legal degenerate input for
// every scheme except A).
struct IndexedPoint {
    std::int64_t index = 0;
    Rational x, y;
};

using Segment = std::pair<IndexedPoint, IndexedPoint>;

struct EvalReport {
    int sign = 0;               // -1 or +1, never 0
    std::size_t depth = 0;      // index of the row that decided the sign
    std::uint64_t ops_used = 0; // declared ops of the rows that evaluated to zero
                                // before the deciding row (the published counting)
    std::uint64_t aux_ops = 0;  // denominator / wedge sign work, reported separately
};

// Scans the table rows in order on the given slot points and returns the sign
// of the first nonzero row. The points' index-coincidence pattern and index
// order must match the table's shape.
EvalReport eval_table(const EvaluationTable& t, const std::vector<IndexedPoint>& points);

// x, then y, then index; never equal. Returns -1 if a orders before b.
int lex_compare(const IndexedPoint& a, const IndexedPoint& b);

EvalReport orient(const IndexedPoint& a, const IndexedPoint& b, const IndexedPoint& c,
                  SchemeId scheme);

// +1 when the supporting line of s2 meets the line through s1 at a smaller
// parameter (measured from s1.first toward s1.second) than the line of s3.
EvalReport segment_order_param(const Segment& s1, const Segment& s2, const Segment& s3,
                               SchemeId scheme);

// Same predicate through the dual orientation determinant, corrected by the
// stored dual/param sign, the wedge membership of the two dual points, and
// reduced determinant forms when dual points are ideal (segment lines through
// the origin). Must agree with segment_order_param on every input.
EvalReport segment_order_dual(const Segment& s1, const Segment& s2, const Segment& s3,
                              SchemeId scheme);

enum class LinkSide { Upper, Lower };

// Upper iff v's image lies strictly above the directed line a -> b after
// perturbation; degenerate inputs are decided, never ambiguous.
LinkSide classify_link_vertex(const IndexedPoint& a, const IndexedPoint& b, const IndexedPoint& v,
                              SchemeId scheme);

// Brute-force check: substitutes a concrete tiny rational for the epsilons
// (eps_{i,j} := eta^(2^(3i-j+2)) under E with i the index rank, eps := eta
// under A) into the fully expanded expression and evaluates exactly, halving
// eta until two consecutive evaluations agree in sign. Independent of the
// table path; used to cross-check it.
int numeric_epsilon_oracle(const Polynomial& expr, const std::map<Symbol, Rational>& coordinates,
                           SchemeId scheme, const Rational& eta);

int oracle_orient(const IndexedPoint& a, const IndexedPoint& b, const IndexedPoint& c,
                  SchemeId scheme, const Rational& eta);

// Composite predicate sign matching segment_order_param's convention.
int oracle_segment_order(const Segment& s1, const Segment& s2, const Segment& s3, SchemeId scheme,
                         const Rational& eta);

}  // namespace perturb
