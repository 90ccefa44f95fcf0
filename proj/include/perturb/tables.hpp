#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "perturb/polynomial.hpp"
#include "perturb/predicates.hpp"
#include "perturb/schemes.hpp"

namespace perturb {

// Everything a table can be built for. The public predicates plus the bare
// segment cross product (P_b - P_a) x (P_d - P_c), which backs the two
// denominator signs of the parametrized segment order.
enum class TableKind { LexOrder, Orient3, SegOrderParam, SegOrderDual, SegCross };

std::string table_kind_name(TableKind k);
TableKind table_kind_from_name(const std::string& name);
TableKind table_kind_of(PredicateKind k);
std::size_t table_kind_arity(TableKind k);

struct TableRow {
    TableKeyFactors key;  // epsilon product (E/A) or derivative multi-index (YL/YT)
    Polynomial coeff;     // coordinate symbols only
    PolyStats row_stats;
};

// Ordered rows of a perturbed predicate, most significant first. Scanning rows
// until the first nonzero value yields the perturbed sign. For E/YL/YT the
// last row is a nonzero constant (stored in `terminal`); scheme A tables can
// run out of rows without one, in which case `terminal` is empty and the
// scheme's no-duplicate-points assumption guarantees an earlier row decides.
struct EvaluationTable {
    TableKind kind = TableKind::Orient3;
    SchemeId scheme = SchemeId::E;
    PatternShape shape;
    std::size_t arity = 0;
    std::vector<TableRow> rows;
    std::optional<Rational> terminal;
    int dual_sign = 0;  // segment-order tables only: sign relating the dual
                        // determinant to the parametrized numerator

    std::size_t max_depth() const { return rows.empty() ? 0 : rows.size() - 1; }
};

// Core construction: group the expanded expression by epsilon product (E/A)
// or walk derivative multi-indices in admissible order (YL/YT), keeping rows
// until the first constant one. Throws NoConstantRow when a scheme that
// guarantees a constant row (E, YL, YT) runs out of keys.
EvaluationTable compute_table_from_expr(const Polynomial& expr, SchemeId scheme);

// Builds the expression for the predicate/pattern and tables it; fills in the
// pattern shape and, for segment-order kinds, the dual/param relative sign.
EvaluationTable compute_table(TableKind kind, const SlotPattern& pattern, SchemeId scheme);

// Process-wide memo keyed on (kind, scheme, partition, ranks). Tables are
// immutable; the returned pointer is safe to share across threads.
std::shared_ptr<const EvaluationTable> cached_table(TableKind kind, const SlotPattern& pattern,
                                                    SchemeId scheme);

struct SosValidity {
    bool constant_coefficient_product = false;  // some epsilon product has a constant coefficient
    bool unit_epsilon_exponents = false;        // no epsilon power other than 0 or 1
};
SosValidity verify_sos_properties(const Polynomial& expr);

struct TableStats {
    std::vector<PolyStats> rows;
    std::size_t max_depth = 0;
};
TableStats table_stats(const EvaluationTable& t);

// Stable-field-order JSON; byte-identical for identical inputs.
std::string table_to_json(const EvaluationTable& t);
EvaluationTable table_from_json(const std::string& text);

}  // namespace perturb
