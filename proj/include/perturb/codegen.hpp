#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perturb/eval.hpp"
#include "perturb/tables.hpp"

namespace perturb {

// Language-neutral expression tree a table row lowers to. Children keep the
// polynomial's canonical term/factor order so emission is deterministic.
struct ExprIR {
    enum class Op { Const, Var, Add, Mul, Neg };

    Op op = Op::Const;
    Rational constant;            // Const
    std::string var;              // Var: symbol spelling
    std::vector<ExprIR> children; // Add/Mul: >= 2, Neg: exactly 1

    bool operator==(const ExprIR&) const = default;
};

struct EvaluatorCase {
    ExprIR expr;
    PolyStats row_stats;
};

struct EvaluatorIR {
    TableKind kind = TableKind::Orient3;
    SchemeId scheme = SchemeId::E;
    PatternShape shape;
    std::size_t arity = 0;
    std::vector<std::string> params;  // rep coordinate spellings, canonical order
    std::vector<EvaluatorCase> cases; // one per table row
    int terminal_sign = 0;            // 0 when the table has no constant terminal
};

ExprIR lower_polynomial(const Polynomial& p);
EvaluatorIR lower_table(const EvaluationTable& t);

// Reference executor for lowered tables; must agree with eval_table on the
// source table for every input.
Rational eval_expr_ir(const ExprIR& e, const std::map<Symbol, Rational>& assignment);
EvalReport interpret(const EvaluatorIR& ir, const std::vector<IndexedPoint>& points);

std::string evaluator_to_json(const EvaluatorIR& ir);
EvaluatorIR evaluator_from_json(const std::string& text);

// A dialect is a set of text templates (see README for the placeholder
// grammar). emit_source is a pure function of (ir, dialect): byte-identical
// output for identical inputs.
struct Dialect {
    std::string name;
    std::string file_template;   // {{name}}, {{params}}, {{cases}}, {{case_count}}
    std::string param_template;  // {{var}}
    std::string param_separator;
    std::string case_template;     // {{row}}, {{expr}}
    std::string terminal_template; // {{sign}}
    std::string const_template;    // {{num}}, {{den}}
    std::string var_template;      // {{var}}
    std::string neg_template;      // {{child}}
    std::string add_separator;
    std::string mul_separator;
    std::string group_open, group_close;
};

Dialect dialect_from_json(const std::string& text);
// Built-in "cxx" dialect; other names must resolve to a readable template
// file or emit_source throws UnknownDialect.
Dialect load_dialect(const std::string& name_or_path);

std::string emit_source(const EvaluatorIR& ir, const Dialect& dialect);

}  // namespace perturb
