#include "perturb/codegen.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "perturb/errors.hpp"

namespace perturb {

namespace {

ExprIR make_const(const Rational& c) {
    ExprIR e;
    e.op = ExprIR::Op::Const;
    e.constant = c;
    return e;
}

ExprIR make_var(const Symbol& s) {
    ExprIR e;
    e.op = ExprIR::Op::Var;
    e.var = s.spelling();
    return e;
}

ExprIR lower_monomial(const Monomial& m) {
    std::vector<ExprIR> factors;
    bool negate = false;
    Rational coeff = m.coeff;
    if (coeff.sign() < 0 && !m.factors.empty()) {
        negate = true;
        coeff = -coeff;
    }
    if (!(coeff.is_one() && !m.factors.empty())) factors.push_back(make_const(coeff));
    for (const auto& [s, e] : m.factors)
        for (std::uint32_t k = 0; k < e; ++k) factors.push_back(make_var(s));
    ExprIR inner;
    if (factors.size() == 1) {
        inner = std::move(factors[0]);
    } else {
        inner.op = ExprIR::Op::Mul;
        inner.children = std::move(factors);
    }
    if (!negate) return inner;
    ExprIR neg;
    neg.op = ExprIR::Op::Neg;
    neg.children.push_back(std::move(inner));
    return neg;
}

}  // namespace

ExprIR lower_polynomial(const Polynomial& p) {
    if (p.is_zero()) return make_const(Rational(0));
    std::vector<ExprIR> terms;
    for (const auto& t : p.terms()) terms.push_back(lower_monomial(t));
    if (terms.size() == 1) return std::move(terms[0]);
    ExprIR add;
    add.op = ExprIR::Op::Add;
    add.children = std::move(terms);
    return add;
}

EvaluatorIR lower_table(const EvaluationTable& t) {
    EvaluatorIR ir;
    ir.kind = t.kind;
    ir.scheme = t.scheme;
    ir.shape = t.shape;
    ir.arity = t.arity;
    std::set<Symbol> vars;
    for (const auto& row : t.rows)
        for (const auto& s : row.coeff.symbols()) vars.insert(s);
    // Parameters cover every rep coordinate of the pattern, present or not.
    for (int rank : t.shape.ranks) {
        vars.insert(Symbol::coordinate(rank, 1));
        vars.insert(Symbol::coordinate(rank, 2));
    }
    for (const auto& s : vars) ir.params.push_back(s.spelling());
    for (const auto& row : t.rows) ir.cases.push_back({lower_polynomial(row.coeff), row.row_stats});
    ir.terminal_sign = t.terminal ? t.terminal->sign() : 0;
    return ir;
}

Rational eval_expr_ir(const ExprIR& e, const std::map<Symbol, Rational>& assignment) {
    switch (e.op) {
        case ExprIR::Op::Const:
            return e.constant;
        case ExprIR::Op::Var: {
            auto it = assignment.find(Symbol::from_spelling(e.var));
            if (it == assignment.end())
                throw Error(ErrorCode::UnboundSymbol, "unbound symbols: " + e.var);
            return it->second;
        }
        case ExprIR::Op::Neg:
            return -eval_expr_ir(e.children.at(0), assignment);
        case ExprIR::Op::Add: {
            Rational s(0);
            for (const auto& c : e.children) s += eval_expr_ir(c, assignment);
            return s;
        }
        case ExprIR::Op::Mul: {
            Rational s(1);
            for (const auto& c : e.children) s *= eval_expr_ir(c, assignment);
            return s;
        }
    }
    return Rational(0);
}

EvalReport interpret(const EvaluatorIR& ir, const std::vector<IndexedPoint>& points) {
    if (points.size() != ir.arity)
        throw Error(ErrorCode::PatternMismatch, "expected " + std::to_string(ir.arity) +
                                                    " points, got " + std::to_string(points.size()));
    SlotPattern pattern;
    for (const auto& p : points) pattern.slots.push_back(p.index);
    if (!(pattern_shape(pattern) == ir.shape))
        throw Error(ErrorCode::PatternMismatch,
                    "point index pattern does not match the evaluator's pattern class");
    auto reps = pattern_reps(pattern);
    std::map<Symbol, Rational> assignment;
    for (std::size_t i = 0; i < points.size(); ++i) {
        assignment[Symbol::coordinate(reps[i], 1)] = points[i].x;
        assignment[Symbol::coordinate(reps[i], 2)] = points[i].y;
    }
    std::uint64_t ops = 0;
    for (std::size_t i = 0; i < ir.cases.size(); ++i) {
        Rational v = eval_expr_ir(ir.cases[i].expr, assignment);
        if (!v.is_zero()) return {v.sign(), i, ops, 0};
        ops += ir.cases[i].row_stats.ops;
    }
    throw Error(ErrorCode::SchemeLimitation,
                "every case vanished; the scheme's perturbation does not resolve this input");
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json expr_to_json(const ExprIR& e) {
    ordered_json j;
    switch (e.op) {
        case ExprIR::Op::Const:
            j["op"] = "const";
            j["num"] = e.constant.num().get_str();
            j["den"] = e.constant.den().get_str();
            break;
        case ExprIR::Op::Var:
            j["op"] = "var";
            j["name"] = e.var;
            break;
        case ExprIR::Op::Neg:
            j["op"] = "neg";
            j["child"] = expr_to_json(e.children.at(0));
            break;
        case ExprIR::Op::Add:
        case ExprIR::Op::Mul: {
            j["op"] = e.op == ExprIR::Op::Add ? "add" : "mul";
            ordered_json kids = ordered_json::array();
            for (const auto& c : e.children) kids.push_back(expr_to_json(c));
            j["children"] = std::move(kids);
            break;
        }
    }
    return j;
}

ExprIR expr_from_json(const ordered_json& j) {
    std::string op = j.at("op").get<std::string>();
    ExprIR e;
    if (op == "const") {
        e.op = ExprIR::Op::Const;
        e.constant = Rational::parse(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
    } else if (op == "var") {
        e.op = ExprIR::Op::Var;
        e.var = j.at("name").get<std::string>();
    } else if (op == "neg") {
        e.op = ExprIR::Op::Neg;
        e.children.push_back(expr_from_json(j.at("child")));
    } else if (op == "add" || op == "mul") {
        e.op = op == "add" ? ExprIR::Op::Add : ExprIR::Op::Mul;
        for (const auto& c : j.at("children")) e.children.push_back(expr_from_json(c));
    } else {
        throw Error(ErrorCode::ParseError, "unknown IR op '" + op + "'");
    }
    return e;
}

}  // namespace

std::string evaluator_to_json(const EvaluatorIR& ir) {
    ordered_json j;
    j["kind"] = table_kind_name(ir.kind);
    j["scheme"] = scheme_name(ir.scheme);
    j["pattern"]["partition"] = ir.shape.partition;
    j["pattern"]["ranks"] = ir.shape.ranks;
    j["arity"] = ir.arity;
    j["params"] = ir.params;
    ordered_json cases = ordered_json::array();
    for (const auto& c : ir.cases) {
        ordered_json cj;
        cj["expr"] = expr_to_json(c.expr);
        cj["terms"] = c.row_stats.terms;
        cj["ops"] = c.row_stats.ops;
        cases.push_back(std::move(cj));
    }
    j["cases"] = std::move(cases);
    j["terminal_sign"] = ir.terminal_sign;
    return j.dump(2) + "\n";
}

EvaluatorIR evaluator_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("bad evaluator file: ") + e.what());
    }
    EvaluatorIR ir;
    ir.kind = table_kind_from_name(j.at("kind").get<std::string>());
    ir.scheme = scheme_from_name(j.at("scheme").get<std::string>());
    ir.shape.partition = j.at("pattern").at("partition").get<std::vector<int>>();
    ir.shape.ranks = j.at("pattern").at("ranks").get<std::vector<int>>();
    ir.arity = j.at("arity").get<std::size_t>();
    ir.params = j.at("params").get<std::vector<std::string>>();
    for (const auto& c : j.at("cases")) {
        EvaluatorCase ec;
        ec.expr = expr_from_json(c.at("expr"));
        ec.row_stats.terms = c.at("terms").get<std::uint64_t>();
        ec.row_stats.ops = c.at("ops").get<std::uint64_t>();
        ir.cases.push_back(std::move(ec));
    }
    ir.terminal_sign = j.at("terminal_sign").get<int>();
    return ir;
}

namespace {

std::string replace_all(std::string text, const std::string& needle, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), value);
        pos += value.size();
    }
    return text;
}

std::string render_expr(const ExprIR& e, const Dialect& d, bool parenthesize) {
    std::string out;
    switch (e.op) {
        case ExprIR::Op::Const:
            out = replace_all(replace_all(d.const_template, "{{num}}", e.constant.num().get_str()),
                              "{{den}}", e.constant.den().get_str());
            return out;
        case ExprIR::Op::Var:
            return replace_all(d.var_template, "{{var}}", e.var);
        case ExprIR::Op::Neg: {
            std::string child = render_expr(e.children.at(0), d, true);
            return replace_all(d.neg_template, "{{child}}", child);
        }
        case ExprIR::Op::Add: {
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += d.add_separator;
                out += render_expr(e.children[i], d, false);
            }
            return parenthesize ? d.group_open + out + d.group_close : out;
        }
        case ExprIR::Op::Mul: {
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += d.mul_separator;
                out += render_expr(e.children[i], d, true);
            }
            return out;
        }
    }
    return out;
}

std::string evaluator_function_name(const EvaluatorIR& ir) {
    std::string name = table_kind_name(ir.kind) + "_" + scheme_name(ir.scheme);
    name += "_p";
    for (int label : ir.shape.partition) name += std::to_string(label);
    if (!ir.shape.ranks.empty()) {
        name += "_r";
        for (int rank : ir.shape.ranks) name += std::to_string(rank);
    }
    for (auto& c : name)
        if (c == '-') c = '_';
    return name;
}

}  // namespace

Dialect dialect_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("bad dialect file: ") + e.what());
    }
    Dialect d;
    d.name = j.at("name").get<std::string>();
    d.file_template = j.at("file").get<std::string>();
    d.param_template = j.at("param").get<std::string>();
    d.param_separator = j.at("param_separator").get<std::string>();
    d.case_template = j.at("case").get<std::string>();
    d.terminal_template = j.at("terminal").get<std::string>();
    d.const_template = j.at("const").get<std::string>();
    d.var_template = j.at("var").get<std::string>();
    d.neg_template = j.at("neg").get<std::string>();
    d.add_separator = j.at("add_separator").get<std::string>();
    d.mul_separator = j.at("mul_separator").get<std::string>();
    d.group_open = j.at("group_open").get<std::string>();
    d.group_close = j.at("group_close").get<std::string>();
    return d;
}

namespace {

// Emitted code leaves the number type to the caller: `Num` must be an exact
// rational type constructible from a numerator/denominator pair of integers.
const char* kCxxDialectJson = R"json({
  "name": "cxx",
  "file": "// Generated evaluator; do not edit.\n//\n// Num: exact rational number type; Num(a, b) must represent a/b exactly.\n// sign() of the returned value is encoded as an int in {-1, 0, +1}.\n\ntemplate <class Num>\nint {{name}}({{params}}) {\n{{cases}}}\n",
  "param": "const Num& {{var}}",
  "param_separator": ", ",
  "case": "  {  // row {{row}}\n    const Num c = {{expr}};\n    if (c != Num(0, 1)) return c > Num(0, 1) ? 1 : -1;\n  }\n",
  "terminal": "  return {{sign}};  // constant row\n",
  "const": "Num({{num}}, {{den}})",
  "var": "{{var}}",
  "neg": "-({{child}})",
  "add_separator": " + ",
  "mul_separator": " * ",
  "group_open": "(",
  "group_close": ")"
})json";

}  // namespace

Dialect load_dialect(const std::string& name_or_path) {
    if (name_or_path == "cxx") return dialect_from_json(kCxxDialectJson);
    std::ifstream in(name_or_path);
    if (!in)
        throw Error(ErrorCode::UnknownDialect, "no dialect named '" + name_or_path +
                                                   "' and no template file at that path");
    std::ostringstream buf;
    buf << in.rdbuf();
    return dialect_from_json(buf.str());
}

std::string emit_source(const EvaluatorIR& ir, const Dialect& d) {
    std::string params;
    for (std::size_t i = 0; i < ir.params.size(); ++i) {
        if (i) params += d.param_separator;
        params += replace_all(d.param_template, "{{var}}", ir.params[i]);
    }
    std::string cases;
    for (std::size_t i = 0; i < ir.cases.size(); ++i) {
        const bool is_terminal_row = ir.terminal_sign != 0 && i + 1 == ir.cases.size();
        if (is_terminal_row) {
            cases += replace_all(d.terminal_template, "{{sign}}", std::to_string(ir.terminal_sign));
        } else {
            std::string c = replace_all(d.case_template, "{{row}}", std::to_string(i));
            cases += replace_all(c, "{{expr}}", render_expr(ir.cases[i].expr, d, false));
        }
    }
    if (ir.terminal_sign == 0) {
        // No constant terminal (scheme A): the final fall-through is an error
        // the caller must rule out; emit an unreachable sentinel return.
        cases += replace_all(d.terminal_template, "{{sign}}", "0");
    }
    std::string out = d.file_template;
    out = replace_all(out, "{{name}}", evaluator_function_name(ir));
    out = replace_all(out, "{{params}}", params);
    out = replace_all(out, "{{cases}}", cases);
    out = replace_all(out, "{{case_count}}", std::to_string(ir.cases.size()));
    return out;
}

}  // namespace perturb
