#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "perturb/codegen.hpp"
#include "perturb/errors.hpp"
#include "perturb/generators.hpp"
#include "support.hpp"

using namespace perturb;
using namespace perturb::testing;

TEST_CASE("lowering shapes") {
    ExprIR e = lower_polynomial(coord(0, 1) + rat(1));
    REQUIRE(e.op == ExprIR::Op::Add);
    REQUIRE(e.children.size() == 2);
    CHECK(e.children[0].op == ExprIR::Op::Var);
    CHECK(e.children[0].var == "p_0_1");
    CHECK(e.children[1].op == ExprIR::Op::Const);
    CHECK(e.children[1].constant == Rational(1));

    CHECK(lower_polynomial(rat(7)).op == ExprIR::Op::Const);
    CHECK(lower_polynomial(Polynomial()).constant == Rational(0));

    ExprIR sq = lower_polynomial(coord(0, 1) * coord(0, 1));
    REQUIRE(sq.op == ExprIR::Op::Mul);
    CHECK(sq.children.size() == 2);  // repeated factor, no power node

    ExprIR neg = lower_polynomial(-coord(0, 1) * coord(0, 2));
    CHECK(neg.op == ExprIR::Op::Neg);
}

TEST_CASE("lowered expressions evaluate like the polynomials") {
    SplitMix64 rng(19);
    for (int i = 0; i < 120; ++i) {
        Polynomial p = random_poly(rng, 6);
        ExprIR ir = lower_polynomial(p);
        std::map<Symbol, Rational> at;
        for (const auto& s : p.symbols()) at[s] = rng.next_rational();
        CHECK(eval_expr_ir(ir, at) == evaluate_exact(p, at));
    }
}

TEST_CASE("lower_table carries one case per row") {
    auto t = compute_table(TableKind::Orient3, SlotPattern{{0, 1, 2}}, SchemeId::E);
    EvaluatorIR ir = lower_table(t);
    CHECK(ir.cases.size() == 5);
    CHECK(ir.terminal_sign == 1);
    CHECK(ir.params == std::vector<std::string>{"p_0_1", "p_0_2", "p_1_1", "p_1_2", "p_2_1", "p_2_2"});
}

TEST_CASE("interpreter matches table evaluation") {
    for (SchemeId scheme : {SchemeId::E, SchemeId::A, SchemeId::YL, SchemeId::YT}) {
        auto t = cached_table(TableKind::Orient3, SlotPattern{{0, 1, 2}}, scheme);
        EvaluatorIR ir = lower_table(*t);
        for (std::uint64_t k = 0; k < 60; ++k) {
            auto rnd = gen_random_triple(500, k);
            auto col = gen_collinear(501, k);
            for (const auto& pts : {rnd, col}) {
                if (scheme == SchemeId::A) {
                    bool dup = false;
                    for (int a = 0; a < 3; ++a)
                        for (int b = a + 1; b < 3; ++b)
                            dup = dup || (pts[static_cast<std::size_t>(a)].x == pts[static_cast<std::size_t>(b)].x &&
                                          pts[static_cast<std::size_t>(a)].y == pts[static_cast<std::size_t>(b)].y);
                    if (dup) continue;
                }
                std::vector<IndexedPoint> v{pts[0], pts[1], pts[2]};
                auto a = eval_table(*t, v);
                auto b = interpret(ir, v);
                CHECK(a.sign == b.sign);
                CHECK(a.depth == b.depth);
                CHECK(a.ops_used == b.ops_used);
            }
        }
    }
}

TEST_CASE("interpreter rejects mismatched patterns") {
    auto t = cached_table(TableKind::Orient3, SlotPattern{{0, 1, 2}}, SchemeId::E);
    EvaluatorIR ir = lower_table(*t);
    CHECK_THROWS_AS(interpret(ir, {pt(0, 0, 0), pt(1, 1, 0)}), Error);
    CHECK_THROWS_AS(interpret(ir, {pt(2, 0, 0), pt(1, 1, 0), pt(0, 0, 1)}), Error);
}

TEST_CASE("evaluator JSON round-trip") {
    auto t = compute_table(TableKind::SegOrderParam, SlotPattern{{0, 1, 2, 3, 4, 5}}, SchemeId::YL);
    EvaluatorIR ir = lower_table(t);
    std::string text = evaluator_to_json(ir);
    EvaluatorIR back = evaluator_from_json(text);
    CHECK(back.kind == ir.kind);
    CHECK(back.scheme == ir.scheme);
    CHECK(back.shape == ir.shape);
    CHECK(back.params == ir.params);
    REQUIRE(back.cases.size() == ir.cases.size());
    for (std::size_t i = 0; i < ir.cases.size(); ++i) {
        CHECK(back.cases[i].expr == ir.cases[i].expr);
        CHECK(back.cases[i].row_stats.ops == ir.cases[i].row_stats.ops);
    }
    CHECK(evaluator_to_json(back) == text);
}

TEST_CASE("emission is byte-deterministic and covers every row") {
    auto t = compute_table(TableKind::Orient3, SlotPattern{{0, 1, 2}}, SchemeId::E);
    EvaluatorIR ir = lower_table(t);
    Dialect d = load_dialect("cxx");
    std::string s1 = emit_source(ir, d);
    std::string s2 = emit_source(lower_table(t), d);
    CHECK(s1 == s2);

    // One scanned case per non-terminal row plus the terminal return.
    std::size_t case_count = 0;
    for (std::size_t pos = s1.find("// row"); pos != std::string::npos;
         pos = s1.find("// row", pos + 1))
        ++case_count;
    CHECK(case_count == t.rows.size() - 1);
    CHECK(s1.find("return 1;") != std::string::npos);
    CHECK(s1.find("template <class Num>") != std::string::npos);
}

TEST_CASE("unknown dialects are rejected, file dialects load") {
    CHECK_THROWS_AS(load_dialect("no-such-dialect"), Error);
    try {
        load_dialect("also/missing.json");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownDialect);
    }
}

TEST_CASE("interpreter agrees on segment order tables including degenerate inputs") {
    auto t = cached_table(TableKind::SegOrderParam, SlotPattern{{0, 1, 2, 3, 4, 5}}, SchemeId::E);
    EvaluatorIR ir = lower_table(*t);
    for (std::uint64_t k = 0; k < 40; ++k) {
        auto cs = gen_concurrent(502, k);
        std::vector<IndexedPoint> v{cs[0].first, cs[0].second, cs[1].first,
                                    cs[1].second, cs[2].first, cs[2].second};
        auto a = eval_table(*t, v);
        auto b = interpret(ir, v);
        CHECK(a.sign == b.sign);
        CHECK(a.depth == b.depth);
    }
}
