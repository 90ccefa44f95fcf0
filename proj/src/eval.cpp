#include "perturb/eval.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "perturb/errors.hpp"

namespace perturb {

namespace {

SlotPattern pattern_of(const std::vector<IndexedPoint>& points) {
    SlotPattern p;
    for (const auto& pt : points) p.slots.push_back(pt.index);
    return p;
}

// slot -> rank-rep binding used for every table built over a pattern
std::map<Symbol, Rational> rep_assignment(const std::vector<IndexedPoint>& points) {
    auto reps = pattern_reps(pattern_of(points));
    std::map<Symbol, Rational> assignment;
    for (std::size_t i = 0; i < points.size(); ++i) {
        assignment[Symbol::coordinate(reps[i], 1)] = points[i].x;
        assignment[Symbol::coordinate(reps[i], 2)] = points[i].y;
    }
    return assignment;
}

// Coordinates scaled to integers over one common denominator. Row signs then
// come out of pure integer accumulation: scaling a row by D^maxdeg and by the
// lcm of its coefficient denominators keeps the sign and skips all rational
// normalization work.
struct IntAssignment {
    std::map<Symbol, mpz_class> scaled;
    mpz_class common_den{1};
};

IntAssignment integerize(const std::map<Symbol, Rational>& assignment) {
    IntAssignment ia;
    for (const auto& [s, v] : assignment)
        mpz_lcm(ia.common_den.get_mpz_t(), ia.common_den.get_mpz_t(), v.den().get_mpz_t());
    for (const auto& [s, v] : assignment) {
        mpz_class scale;
        mpz_divexact(scale.get_mpz_t(), ia.common_den.get_mpz_t(), v.den().get_mpz_t());
        ia.scaled[s] = v.num() * scale;
    }
    return ia;
}

int row_sign(const Polynomial& coeff, const IntAssignment& ia) {
    std::uint64_t max_deg = 0;
    mpz_class coeff_lcm(1);
    for (const auto& t : coeff.terms()) {
        max_deg = std::max(max_deg, t.degree());
        mpz_lcm(coeff_lcm.get_mpz_t(), coeff_lcm.get_mpz_t(), t.coeff.den().get_mpz_t());
    }
    std::vector<mpz_class> den_pow(max_deg + 1);
    den_pow[0] = 1;
    for (std::uint64_t d = 1; d <= max_deg; ++d) den_pow[d] = den_pow[d - 1] * ia.common_den;

    mpz_class acc(0), term, pw;
    for (const auto& t : coeff.terms()) {
        mpz_divexact(term.get_mpz_t(), coeff_lcm.get_mpz_t(), t.coeff.den().get_mpz_t());
        term *= t.coeff.num();
        for (const auto& [s, e] : t.factors) {
            const mpz_class& x = ia.scaled.at(s);
            if (e == 1) {
                term *= x;
            } else {
                mpz_pow_ui(pw.get_mpz_t(), x.get_mpz_t(), e);
                term *= pw;
            }
        }
        term *= den_pow[max_deg - t.degree()];
        acc += term;
    }
    return sgn(acc);
}

void guard_scheme_a_duplicates(const std::vector<IndexedPoint>& points, SchemeId scheme) {
    if (scheme != SchemeId::A) return;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].index != points[j].index && points[i].x == points[j].x &&
                points[i].y == points[j].y)
                throw Error(ErrorCode::DuplicatePointsUnsupported,
                            "scheme A cannot separate duplicate points (indices " +
                                std::to_string(points[i].index) + ", " +
                                std::to_string(points[j].index) + ")");
}

EvalReport scan_rows(const EvaluationTable& t, const IntAssignment& assignment,
                     std::size_t first_row, std::uint64_t ops_so_far) {
    std::uint64_t ops = ops_so_far;
    for (std::size_t i = first_row; i < t.rows.size(); ++i) {
        int s = row_sign(t.rows[i].coeff, assignment);
        if (s != 0) return {s, i, ops, 0};
        ops += t.rows[i].row_stats.ops;
    }
    // Only reachable for scheme-A tables (E/YL/YT end in a nonzero constant).
    // The global perturbation map leaves some configurations degenerate for
    // every eps, e.g. concurrent diameters of a circle: x^2 + y^2 is affine
    // on a circle, so the map restricted to it preserves the concurrency.
    throw Error(ErrorCode::SchemeLimitation,
                "every table row vanished; the scheme's perturbation does not resolve this input");
}

}  // namespace

EvalReport eval_table(const EvaluationTable& t, const std::vector<IndexedPoint>& points) {
    if (points.size() != t.arity)
        throw Error(ErrorCode::PatternMismatch, "expected " + std::to_string(t.arity) +
                                                    " points, got " + std::to_string(points.size()));
    PatternShape shape = pattern_shape(pattern_of(points));
    if (!(shape == t.shape))
        throw Error(ErrorCode::PatternMismatch,
                    "point index pattern does not match the table's pattern class");
    return scan_rows(t, integerize(rep_assignment(points)), 0, 0);
}

int lex_compare(const IndexedPoint& a, const IndexedPoint& b) {
    if (a.index == b.index)
        throw Error(ErrorCode::SameIndex, "lexicographic comparison of a point with itself");
    if (a.x != b.x) return a.x < b.x ? -1 : 1;
    if (a.y != b.y) return a.y < b.y ? -1 : 1;
    return a.index < b.index ? -1 : 1;
}

EvalReport orient(const IndexedPoint& a, const IndexedPoint& b, const IndexedPoint& c,
                  SchemeId scheme) {
    std::vector<IndexedPoint> pts{a, b, c};
    SlotPattern pattern = pattern_of(pts);
    validate_pattern(PredicateKind::Orient3, pattern);
    guard_scheme_a_duplicates(pts, scheme);
    auto table = cached_table(TableKind::Orient3, pattern, scheme);
    return eval_table(*table, pts);
}

LinkSide classify_link_vertex(const IndexedPoint& a, const IndexedPoint& b, const IndexedPoint& v,
                              SchemeId scheme) {
    return orient(a, b, v, scheme).sign > 0 ? LinkSide::Upper : LinkSide::Lower;
}

namespace {

struct SegContext {
    std::vector<IndexedPoint> pts;  // slots 0..5
    SlotPattern pattern;
};

SegContext make_seg_context(const Segment& s1, const Segment& s2, const Segment& s3,
                            SchemeId scheme, PredicateKind kind) {
    SegContext ctx;
    ctx.pts = {s1.first, s1.second, s2.first, s2.second, s3.first, s3.second};
    ctx.pattern = pattern_of(ctx.pts);
    validate_pattern(kind, ctx.pattern);
    guard_scheme_a_duplicates(ctx.pts, scheme);
    return ctx;
}

EvalReport eval_sub_table(TableKind kind, const std::vector<IndexedPoint>& pts, SchemeId scheme) {
    auto table = cached_table(kind, pattern_of(pts), scheme);
    return eval_table(*table, pts);
}

// Sign of r x s for the segment pair (base, seg) under perturbation.
EvalReport eval_cross_sign(const SegContext& ctx, int seg, SchemeId scheme) {
    std::vector<IndexedPoint> pts{ctx.pts[0], ctx.pts[1], ctx.pts[2 * seg], ctx.pts[2 * seg + 1]};
    return eval_sub_table(TableKind::SegCross, pts, scheme);
}

}  // namespace

EvalReport segment_order_param(const Segment& s1, const Segment& s2, const Segment& s3,
                               SchemeId scheme) {
    SegContext ctx = make_seg_context(s1, s2, s3, scheme, PredicateKind::SegOrderParam);
    auto table = cached_table(TableKind::SegOrderParam, ctx.pattern, scheme);
    EvalReport num = eval_table(*table, ctx.pts);
    EvalReport d1 = eval_cross_sign(ctx, 1, scheme);
    EvalReport d2 = eval_cross_sign(ctx, 2, scheme);
    // numerator = (t - t') * den1 * den2; +1 reports s2's line crossing first
    int sign = -(num.sign * d1.sign * d2.sign);
    return {sign, num.depth, num.ops_used, d1.ops_used + d2.ops_used};
}

namespace {

// Sign of <L_(a,b), (P, 1)> = -orient(a, b, P) under perturbation, or 0 when
// P is an endpoint of (a, b) and the form vanishes identically.
struct WedgeSign {
    int sign = 0;
    std::uint64_t ops = 0;
};

WedgeSign wedge_form_sign(const SegContext& ctx, int seg, std::size_t base_slot, SchemeId scheme) {
    const IndexedPoint& a = ctx.pts[2 * seg];
    const IndexedPoint& b = ctx.pts[2 * seg + 1];
    const IndexedPoint& c = ctx.pts[base_slot];
    if (c.index == a.index || c.index == b.index) return {0, 0};
    EvalReport o = orient(a, b, c, scheme);
    return {-o.sign, o.ops_used};
}

// Perturbed sign of den = <L, P1> - <L, P0> from the two wedge-form signs,
// falling back to the cross-product table when both endpoints are strictly on
// the same side (the crossing-free case the wedge pair cannot decide).
struct DenSign {
    int sign = 0;
    std::uint64_t ops = 0;
};

DenSign den_sign_via_wedges(const SegContext& ctx, int seg, SchemeId scheme) {
    WedgeSign f0 = wedge_form_sign(ctx, seg, 0, scheme);
    WedgeSign f1 = wedge_form_sign(ctx, seg, 1, scheme);
    std::uint64_t ops = f0.ops + f1.ops;
    if (f0.sign == 0) return {f1.sign, ops};
    if (f1.sign == 0) return {-f0.sign, ops};
    if (f0.sign != f1.sign) return {f1.sign, ops};
    EvalReport direct = eval_cross_sign(ctx, seg, scheme);
    return {direct.sign, ops + direct.ops_used};
}

// Dual line coefficients of segment (a, b) on the unperturbed input.
struct HomLine {
    Rational a, b, c;  // c == 0 iff the primal line passes through the origin
};

HomLine hom_line(const IndexedPoint& pa, const IndexedPoint& pb) {
    return {pb.y - pa.y, pa.x - pb.x, pb.x * pa.y - pa.x * pb.y};
}

int first_nonzero_normalization(Rational& x, Rational& y) {
    // Scales (x, y) so its first nonzero coordinate is positive; returns the
    // sign flip applied (the two homogeneous representatives differ by it).
    int s = !x.is_zero() ? x.sign() : y.sign();
    if (s < 0) {
        x = -x;
        y = -y;
    }
    return s;
}

// Unperturbed dual determinant evaluated through the reduced forms when one
// or two of the dual points are ideal. Exact; equals the full 3x3 expansion.
Rational reduced_row0_value(const std::array<HomLine, 3>& lines) {
    std::array<bool, 3> ideal{lines[0].c.is_zero(), lines[1].c.is_zero(), lines[2].c.is_zero()};
    int n_ideal = int(ideal[0]) + int(ideal[1]) + int(ideal[2]);
    auto det2 = [](const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
        return a * d - b * c;
    };
    if (n_ideal == 2) {
        // Move the finite row first; the two direction rows keep their order.
        int fin = !ideal[0] ? 0 : (!ideal[1] ? 1 : 2);
        int u = fin == 0 ? 1 : 0;
        int v = fin == 2 ? 1 : 2;
        int parity = fin == 1 ? -1 : 1;  // row swaps needed to lift the finite row
        Rational ux = lines[u].a, uy = lines[u].b;
        Rational vx = lines[v].a, vy = lines[v].b;
        int flips = first_nonzero_normalization(ux, uy) * first_nonzero_normalization(vx, vy);
        Rational d = det2(ux, uy, vx, vy);
        return Rational(parity * flips) * lines[fin].c * d;
    }
    if (n_ideal == 1) {
        int inf = ideal[0] ? 0 : (ideal[1] ? 1 : 2);
        int u = inf == 0 ? 1 : 0;
        int v = inf == 2 ? 1 : 2;
        int parity = inf == 1 ? -1 : 1;  // row swaps needed to sink the ideal row
        // Affine dual points of the two finite rows.
        Rational ax = lines[u].a / lines[u].c, ay = lines[u].b / lines[u].c;
        Rational bx = lines[v].a / lines[v].c, by = lines[v].b / lines[v].c;
        Rational dx = lines[inf].a, dy = lines[inf].b;
        int flip = first_nonzero_normalization(dx, dy);
        Rational d = det2(bx - ax, by - ay, dx, dy);
        return Rational(parity * flip) * lines[u].c * lines[v].c * d;
    }
    // n_ideal == 3: third column is zero, the determinant vanishes outright.
    return Rational(0);
}

}  // namespace

EvalReport segment_order_dual(const Segment& s1, const Segment& s2, const Segment& s3,
                              SchemeId scheme) {
    SegContext ctx = make_seg_context(s1, s2, s3, scheme, PredicateKind::SegOrderDual);
    auto table = cached_table(TableKind::SegOrderDual, ctx.pattern, scheme);
    IntAssignment assignment = integerize(rep_assignment(ctx.pts));

    std::array<HomLine, 3> lines{hom_line(ctx.pts[0], ctx.pts[1]), hom_line(ctx.pts[2], ctx.pts[3]),
                                 hom_line(ctx.pts[4], ctx.pts[5])};
    int n_ideal = int(lines[0].c.is_zero()) + int(lines[1].c.is_zero()) + int(lines[2].c.is_zero());

    EvalReport det;
    if (n_ideal == 1 || n_ideal == 2) {
        // Reduced evaluation of the unperturbed row; deeper rows as usual.
        Rational row0 = reduced_row0_value(lines);
        if (!row0.is_zero())
            det = {row0.sign(), 0, 0, 0};
        else
            det = scan_rows(*table, assignment, 1, table->rows[0].row_stats.ops);
    } else if (n_ideal == 3) {
        // All three lines through the origin: the unperturbed determinant is
        // identically zero and the perturbed rows resolve the order.
        det = scan_rows(*table, assignment, 1, table->rows[0].row_stats.ops);
    } else {
        det = scan_rows(*table, assignment, 0, 0);
    }

    DenSign d1 = den_sign_via_wedges(ctx, 1, scheme);
    DenSign d2 = den_sign_via_wedges(ctx, 2, scheme);
    int sign = -(table->dual_sign * det.sign * d1.sign * d2.sign);
    return {sign, det.depth, det.ops_used, d1.ops + d2.ops};
}

namespace {

// One expression term after substituting the concrete coordinates: its
// numeric value and the exact power of eta its epsilon part contributes
// (eps_{i,j} carries eta^(2^(3i-j+2)) under E, eta^1 under A). Terms are
// grouped term-by-term straight off the expression with big-integer weight
// arithmetic: independent of the table construction this path cross-checks.
struct NumericTerm {
    Rational value;
    mpz_class weight;
};

std::vector<NumericTerm> numeric_terms(const Polynomial& expr,
                                       const std::map<Symbol, Rational>& coordinates,
                                       SchemeId scheme) {
    std::vector<NumericTerm> out;
    out.reserve(expr.terms().size());
    for (const auto& t : expr.terms()) {
        NumericTerm nt;
        nt.value = t.coeff;
        nt.weight = 0;
        for (const auto& [s, e] : t.factors) {
            if (!s.is_epsilon()) {
                auto it = coordinates.find(s);
                if (it == coordinates.end())
                    throw Error(ErrorCode::UnboundSymbol, "unbound symbols: " + s.spelling());
                nt.value *= it->second.pow(e);
            } else if (scheme == SchemeId::A) {
                nt.weight += e;
            } else {
                std::int64_t exp = eps_weight_exponent(s.point(), s.axis());
                if (exp < 0)
                    throw Error(ErrorCode::NoStabilization, "oracle inputs must use rank indices");
                mpz_class w(1);
                mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), static_cast<mp_bitcnt_t>(exp));
                nt.weight += w * e;
            }
        }
        out.push_back(std::move(nt));
    }
    return out;
}

// Exact sign of the expression as eta -> 0+: the smallest weight whose
// accumulated value is nonzero decides. Returns 0 when every group vanishes,
// i.e. the perturbed expression is identically zero on this input.
int limit_sign(const std::vector<NumericTerm>& terms) {
    std::map<mpz_class, Rational> groups;
    for (const auto& t : terms) groups[t.weight] += t.value;
    for (const auto& [w, value] : groups)
        if (!value.is_zero()) return value.sign();
    return 0;
}

// Numeric substitution at a concrete eta. For eta = 1/2^m every term is a
// small rational times a power of two, so the whole sum collapses to one
// integer accumulation over a common denominator; the sign never needs a
// normalized fraction. Other eta fall back to plain rational arithmetic.
int substitution_sign(const std::vector<NumericTerm>& terms, const Rational& eta) {
    if (terms.empty()) return 0;
    bool dyadic = eta.num() == 1 && mpz_popcount(eta.den().get_mpz_t()) == 1;
    if (dyadic) {
        std::size_t m = mpz_sizeinbase(eta.den().get_mpz_t(), 2) - 1;  // eta = 1/2^m
        mpz_class kmax(0), den_lcm(1);
        for (const auto& t : terms) {
            mpz_class k = t.weight * static_cast<unsigned long>(m);
            if (k > kmax) kmax = k;
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.value.den().get_mpz_t());
        }
        mpz_class acc(0), scaled, shift;
        for (const auto& t : terms) {
            mpz_divexact(scaled.get_mpz_t(), den_lcm.get_mpz_t(), t.value.den().get_mpz_t());
            scaled *= t.value.num();
            shift = kmax - t.weight * static_cast<unsigned long>(m);
            mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), mpz_get_ui(shift.get_mpz_t()));
            acc += scaled;
        }
        return sgn(acc);
    }
    Rational sum(0);
    for (const auto& t : terms) {
        if (!t.weight.fits_ulong_p())
            throw Error(ErrorCode::NoStabilization,
                        "substitution exponent overflow; use a power-of-two eta");
        sum += t.value * eta.pow(mpz_get_ui(t.weight.get_mpz_t()));
    }
    return sum.sign();
}

// Certify the limit sign, then run the halving sweep as a bounded
// cross-confirmation of the substitution path. The sweep can settle early on
// a transient sign when coefficient magnitudes are wildly unbalanced; the
// exact limit stays authoritative.
int oracle_with_sweep(const Rational& eta, int limit,
                      const std::function<int(const Rational&)>& at) {
    if (eta.sign() <= 0) throw Error(ErrorCode::ParseError, "eta must be positive");
    if (limit == 0)
        throw Error(ErrorCode::NoStabilization,
                    "the perturbed expression is identically zero on this input");
    Rational e = eta;
    int prev = at(e);
    for (int step = 0; step < 64; ++step) {
        e /= Rational(2);
        int cur = at(e);
        if (cur != 0 && cur == prev) return limit;
        prev = cur;
    }
    return limit;
}

}  // namespace

int numeric_epsilon_oracle(const Polynomial& expr, const std::map<Symbol, Rational>& coordinates,
                           SchemeId scheme, const Rational& eta) {
    if (!scheme_uses_epsilon(scheme))
        throw Error(ErrorCode::IncomparableKeys, "the numeric oracle covers schemes E and A only");
    auto terms = numeric_terms(expr, coordinates, scheme);
    return oracle_with_sweep(eta, limit_sign(terms),
                             [&](const Rational& e) { return substitution_sign(terms, e); });
}

int oracle_orient(const IndexedPoint& a, const IndexedPoint& b, const IndexedPoint& c,
                  SchemeId scheme, const Rational& eta) {
    std::vector<IndexedPoint> pts{a, b, c};
    SlotPattern pattern = pattern_of(pts);
    validate_pattern(PredicateKind::Orient3, pattern);
    guard_scheme_a_duplicates(pts, scheme);
    Polynomial expr = sym_orient(SlotPattern{pattern_reps(pattern)}, scheme);
    return numeric_epsilon_oracle(expr, rep_assignment(pts), scheme, eta);
}

int oracle_segment_order(const Segment& s1, const Segment& s2, const Segment& s3, SchemeId scheme,
                         const Rational& eta) {
    SegContext ctx = make_seg_context(s1, s2, s3, scheme, PredicateKind::SegOrderParam);
    SegOrderParts parts = sym_segment_order_param(SlotPattern{pattern_reps(ctx.pattern)}, scheme);
    auto coords = rep_assignment(ctx.pts);
    auto num = numeric_terms(parts.numerator, coords, scheme);
    auto den1 = numeric_terms(parts.den1, coords, scheme);
    auto den2 = numeric_terms(parts.den2, coords, scheme);
    int limit = -(limit_sign(num) * limit_sign(den1) * limit_sign(den2));
    return oracle_with_sweep(eta, limit, [&](const Rational& e) {
        return -(substitution_sign(num, e) * substitution_sign(den1, e) *
                 substitution_sign(den2, e));
    });
}

}  // namespace perturb
