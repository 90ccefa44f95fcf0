#include "perturb/generators.hpp"

#include "perturb/errors.hpp"

namespace perturb {

RationalRotation RationalRotation::from_tangent(const Rational& t) {
    Rational t2 = t * t;
    Rational denom = Rational(1) + t2;
    return {(Rational(1) - t2) / denom, (t + t) / denom};
}

std::pair<Rational, Rational> RationalRotation::apply(const Rational& x, const Rational& y) const {
    return {x * cos_v - y * sin_v, x * sin_v + y * cos_v};
}

std::array<IndexedPoint, 3> collinear_from_params(const Rational& u0, const Rational& u1,
                                                  const Rational& u2, const Rational& rot_t,
                                                  const Rational& dx, const Rational& dy) {
    if (u0 == u1 || u0 == u2 || u1 == u2)
        throw Error(ErrorCode::DegenerateParameters, "collinear positions must be distinct");
    RationalRotation rot = RationalRotation::from_tangent(rot_t);
    std::array<IndexedPoint, 3> pts;
    std::array<Rational, 3> us{u0, u1, u2};
    for (int i = 0; i < 3; ++i) {
        auto [x, y] = rot.apply(us[static_cast<std::size_t>(i)], us[static_cast<std::size_t>(i)]);
        pts[static_cast<std::size_t>(i)] = {i, x + dx, y + dy};
    }
    return pts;
}

std::array<IndexedPoint, 3> gen_collinear(std::uint64_t seed, std::uint64_t k) {
    SplitMix64 rng(seed, k);
    Rational u0 = rng.next_rational(), u1, u2;
    do {
        u1 = rng.next_rational();
    } while (u1 == u0);
    do {
        u2 = rng.next_rational();
    } while (u2 == u0 || u2 == u1);
    Rational rot_t = rng.next_rational();
    Rational dx = rng.next_rational(), dy = rng.next_rational();
    return collinear_from_params(u0, u1, u2, rot_t, dx, dy);
}

std::array<Segment, 3> concurrent_from_params(const Rational& t0, const Rational& t1,
                                              const Rational& t2, const Rational& rot_t,
                                              const Rational& dx, const Rational& dy) {
    if (t0 == t1 || t0 == t2 || t1 == t2)
        throw Error(ErrorCode::DegenerateParameters, "stereographic parameters must be distinct");
    RationalRotation rot = RationalRotation::from_tangent(rot_t);
    std::array<Segment, 3> segs;
    std::array<Rational, 3> ts{t0, t1, t2};
    for (int i = 0; i < 3; ++i) {
        Rational t = ts[static_cast<std::size_t>(i)];
        Rational denom = Rational(1) + t * t;
        Rational cx = (Rational(1) - t * t) / denom;
        Rational cy = (t + t) / denom;
        auto [x0, y0] = rot.apply(cx, cy);
        auto [x1, y1] = rot.apply(-cx, -cy);
        segs[static_cast<std::size_t>(i)] = {IndexedPoint{2 * i, x0 + dx, y0 + dy},
                                             IndexedPoint{2 * i + 1, x1 + dx, y1 + dy}};
    }
    return segs;
}

std::array<Segment, 3> gen_concurrent(std::uint64_t seed, std::uint64_t k) {
    SplitMix64 rng(seed, k);
    Rational t0 = rng.next_rational(), t1, t2;
    do {
        t1 = rng.next_rational();
    } while (t1 == t0);
    do {
        t2 = rng.next_rational();
    } while (t2 == t0 || t2 == t1);
    Rational rot_t = rng.next_rational();
    Rational dx = rng.next_rational(), dy = rng.next_rational();
    return concurrent_from_params(t0, t1, t2, rot_t, dx, dy);
}

std::array<IndexedPoint, 3> gen_random_triple(std::uint64_t seed, std::uint64_t k) {
    SplitMix64 rng(seed, k);
    std::array<IndexedPoint, 3> pts;
    for (int i = 0; i < 3; ++i)
        pts[static_cast<std::size_t>(i)] = {i, rng.next_rational(), rng.next_rational()};
    return pts;
}

std::array<Segment, 3> gen_random_segments(std::uint64_t seed, std::uint64_t k) {
    SplitMix64 rng(seed, k);
    std::array<Segment, 3> segs;
    for (int i = 0; i < 3; ++i) {
        IndexedPoint a{2 * i, rng.next_rational(), rng.next_rational()};
        IndexedPoint b{2 * i + 1, rng.next_rational(), rng.next_rational()};
        while (a.x == b.x && a.y == b.y) {
            b.x = rng.next_rational();
            b.y = rng.next_rational();
        }
        segs[static_cast<std::size_t>(i)] = {a, b};
    }
    return segs;
}

}  // namespace perturb
