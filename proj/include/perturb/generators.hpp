#pragma once

#include <array>

#include "perturb/eval.hpp"
#include "perturb/rng.hpp"

namespace perturb {

// Rational rotation from the tangent half-angle t: cos = (1-t^2)/(1+t^2),
// sin = 2t/(1+t^2), so rotated rational points stay rational.
struct RationalRotation {
    Rational cos_v, sin_v;

    static RationalRotation from_tangent(const Rational& t);
    std::pair<Rational, Rational> apply(const Rational& x, const Rational& y) const;
};

// Three exactly collinear points: positions u0, u1, u2 along the y = x line,
// then the rotation and translation. Positions must be distinct.
std::array<IndexedPoint, 3> collinear_from_params(const Rational& u0, const Rational& u1,
                                                  const Rational& u2, const Rational& rot_t,
                                                  const Rational& dx, const Rational& dy);

// Sample k of the seeded stream; indices 0, 1, 2.
std::array<IndexedPoint, 3> gen_collinear(std::uint64_t seed, std::uint64_t k);

// Three segments concurrent at one interior point: unit-circle points from the
// stereographic parameters t0, t1, t2 paired with their antipodes (diameters),
// then a common rotation and translation. Throws DegenerateParameters when two
// parameters coincide.
std::array<Segment, 3> concurrent_from_params(const Rational& t0, const Rational& t1,
                                              const Rational& t2, const Rational& rot_t,
                                              const Rational& dx, const Rational& dy);

// Sample k of the seeded stream; endpoint indices 0..5 in slot order.
std::array<Segment, 3> gen_concurrent(std::uint64_t seed, std::uint64_t k);

// Non-degenerate-by-construction random inputs for oracle cross-checks.
std::array<IndexedPoint, 3> gen_random_triple(std::uint64_t seed, std::uint64_t k);
std::array<Segment, 3> gen_random_segments(std::uint64_t seed, std::uint64_t k);

}  // namespace perturb
