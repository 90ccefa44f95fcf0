#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "perturb/polynomial.hpp"

namespace perturb {

// The four symbolic perturbation schemes.
//   E  - per-coordinate infinitesimals eps_{i,j}, one pair per point
//   A  - a single global eps driving a fixed polynomial point perturbation
//   YL - derivative scheme, lexicographic admissible order
//   YT - derivative scheme, total-degree admissible order
enum class SchemeId { E, A, YL, YT };

std::string scheme_name(SchemeId s);
SchemeId scheme_from_name(const std::string& name);

inline bool scheme_uses_epsilon(SchemeId s) { return s == SchemeId::E || s == SchemeId::A; }

// Row keys of an evaluation table. For E/A the factors are epsilon symbols
// (an epsilon product); for YL/YT they are coordinate symbols carrying
// derivative orders (a multi-index). The empty vector is the unit key: the
// unperturbed expression / 0th derivative, always the most significant row.
using TableKeyFactors = FactorVec;

// Perturbed coordinate pair (x, y) of point i under a scheme.
// E:  (p_i1 + eps_i1, p_i2 + eps_i2)
// A:  (p_i1 + eps*p_i2, p_i2 + eps^2*p_i1 + eps^3*(p_i1^2 + p_i2^2))
// YL/YT: the raw symbols; the derivative construction needs no expansion.
std::pair<Polynomial, Polynomial> expand_point(SchemeId scheme, std::int64_t point_index);

// Strict total order on same-scheme keys; negative means a is the more
// significant (earlier) row. Throws IncomparableKeys on mixed families.
//
// E: eps_{i,j} carries magnitude eta^(2^(3i-j)); a product's exponent is the
// sum over its factors, and smaller exponent sums come first. Sums of distinct
// powers of two never tie, so the comparison reduces to the descending list of
// per-factor exponents.
// A: plain powers of the global eps, increasing.
// YL: colexicographic on the multi-index over the coordinate-symbol order:
// at the highest-ordered symbol where the indices differ, the smaller entry
// comes first. This interleaves derivative orders, visiting high derivatives
// of early symbols before first derivatives of later ones.
// YT: total order first, colexicographic tie-break.
int compare_keys(SchemeId scheme, const TableKeyFactors& a, const TableKeyFactors& b);

// The ordered key list Algorithm-style table construction walks.
// E/A: exactly the epsilon products occurring in expr, most significant first.
// YL/YT: every derivative multi-index over expr's coordinate symbols up to
// expr's total degree, in admissible order (the 0th derivative first).
std::vector<TableKeyFactors> enumerate_keys(SchemeId scheme, const Polynomial& expr);

// Base-2 exponent of the magnitude assigned to eps_{i,j} under scheme E,
// shifted so it is non-negative for i >= 0: 3i - j + 2. Shared between
// compare_keys and the numeric substitution eps_{i,j} := eta^(2^e).
std::int64_t eps_weight_exponent(std::int64_t point_index, int axis);

}  // namespace perturb
