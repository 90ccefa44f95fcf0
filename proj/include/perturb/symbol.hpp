#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace perturb {

// A symbol is either a point coordinate p_{i,axis}, an epsilon variable
// (per-coordinate eps_{i,axis} or the single global eps), or one of the three
// homogeneous line coefficients used by the wedge forms. The total order puts
// coordinates first so that collected coefficient polynomials sort stably.
class Symbol {
  public:
    enum class Kind : std::uint8_t { Coordinate = 0, LineCoef = 1, EpsCoord = 2, EpsGlobal = 3 };

    static Symbol coordinate(std::int64_t point, int axis) { return Symbol(Kind::Coordinate, point, axis); }
    static Symbol eps_coord(std::int64_t point, int axis) { return Symbol(Kind::EpsCoord, point, axis); }
    static Symbol eps_global() { return Symbol(Kind::EpsGlobal, 0, 0); }
    // component: 1 -> A, 2 -> B, 3 -> C of a dual line (A, B, C).
    static Symbol line_coef(int component) { return Symbol(Kind::LineCoef, 0, component); }

    Kind kind() const { return kind_; }
    std::int64_t point() const { return point_; }
    int axis() const { return axis_; }

    bool is_epsilon() const { return kind_ == Kind::EpsCoord || kind_ == Kind::EpsGlobal; }
    bool is_coordinate() const { return kind_ == Kind::Coordinate; }

    friend auto operator<=>(const Symbol& a, const Symbol& b) = default;

    // "p_3_1", "eps_3_1", "eps", "ell_1".
    std::string spelling() const;
    static Symbol from_spelling(const std::string& s);

  private:
    Symbol(Kind k, std::int64_t p, int a) : kind_(k), point_(p), axis_(a) {}

    Kind kind_;
    std::int64_t point_;
    int axis_;
};

}  // namespace perturb
