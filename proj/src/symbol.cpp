#include "perturb/symbol.hpp"

#include <cstdlib>

#include "perturb/errors.hpp"

namespace perturb {

std::string Symbol::spelling() const {
    switch (kind_) {
        case Kind::Coordinate:
            return "p_" + std::to_string(point_) + "_" + std::to_string(axis_);
        case Kind::EpsCoord:
            return "eps_" + std::to_string(point_) + "_" + std::to_string(axis_);
        case Kind::EpsGlobal:
            return "eps";
        case Kind::LineCoef:
            return "ell_" + std::to_string(axis_);
    }
    return "?";
}

Symbol Symbol::from_spelling(const std::string& s) {
    auto split_tail = [&](std::size_t prefix_len) {
        std::string rest = s.substr(prefix_len);
        auto us = rest.find('_');
        if (us == std::string::npos) throw Error(ErrorCode::ParseError, "bad symbol '" + s + "'");
        return std::pair<std::int64_t, int>{std::atoll(rest.substr(0, us).c_str()),
                                            std::atoi(rest.substr(us + 1).c_str())};
    };
    if (s == "eps") return eps_global();
    if (s.rfind("p_", 0) == 0) {
        auto [point, axis] = split_tail(2);
        if (axis != 1 && axis != 2) throw Error(ErrorCode::ParseError, "bad axis in '" + s + "'");
        return coordinate(point, axis);
    }
    if (s.rfind("eps_", 0) == 0) {
        auto [point, axis] = split_tail(4);
        if (axis != 1 && axis != 2) throw Error(ErrorCode::ParseError, "bad axis in '" + s + "'");
        return eps_coord(point, axis);
    }
    if (s.rfind("ell_", 0) == 0) {
        int c = std::atoi(s.substr(4).c_str());
        if (c < 1 || c > 3) throw Error(ErrorCode::ParseError, "bad line coefficient '" + s + "'");
        return line_coef(c);
    }
    throw Error(ErrorCode::ParseError, "unknown symbol '" + s + "'");
}

}  // namespace perturb
