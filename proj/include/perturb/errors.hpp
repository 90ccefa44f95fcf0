#pragma once

#include <stdexcept>
#include <string>

namespace perturb {

enum class ErrorCode {
    CyclicSubstitution,
    UnboundSymbol,
    IncomparableKeys,
    RepeatedIndex,
    IdenticalSegments,
    TiedByIncidence,
    NoConstantRow,
    PatternMismatch,
    SameIndex,
    DuplicatePointsUnsupported,
    NoStabilization,
    SchemeLimitation,
    DegenerateParameters,
    EmptyMesh,
    UnknownDialect,
    ParseError,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace perturb
