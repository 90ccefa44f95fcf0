#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "perturb/predicates.hpp"

namespace perturb {

struct ExperimentConfig {
    PredicateKind predicate = PredicateKind::Orient3;  // Orient3 or SegOrderParam
    SchemeId scheme = SchemeId::E;
    std::uint64_t samples = 1;
    std::uint64_t seed = 0;
};

// Depth and operation statistics over synthetic degenerate cases: collinear
// triples for the orientation predicate, concurrent segment triples for the
// segment order. Deterministic for a fixed (seed, config).
struct DepthReport {
    ExperimentConfig config;
    double depth_mean = 0, depth_sd = 0;
    double ops_mean = 0, ops_sd = 0;
    std::map<std::size_t, std::uint64_t> depth_histogram;

    double depth_fraction(std::size_t depth) const;
    std::string to_json() const;
    std::string to_csv() const;
};

DepthReport run_depth_experiment(const ExperimentConfig& cfg);

}  // namespace perturb
