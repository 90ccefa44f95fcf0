#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "perturb/rational.hpp"

namespace perturb {

// Range images of a tetrahedral mesh under a bivariate map: per-vertex (f1, f2)
// values plus the tetrahedra; edges are derived and deduplicated.
struct MeshBivariate {
    std::vector<std::pair<Rational, Rational>> vertices;  // (f1, f2) per vertex
    std::vector<std::array<std::uint32_t, 4>> tets;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;
};

// ASCII format: first line "nv nt", then nv lines "f1 f2" (each value "a/b" or
// a decimal), then nt lines "v0 v1 v2 v3" of 0-based vertex indices.
MeshBivariate parse_mesh(std::istream& in);
MeshBivariate load_mesh(const std::string& path);

struct ScanReport {
    std::uint64_t duplicate_points = 0;    // vertices sharing their range point with another
    std::uint64_t collinear_triples = 0;   // over the sampled vertex triples
    std::uint64_t concurrent_triples = 0;  // segment triples meeting at one interior point
    std::uint64_t vertex_triples_tested = 0;
    std::uint64_t edge_triples_tested = 0;
    bool exhaustive_vertices = false;
    bool exhaustive_edges = false;

    std::string to_json() const;
};

// Duplicates are counted exactly by hashing range points. Collinear vertex
// triples and concurrent segment triples are tested with exact unperturbed
// predicates on `samples` random triples, or exhaustively when the triple
// count does not exceed `samples`.
ScanReport scan_mesh(const MeshBivariate& mesh, std::uint64_t samples, std::uint64_t seed);

}  // namespace perturb
