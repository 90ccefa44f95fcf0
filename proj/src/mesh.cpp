#include "perturb/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "perturb/errors.hpp"
#include "perturb/rng.hpp"

namespace perturb {

std::vector<std::pair<std::uint32_t, std::uint32_t>> MeshBivariate::edges() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (const auto& t : tets) {
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                auto a = t[static_cast<std::size_t>(i)], b = t[static_cast<std::size_t>(j)];
                out.emplace_back(std::min(a, b), std::max(a, b));
            }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MeshBivariate parse_mesh(std::istream& in) {
    MeshBivariate mesh;
    std::uint64_t nv = 0, nt = 0;
    if (!(in >> nv >> nt)) throw Error(ErrorCode::ParseError, "mesh header must be 'nv nt'");
    if (nv == 0) throw Error(ErrorCode::EmptyMesh, "mesh has no vertices");
    mesh.vertices.reserve(nv);
    for (std::uint64_t i = 0; i < nv; ++i) {
        std::string f1, f2;
        if (!(in >> f1 >> f2))
            throw Error(ErrorCode::ParseError, "missing vertex value on line " + std::to_string(i));
        mesh.vertices.emplace_back(Rational::parse(f1), Rational::parse(f2));
    }
    for (std::uint64_t i = 0; i < nt; ++i) {
        std::array<std::uint32_t, 4> t{};
        for (auto& v : t) {
            long long raw = 0;
            if (!(in >> raw)) throw Error(ErrorCode::ParseError, "missing tetrahedron vertex");
            if (raw < 0 || static_cast<std::uint64_t>(raw) >= nv)
                throw Error(ErrorCode::ParseError,
                            "tetrahedron references vertex " + std::to_string(raw));
            v = static_cast<std::uint32_t>(raw);
        }
        mesh.tets.push_back(t);
    }
    return mesh;
}

MeshBivariate load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open mesh file '" + path + "'");
    return parse_mesh(in);
}

namespace {

using Point = std::pair<Rational, Rational>;

Rational orient_value(const Point& a, const Point& b, const Point& c) {
    return (b.first - a.first) * (c.second - a.second) -
           (c.first - a.first) * (b.second - a.second);
}

struct HomLine {
    Rational a, b, c;
};

HomLine line_through(const Point& p, const Point& q) {
    return {q.second - p.second, p.first - q.first, q.first * p.second - p.first * q.second};
}

bool strictly_inside(const Point& p, const Point& a, const Point& b) {
    // p is known collinear with ab; betweenness on the axis where ab extends.
    if (a.first != b.first) {
        auto [lo, hi] = std::minmax(a.first, b.first);
        return lo < p.first && p.first < hi;
    }
    auto [lo, hi] = std::minmax(a.second, b.second);
    return lo < p.second && p.second < hi;
}

// Exact test: the three segments' supporting lines meet at one point that is
// strictly interior to all three. Coincident or parallel line pairs never
// produce a single common point and are not counted.
bool concurrent_in_interiors(const std::array<std::pair<Point, Point>, 3>& segs) {
    for (const auto& s : segs)
        if (s.first == s.second) return false;  // zero-length image
    HomLine l0 = line_through(segs[0].first, segs[0].second);
    HomLine l1 = line_through(segs[1].first, segs[1].second);
    // Homogeneous intersection of the first two lines.
    Rational hx = l0.b * l1.c - l0.c * l1.b;
    Rational hy = l0.c * l1.a - l0.a * l1.c;
    Rational hw = l0.a * l1.b - l0.b * l1.a;
    if (hw.is_zero()) return false;
    Point p{hx / hw, hy / hw};
    HomLine l2 = line_through(segs[2].first, segs[2].second);
    if (!(l2.a * p.first + l2.b * p.second + l2.c).is_zero()) return false;
    for (const auto& s : segs)
        if (!strictly_inside(p, s.first, s.second)) return false;
    return true;
}

std::uint64_t triple_count(std::uint64_t n) {
    if (n < 3) return 0;
    return n * (n - 1) * (n - 2) / 6;
}

// Visits every i<j<k triple when the total count fits the budget, otherwise
// `samples` seeded random distinct triples.
template <class Fn>
std::pair<std::uint64_t, bool> for_each_triple(std::uint64_t n, std::uint64_t samples,
                                               std::uint64_t seed, std::uint64_t stream, Fn&& fn) {
    std::uint64_t total = triple_count(n);
    if (total == 0) return {0, true};
    if (total <= samples) {
        for (std::uint64_t i = 0; i < n; ++i)
            for (std::uint64_t j = i + 1; j < n; ++j)
                for (std::uint64_t k = j + 1; k < n; ++k) fn(i, j, k);
        return {total, true};
    }
    SplitMix64 rng(seed, stream);
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::uint64_t i, j, k;
        do {
            i = rng.next_below(n);
            j = rng.next_below(n);
            k = rng.next_below(n);
        } while (i == j || i == k || j == k);
        fn(i, j, k);
    }
    return {samples, false};
}

}  // namespace

ScanReport scan_mesh(const MeshBivariate& mesh, std::uint64_t samples, std::uint64_t seed) {
    if (mesh.vertices.empty()) throw Error(ErrorCode::EmptyMesh, "mesh has no vertices");
    ScanReport report;

    std::unordered_map<std::string, std::uint64_t> occupancy;
    for (const auto& [x, y] : mesh.vertices)
        occupancy[x.fraction_string() + ";" + y.fraction_string()] += 1;
    for (const auto& [key, count] : occupancy)
        if (count >= 2) report.duplicate_points += count;

    auto [vt, vex] = for_each_triple(
        mesh.vertices.size(), samples, seed, 1, [&](std::uint64_t i, std::uint64_t j, std::uint64_t k) {
            if (orient_value(mesh.vertices[i], mesh.vertices[j], mesh.vertices[k]).is_zero())
                report.collinear_triples += 1;
        });
    report.vertex_triples_tested = vt;
    report.exhaustive_vertices = vex;

    auto edges = mesh.edges();
    auto [et, eex] = for_each_triple(
        edges.size(), samples, seed, 2, [&](std::uint64_t i, std::uint64_t j, std::uint64_t k) {
            std::array<std::pair<Point, Point>, 3> segs;
            std::array<std::uint64_t, 3> idx{i, j, k};
            for (int s = 0; s < 3; ++s) {
                auto [a, b] = edges[idx[static_cast<std::size_t>(s)]];
                segs[static_cast<std::size_t>(s)] = {mesh.vertices[a], mesh.vertices[b]};
            }
            if (concurrent_in_interiors(segs)) report.concurrent_triples += 1;
        });
    report.edge_triples_tested = et;
    report.exhaustive_edges = eex;
    return report;
}

std::string ScanReport::to_json() const {
    nlohmann::ordered_json j;
    j["duplicate_points"] = duplicate_points;
    j["collinear_triples"] = collinear_triples;
    j["concurrent_triples"] = concurrent_triples;
    j["vertex_triples_tested"] = vertex_triples_tested;
    j["edge_triples_tested"] = edge_triples_tested;
    j["exhaustive_vertices"] = exhaustive_vertices;
    j["exhaustive_edges"] = exhaustive_edges;
    return j.dump(2) + "\n";
}

}  // namespace perturb
