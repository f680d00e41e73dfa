#pragma once

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "racdraw/validate.hpp"

namespace racdraw {

class GenerationFailed : public std::runtime_error {
public:
    explicit GenerationFailed(const std::string& what) : std::runtime_error("GENERATION_FAILED: " + what) {}
};

struct HexLatticeParams {
    int rings = 1;            // 1 is a single hexagon; ring r adds 6(r - 1) hexagons
    Scalar side = Scalar(1);  // must be positive
};

/// Closed forms for the hexagonal patch with `rings` rings of hexagons.
inline std::size_t hex_lattice_vertices(int rings) { return 6 * static_cast<std::size_t>(rings) * rings; }
inline std::size_t hex_lattice_hexagons(int rings) {
    const auto r = static_cast<std::size_t>(rings);
    return 3 * r * r - 3 * r + 1;
}
inline std::size_t hex_lattice_edges(int rings) {
    const auto r = static_cast<std::size_t>(rings);
    return 27 * r * r - 21 * r + 6;
}

/// The one-bend diagonal from corner i to corner i + 2 of a counterclockwise
/// hexagon. Its first piece follows the leg of the isosceles right triangle
/// erected inward on side (i, i+1); its last piece follows the leg of the
/// triangle on side (i+1, i+2). The bend is where the two prolonged legs meet.
inline Point hex_diagonal_bend(const std::array<Point, 6>& corner, int i) {
    auto left = [](const Point& d) { return Point{-d.y, d.x}; };
    const Point& p = corner[i];
    const Point& q = corner[(i + 2) % 6];
    const Point d0 = corner[(i + 1) % 6] - p;
    const Point d1 = q - corner[(i + 1) % 6];
    const Point u = d0 + left(d0);
    const Point w = Point{-d1.x, -d1.y} + left(d1);
    const Scalar t = cross(q - p, w) / cross(u, w);
    return p + t * u;
}

/// Hexagonal lattice with six one-bend diagonals in every hexagon.
inline Drawing gen_hex_lattice(const HexLatticeParams& params) {
    if (params.rings < 1) throw std::invalid_argument("rings must be >= 1");
    if (params.side.sign() <= 0) throw std::invalid_argument("side must be positive");
    const Scalar& s = params.side;
    const Scalar half = s / Scalar(2);
    const Scalar h = half * Scalar::sqrt3();
    const std::array<Point, 6> offsets{Point{s, 0},          Point{half, h},  Point{-half, h},
                                       Point{Scalar(0) - s, 0}, Point{-half, -h}, Point{half, -h}};
    const int r = params.rings - 1;
    std::vector<std::array<Point, 6>> hexagons;
    for (int q = -r; q <= r; ++q) {
        for (int k = -r; k <= r; ++k) {
            if (std::abs(q + k) > r) continue;
            const Point center{Scalar::frac(3, 2) * s * Scalar(q), s * Scalar::sqrt3() * (Scalar(k) + Scalar::frac(q, 2))};
            std::array<Point, 6> hex;
            for (int i = 0; i < 6; ++i) hex[i] = center + offsets[i];
            hexagons.push_back(hex);
        }
    }
    Drawing d;
    std::map<Point, VertexId, PointKeyLess> ids;
    auto vertex = [&](const Point& p) {
        auto it = ids.find(p);
        if (it != ids.end()) return it->second;
        const VertexId id = d.add_vertex("h" + std::to_string(ids.size()), p);
        ids.emplace(p, id);
        return id;
    };
    std::set<std::pair<VertexId, VertexId>> sides;
    for (const auto& hex : hexagons) {
        for (int i = 0; i < 6; ++i) {
            const VertexId a = vertex(hex[i]);
            const VertexId b = vertex(hex[(i + 1) % 6]);
            if (sides.insert(std::minmax(a, b)).second) d.add_edge(a, b);
        }
    }
    for (const auto& hex : hexagons)
        for (int i = 0; i < 6; ++i) d.add_edge(vertex(hex[i]), vertex(hex[(i + 2) % 6]), {hex_diagonal_bend(hex, i)});
    return d;
}

namespace fixtures {

/// Two straight edges crossing as a "+".
inline Drawing plus_sign() {
    Drawing d;
    d.add_vertex("w", {-1, 0});
    d.add_vertex("e", {1, 0});
    d.add_vertex("s", {0, -1});
    d.add_vertex("n", {0, 1});
    d.add_edge("w", "e");
    d.add_edge("s", "n");
    return d;
}

inline Drawing plane_triangle() {
    Drawing d;
    d.add_vertex("a", {0, 0});
    d.add_vertex("b", {4, 0});
    d.add_vertex("c", {0, 3});
    d.add_edge("a", "b");
    d.add_edge("b", "c");
    d.add_edge("c", "a");
    return d;
}

/// Straight-line K4 on a square; the diagonals cross once at a right angle.
inline Drawing k4() {
    Drawing d;
    d.add_vertex("a", {0, 0});
    d.add_vertex("b", {2, 0});
    d.add_vertex("c", {2, 2});
    d.add_vertex("d", {0, 2});
    d.add_edge("a", "b");
    d.add_edge("b", "c");
    d.add_edge("c", "d");
    d.add_edge("d", "a");
    d.add_edge("a", "c");
    d.add_edge("b", "d");
    return d;
}

/// Square grid of straight edges: `rows` horizontals crossed by `cols` verticals.
inline Drawing grid_crossing(int rows = 3, int cols = 3) {
    Drawing d;
    for (int i = 0; i < rows; ++i) {
        d.add_vertex("l" + std::to_string(i), {0, 2 * i + 1});
        d.add_vertex("r" + std::to_string(i), {2 * cols, 2 * i + 1});
        d.add_edge("l" + std::to_string(i), "r" + std::to_string(i));
    }
    for (int j = 0; j < cols; ++j) {
        d.add_vertex("b" + std::to_string(j), {2 * j + 1, 0});
        d.add_vertex("t" + std::to_string(j), {2 * j + 1, 2 * rows});
        d.add_edge("b" + std::to_string(j), "t" + std::to_string(j));
    }
    return d;
}

/// Lens with a single (convex) bend and one straight side: the shape that
/// can always be redrawn with one crossing fewer.
inline Drawing lens_redrawable() {
    Drawing d;
    d.add_vertex("v", {0, 0});
    d.add_vertex("w1", {6, 0});
    d.add_vertex("w0", {4, -2});
    d.add_edge("v", "w1");
    d.add_edge("v", "w0", {{4, 2}});
    return d;
}

/// Lens bounded by one convex and one concave bend, plus a crossed pendant
/// edge so the lens vertex has degree 3.
inline Drawing lens_concave() {
    Drawing d;
    d.add_vertex("v", {0, 0});
    d.add_vertex("w0", {1, 4});
    d.add_vertex("w1", {4, 5});
    d.add_vertex("p", {-4, 0});
    d.add_vertex("q0", {-2, -2});
    d.add_vertex("q1", {-2, 2});
    d.add_edge("v", "w0", {{5, 2}});
    d.add_edge("v", "w1", {{2, 1}});
    d.add_edge("v", "p");
    d.add_edge("q0", "q1");
    return d;
}

/// Four two-bend edges with horizontal middles crossed by six with vertical
/// middles; every crossing is middle-to-middle.
inline Drawing middle_grid() {
    Drawing d;
    for (int j = 0; j < 4; ++j) {
        const int y = 2 + 2 * j;
        d.add_vertex("hl" + std::to_string(j), {0, y - 1});
        d.add_vertex("hr" + std::to_string(j), {14, y - 1});
        d.add_edge("hl" + std::to_string(j), "hr" + std::to_string(j), {{1, y}, {13, y}});
    }
    for (int j = 0; j < 6; ++j) {
        const int x = 2 + 2 * j;
        d.add_vertex("vb" + std::to_string(j), {x - 1, 0});
        d.add_vertex("vt" + std::to_string(j), {x - 1, 10});
        d.add_edge("vb" + std::to_string(j), "vt" + std::to_string(j), {{x, 1}, {x, 9}});
    }
    return d;
}

}  // namespace fixtures

namespace detail {

/// Adds the edge, keeps it only when the drawing stays valid at class k.
/// Checks are local to the new edge; earlier edges were already admitted.
inline bool try_add_edge(Drawing& d, std::vector<Crossing>& crossings, VertexId u, VertexId v,
                         std::vector<Point> bends, int k) {
    if (u == v) return false;
    EdgeId e;
    try {
        e = d.add_edge(u, v, std::move(bends));
    } catch (const DrawingError&) {
        return false;
    }
    ViolationSink sink;
    const auto segs = d.segments(e);
    if (static_cast<int>(d.edge(e).bend_count()) > k) sink.add({ViolationCode::TooManyBends, e, {}, {}, {}});
    check_self(segs, e, sink);
    check_vertices_on_edge(d, segs, e, sink);
    std::vector<Crossing> fresh;
    std::map<Point, std::set<EdgeId>, PointKeyLess> meets;
    for (const auto& c : crossings) meets[c.point].insert({c.edge_a, c.edge_b});
    for (EdgeId f = 0; f < e && sink.empty(); ++f) check_pair(d, f, d.segments(f), e, segs, sink, fresh, meets);
    if (sink.empty()) check_triple_points(meets, sink);
    if (sink.empty()) {
        crossings.insert(crossings.end(), fresh.begin(), fresh.end());
        return true;
    }
    d.remove_last_edge();
    return false;
}

inline bool point_on_any_edge(const Drawing& d, const Point& p) {
    for (EdgeId e = 0; e < d.edge_count(); ++e)
        for (const auto& s : d.segments(e))
            if (on_segment(s, p)) return true;
    return false;
}

}  // namespace detail

enum class Rac0Kind { GridCrossing, K4, PlusSign, Random };

/// Straight-line right-angle-crossing drawings. The random family grows
/// stars of axis-parallel and diagonal segments from lattice points (those
/// directions make perpendicular crossings likely) mixed with a few
/// arbitrary chords, admitting an edge only when the drawing stays valid.
inline Drawing gen_rac0_fixture(Rac0Kind kind, std::uint64_t seed = 0, int n = 20) {
    switch (kind) {
        case Rac0Kind::GridCrossing: return fixtures::grid_crossing();
        case Rac0Kind::K4: return fixtures::k4();
        case Rac0Kind::PlusSign: return fixtures::plus_sign();
        case Rac0Kind::Random: break;
    }
    if (n < 3) throw std::invalid_argument("random RAC0 fixture needs n >= 3");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 20; ++attempt) {
        Drawing d;
        const int grid = std::max(4, static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1);
        std::uniform_int_distribution<int> coord(0, grid - 1);
        std::set<std::pair<int, int>> used;
        while (static_cast<int>(used.size()) < n) {
            const int x = coord(rng);
            const int y = coord(rng);
            std::pair<int, int> p{x, y};
            if (used.insert(p).second) d.add_vertex("p" + std::to_string(used.size() - 1), {p.first, p.second});
        }
        std::vector<std::pair<VertexId, VertexId>> candidates;
        for (VertexId a = 0; a < d.vertex_count(); ++a) {
            for (VertexId b = a + 1; b < d.vertex_count(); ++b) {
                const Point diff = d.vertex(b).pos - d.vertex(a).pos;
                const bool aligned = diff.x.is_zero() || diff.y.is_zero() || diff.x == diff.y || diff.x == -diff.y;
                if (aligned || rng() % 8 == 0) candidates.emplace_back(a, b);
            }
        }
        std::shuffle(candidates.begin(), candidates.end(), rng);
        std::vector<Crossing> crossings;
        const std::size_t target = static_cast<std::size_t>(2 * n);
        for (const auto& [a, b] : candidates) {
            if (d.edge_count() >= target) break;
            detail::try_add_edge(d, crossings, a, b, {}, 0);
        }
        if (d.edge_count() >= 2) return d;
    }
    throw GenerationFailed("random RAC0 fixture (seed " + std::to_string(seed) + ")");
}

/// Random one-bend fixtures: a hexagonal lattice patch with a random subset
/// of its edges, rotated by a multiple of 90 degrees, scaled and translated,
/// usually next to a copy of the concave lens gadget.
inline Drawing gen_rac1_fixture(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int rings = 1 + static_cast<int>(rng() % 2);
    const long num = 1 + static_cast<long>(rng() % 3);
    const long den = 1 + static_cast<long>(rng() % 2);
    const Drawing lattice = gen_hex_lattice({rings, Scalar::frac(num, den)});
    std::bernoulli_distribution keep_side(0.8);
    std::bernoulli_distribution keep_diagonal(0.75);
    const int quarter = static_cast<int>(rng() % 4);
    const long dx = static_cast<long>(rng() % 21) - 10;
    const long dy = static_cast<long>(rng() % 21) - 10;
    const Point shift{dx, dy};
    auto map = [&](Point p) {
        for (int i = 0; i < quarter; ++i) p = Point{-p.y, p.x};
        return p + shift;
    };
    Drawing d;
    for (const auto& v : lattice.vertices()) d.add_vertex(v.name, map(v.pos));
    for (const auto& e : lattice.edges()) {
        const bool keep = e.bends.empty() ? keep_side(rng) : keep_diagonal(rng);
        if (!keep) continue;
        std::vector<Point> bends;
        for (const auto& b : e.bends) bends.push_back(map(b));
        d.add_edge(e.u, e.v, std::move(bends));
    }
    // Most fixtures also carry a lens gadget, possibly mirrored, off to the side.
    if (std::bernoulli_distribution(0.6)(rng)) {
        const bool mirror = rng() % 2 == 1;
        const int turns = static_cast<int>(rng() % 4);
        const Point at{40 + static_cast<long>(rng() % 9), static_cast<long>(rng() % 9) - 4};
        auto place = [&](Point p) {
            if (mirror) p = Point{-p.x, p.y};
            for (int i = 0; i < turns; ++i) p = Point{-p.y, p.x};
            return p + at;
        };
        const Drawing lens = fixtures::lens_concave();
        for (const auto& v : lens.vertices()) d.add_vertex("L" + v.name, place(v.pos));
        for (const auto& e : lens.edges()) {
            std::vector<Point> bends;
            for (const auto& b : e.bends) bends.push_back(place(b));
            d.add_edge("L" + lens.vertex(e.u).name, "L" + lens.vertex(e.v).name, std::move(bends));
        }
    }
    if (!validate(d, 1).ok) throw GenerationFailed("random RAC1 fixture (seed " + std::to_string(seed) + ")");
    return d;
}

/// Random two-bend fixtures built from axis-parallel and diagonal pieces.
/// A fixed gadget comes first: its first two edges cross middle to middle,
/// and with at least six edges it supplies one crossing of each type
/// (end-end, end-middle, middle-middle). The rest is random.
inline Drawing gen_rac2_fixture(std::uint64_t seed, int edges) {
    if (edges < 1) throw std::invalid_argument("edges must be >= 1");
    std::mt19937_64 rng(seed);
    Drawing d;
    std::vector<Crossing> crossings;
    auto add_vertex = [&](const Point& p) -> std::optional<VertexId> {
        if (d.vertex_at(p) || detail::point_on_any_edge(d, p)) return std::nullopt;
        return d.add_vertex("q" + std::to_string(d.vertex_count()), p);
    };
    {
        struct Piece {
            Point u, v;
            std::vector<Point> bends;
        };
        const std::vector<Piece> gadget{
            {{0, 0}, {6, 0}, {{1, 1}, {5, 1}}},      // horizontal middle
            {{4, 4}, {4, -2}, {{3, 3}, {3, -1}}},    // vertical middle: type III with the first
            {{8, 0}, {10, 2}, {}},                   // two straight edges: type I
            {{8, 2}, {10, 0}, {}},
            {{12, 0}, {17, 0}, {{13, 1}, {16, 1}}},  // crossed by a straight vertical: type II
            {{14, -1}, {14, 3}, {}},
        };
        const std::size_t take = edges >= 6 ? gadget.size() : (edges >= 2 ? 2 : 0);
        for (std::size_t i = 0; i < take; ++i) {
            const auto& p = gadget[i];
            const auto u = add_vertex(p.u);
            const auto v = add_vertex(p.v);
            if (!u || !v || !detail::try_add_edge(d, crossings, *u, *v, p.bends, 2))
                throw std::logic_error("RAC2 gadget rejected");
        }
    }
    static const std::array<Point, 8> dirs{Point{1, 0}, Point{1, 1}, Point{0, 1}, Point{-1, 1},
                                           Point{-1, 0}, Point{-1, -1}, Point{0, -1}, Point{1, -1}};
    std::uniform_int_distribution<int> coord(-6, 22);
    std::uniform_int_distribution<int> len(1, 6);
    std::uniform_int_distribution<int> pick(0, 7);
    int attempts = 0;
    while (static_cast<int>(d.edge_count()) < edges) {
        if (++attempts > 4000 + 200 * edges) throw GenerationFailed("random RAC2 fixture (seed " + std::to_string(seed) + ")");
        const int pieces = 1 + static_cast<int>(rng() % 3);
        const int x0 = coord(rng);
        const int y0 = coord(rng);
        std::vector<Point> pts{{x0, y0}};
        int prev = -1;
        for (int i = 0; i < pieces; ++i) {
            int dir = pick(rng);
            if (prev >= 0 && (dir % 4) == (prev % 4)) dir = (dir + 2) % 8;  // never straight on or back
            pts.push_back(pts.back() + Scalar(len(rng)) * dirs[dir]);
            prev = dir;
        }
        const std::vector<Point> bends(pts.begin() + 1, pts.end() - 1);
        const auto u = add_vertex(pts.front());
        if (!u) continue;
        if (pts.back() == pts.front()) {
            d.remove_last_vertex();
            continue;
        }
        const auto v = add_vertex(pts.back());
        if (!v || !detail::try_add_edge(d, crossings, *u, *v, bends, 2)) {
            if (v) d.remove_last_vertex();
            d.remove_last_vertex();
        }
    }
    return d;
}

}  // namespace racdraw
