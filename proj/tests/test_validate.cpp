#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace racdraw;

namespace {

std::multiset<std::string> codes(const ValidationReport& r) {
    std::multiset<std::string> out;
    for (const auto& v : r.violations) out.insert(std::string(to_string(v.code)));
    return out;
}

bool has(const ValidationReport& r, ViolationCode c) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.code == c; });
}

Drawing two_edges(Point a, Point b, std::vector<Point> ab, Point c, Point e, std::vector<Point> ce = {}) {
    Drawing d;
    d.add_vertex("a", a);
    d.add_vertex("b", b);
    d.add_vertex("c", c);
    d.add_vertex("e", e);
    d.add_edge("a", "b", std::move(ab));
    d.add_edge("c", "e", std::move(ce));
    return d;
}

Drawing sixty_degree_plus() {
    // (1 -/+ 1/2, -/+ sqrt3/2) meets the x axis at 60 degrees
    const Scalar half = Scalar::frac(1, 2);
    const Scalar h(Rational(0), Rational(1, 2));
    return two_edges({0, 0}, {2, 0}, {}, {Scalar(1) - half, Scalar(0) - h}, {Scalar(1) + half, h});
}

}  // namespace

TEST(Validate, PlusSignIsClassZero) {
    const auto r = validate(fixtures::plus_sign(), 0);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.witnessed_class, 0);
    EXPECT_EQ(r.crossings.size(), 1u);
}

TEST(Validate, SixtyDegreeCrossingRejected) {
    const auto r = validate(sixty_degree_plus(), 0);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(codes(r), (std::multiset<std::string>{"NON_PERPENDICULAR_CROSSING"}));
    ASSERT_TRUE(r.violations.front().where);
    EXPECT_EQ(*r.violations.front().where, (Point{1, 0}));
}

TEST(Validate, SingleHexagonIsClassOne) {
    const auto r = validate(gen_hex_lattice({1, Scalar(1)}), 1);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.witnessed_class, 1);
    EXPECT_FALSE(validate(gen_hex_lattice({1, Scalar(1)}), 0).ok);
}

TEST(Validate, TooManyBends) {
    const auto r = validate(two_edges({0, 0}, {4, 0}, {{1, 1}, {3, 1}}, {10, 0}, {11, 0}), 1);
    EXPECT_EQ(codes(r), (std::multiset<std::string>{"TOO_MANY_BENDS"}));
}

TEST(Validate, CrossingAtBend) {
    // second edge passes straight through the bend of the first
    const auto r = validate(two_edges({0, 0}, {2, 0}, {{1, 1}}, {1, -1}, {1, 3}), 1);
    EXPECT_TRUE(has(r, ViolationCode::CrossingAtBend));
}

TEST(Validate, TangentBendTouchIsRejected) {
    // the bend of the first edge touches the second edge from below
    const auto r = validate(two_edges({0, 0}, {2, 0}, {{1, 1}}, {-1, 1}, {3, 1}), 1);
    EXPECT_TRUE(has(r, ViolationCode::CrossingAtBend));
}

TEST(Validate, OverlapRejected) {
    const auto r = validate(two_edges({0, 0}, {2, 0}, {}, {1, 0}, {3, 0}), 0);
    EXPECT_TRUE(has(r, ViolationCode::OverlappingEdges));
}

TEST(Validate, EdgeThroughVertex) {
    Drawing d;
    d.add_vertex("a", {0, 0});
    d.add_vertex("b", {2, 0});
    d.add_vertex("m", {1, 0});
    d.add_edge("a", "b");
    const auto r = validate(d, 0);
    EXPECT_EQ(codes(r), (std::multiset<std::string>{"EDGE_THROUGH_VERTEX"}));
    EXPECT_EQ(r.violations.front().vertex, 2u);
}

TEST(Validate, EndpointOnAnotherEdge) {
    const auto r = validate(two_edges({0, 0}, {2, 0}, {}, {1, 0}, {1, 2}), 0);
    EXPECT_TRUE(has(r, ViolationCode::CrossingAtEndpoint));
    EXPECT_TRUE(has(r, ViolationCode::EdgeThroughVertex));
}

TEST(Validate, SelfIntersection) {
    Drawing d;
    d.add_vertex("a", {0, 0});
    d.add_vertex("b", {2, 2});
    d.add_edge("a", "b", {{2, 0}, {1, -1}, {1, 3}});
    EXPECT_TRUE(has(validate(d, 3), ViolationCode::SelfIntersection));
}

TEST(Validate, TriplePointRejected) {
    Drawing d;
    d.add_vertex("a", {-2, 0});
    d.add_vertex("b", {2, 0});
    d.add_vertex("c", {0, -2});
    d.add_vertex("e", {0, 2});
    d.add_vertex("f", {-2, -2});
    d.add_vertex("g", {2, 2});
    d.add_edge("a", "b");
    d.add_edge("c", "e");
    d.add_edge("f", "g");
    const auto r = validate(d, 0);
    EXPECT_TRUE(has(r, ViolationCode::TriplePoint));
}

TEST(Validate, RequireValidThrows) {
    EXPECT_THROW(require_valid(sixty_degree_plus(), 0), InvalidDrawing);
    try {
        require_valid(sixty_degree_plus(), 0);
    } catch (const InvalidDrawing& e) {
        EXPECT_EQ(std::string(e.what()).rfind("INVALID_DRAWING", 0), 0u);
    }
}

TEST(CrossingFreeEdges, PlaneTriangleKeepsEverything) {
    EXPECT_EQ(crossing_free_edges(fixtures::plane_triangle()), (std::set<EdgeId>{0, 1, 2}));
}

TEST(CrossingFreeEdges, PlusSignKeepsNothing) { EXPECT_TRUE(crossing_free_edges(fixtures::plus_sign()).empty()); }

TEST(CrossingFreeEdges, HexagonCellKeepsItsSides) {
    const Drawing d = gen_hex_lattice({1, Scalar(1)});
    std::set<EdgeId> sides;
    for (EdgeId e = 0; e < d.edge_count(); ++e)
        if (d.edge(e).bends.empty()) sides.insert(e);
    EXPECT_EQ(sides.size(), 6u);
    EXPECT_EQ(crossing_free_edges(d), sides);
    // every diagonal is crossed according to the brute-force oracle
    std::set<EdgeId> crossed;
    for (const auto& h : oracle::brute_crossings(d)) {
        crossed.insert(h.a);
        crossed.insert(h.b);
    }
    for (EdgeId e = 0; e < d.edge_count(); ++e) EXPECT_EQ(crossed.contains(e), !sides.contains(e));
}

TEST(CrossingFreeEdges, InvalidInputThrows) { EXPECT_THROW(crossing_free_edges(sixty_degree_plus()), InvalidDrawing); }

TEST(ValidateProperty, EdgeOrderDoesNotMatter) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Drawing d = gen_rac2_fixture(seed, 14);
        std::vector<EdgeId> order(d.edge_count());
        std::iota(order.begin(), order.end(), 0);
        std::mt19937_64 rng(seed);
        std::shuffle(order.begin(), order.end(), rng);
        const Drawing p = d.with_edges(order);
        const auto a = validate(d, 2), b = validate(p, 2);
        EXPECT_EQ(a.ok, b.ok);
        EXPECT_EQ(codes(a), codes(b));
        EXPECT_EQ(a.crossings.size(), b.crossings.size());
    }
    // and on an invalid drawing
    Drawing bad = sixty_degree_plus();
    EXPECT_EQ(codes(validate(bad, 0)), codes(validate(bad.with_edges({1, 0}), 0)));
}

TEST(ValidateProperty, RemovingAnEdgeKeepsValidity) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Drawing d = gen_rac2_fixture(seed, 10);
        ASSERT_TRUE(validate(d, 2).ok);
        for (EdgeId e = 0; e < d.edge_count(); ++e) EXPECT_TRUE(validate(d.without_edges({e}), 2).ok);
    }
    const Drawing h = gen_hex_lattice({2, Scalar(1)});
    for (EdgeId e = 0; e < h.edge_count(); e += 5) EXPECT_TRUE(validate(h.without_edges({e}), 1).ok);
}

TEST(ValidateProperty, CrossingsMatchBruteForce) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Drawing d = gen_rac2_fixture(seed, 16);
        EXPECT_EQ(oracle::as_hits(validate(d, 2).crossings), oracle::brute_crossings(d));
    }
}
