#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace racdraw;

namespace {

Drawing straight_through_middle() {
    Drawing d;
    d.add_vertex("a", {0, 0});
    d.add_vertex("b", {6, 0});
    d.add_vertex("c", {3, -1});
    d.add_vertex("e", {3, 4});
    d.add_edge("a", "b", {{1, 2}, {5, 2}});
    d.add_edge("c", "e");
    return d;
}

Drawing single_middle_pair() {
    Drawing d;
    d.add_vertex("a", {0, 0});
    d.add_vertex("b", {6, 0});
    d.add_vertex("c", {4, 4});
    d.add_vertex("e", {4, -2});
    d.add_edge("a", "b", {{1, 1}, {5, 1}});
    d.add_edge("c", "e", {{3, 3}, {3, -1}});
    return d;
}

SimpleGraph path4() { return {4, {{0, 1}, {1, 2}, {2, 3}}}; }
SimpleGraph k4() { return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}}; }

double closed_form_c(double d) {
    // d ln2 <= sqrt(c) (2 ln(9/5) ln2 - ln^2(9/5)) at the binding n = 2
    const long double k = std::log(9.0L / 5.0L);
    const long double l2 = std::log(2.0L);
    const long double root = d * l2 / (2 * k * l2 - k * k);
    return static_cast<double>(root * root);
}

}  // namespace

TEST(SegmentRoles, OnlyTheMiddleOfThreePiecesIsMiddle) {
    EXPECT_EQ(segment_role(PolyEdge{0, 1, {}}, 0), SegmentRole::End);
    const PolyEdge one{0, 1, {{1, 1}}};
    EXPECT_EQ(segment_role(one, 0), SegmentRole::End);
    EXPECT_EQ(segment_role(one, 1), SegmentRole::End);
    const PolyEdge two{0, 1, {{1, 1}, {2, 1}}};
    EXPECT_EQ(segment_role(two, 1), SegmentRole::Middle);
    EXPECT_EQ(segment_endpoints(PolyEdge{0, 1, {}}, 0), (std::vector<VertexId>{0, 1}));
    EXPECT_TRUE(segment_endpoints(two, 1).empty());
}

TEST(ClassifyCrossings, StraightPairIsTypeI) {
    const auto rec = classify_crossings(fixtures::plus_sign());
    ASSERT_EQ(rec.size(), 1u);
    EXPECT_EQ(rec[0].kind, CrossingType::I);
}

TEST(ClassifyCrossings, MiddleCrossedByStraightIsTypeII) {
    const auto rec = classify_crossings(straight_through_middle());
    ASSERT_EQ(rec.size(), 1u);
    EXPECT_EQ(rec[0].kind, CrossingType::II);
    EXPECT_EQ(rec[0].role_a, SegmentRole::Middle);
}

TEST(ClassifyCrossings, MiddlePairIsTypeIII) {
    const auto rec = classify_crossings(single_middle_pair());
    ASSERT_EQ(rec.size(), 1u);
    EXPECT_EQ(rec[0].kind, CrossingType::III);
    EXPECT_EQ(rec[0].point, (Point{3, 1}));
}

TEST(ClassifyCrossings, ThrowsOnInvalidDrawing) {
    Drawing d;
    d.add_vertex("a", {0, 0});
    d.add_vertex("b", {4, 0});
    d.add_edge("a", "b", {{1, 1}, {2, 0}, {3, 1}});  // three bends
    EXPECT_THROW(classify_crossings(d), InvalidDrawing);
}

TEST(ConflictGraph, NoMiddlesNoLinks) {
    const auto g = conflict_graph(fixtures::k4());
    EXPECT_TRUE(g.links.empty());
    EXPECT_TRUE(g.bipartite());
    EXPECT_TRUE(destroy_type3(fixtures::k4()).empty());
}

TEST(ConflictGraph, SinglePair) {
    const auto g = conflict_graph(single_middle_pair());
    ASSERT_EQ(g.links.size(), 1u);
    EXPECT_TRUE(g.bipartite());
    EXPECT_EQ(destroy_type3(single_middle_pair()).size(), 1u);
}

TEST(ConflictGraph, MiddleGridSplitsByDirection) {
    const Drawing d = fixtures::middle_grid();
    const auto rec = classify_crossings(d);
    EXPECT_EQ(rec.size(), 24u);
    for (const auto& r : rec) EXPECT_EQ(r.kind, CrossingType::III);
    const auto g = conflict_graph(d);
    ASSERT_TRUE(g.bipartite());
    EXPECT_EQ(g.links.size(), 24u);
    for (EdgeId e = 1; e < 4; ++e) EXPECT_EQ((*g.side)[e], (*g.side)[0]);
    for (EdgeId e = 4; e < 10; ++e) EXPECT_NE((*g.side)[e], (*g.side)[0]);
    EXPECT_EQ(destroy_type3(d), (std::set<EdgeId>{0, 1, 2, 3}));
}

TEST(CrUpperBound, Arithmetic) {
    EXPECT_EQ(cr_upper_bound(3, 3), 24u);
    EXPECT_EQ(cr_upper_bound(0, 0), 0u);
    EXPECT_EQ(cr_upper_bound(10, 20), 490u);
}

TEST(BisectionUpper, Examples) {
    std::vector<std::size_t> zeros(5, 0);
    EXPECT_EQ(bisection_upper(zeros, 0), 0);
    std::vector<std::size_t> five{5};
    EXPECT_LT(abs(bisection_upper(five, 0) - Real("7.9")), Real("1e-40"));
    const auto p4 = path4().degrees();
    const Real b = bisection_upper(p4, 0);
    EXPECT_LT(abs(b - Real("1.58") * sqrt(Real(10))), Real("1e-40"));
    EXPECT_GE(b, Real(bisection_exact(path4())));
}

TEST(BisectionExact, SmallGraphs) {
    EXPECT_EQ(bisection_exact(path4()), 1u);
    EXPECT_EQ(bisection_exact(k4()), 4u);
    EXPECT_EQ(bisection_exact(SimpleGraph{6, {}}), 0u);
    EXPECT_EQ(bisection_exact(SimpleGraph{1, {}}), 0u);
    EXPECT_THROW(bisection_exact(SimpleGraph{17, {}}), TooLarge);
}

TEST(BisectionExact, AgreesWithRecursiveEnumeration) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 60; ++i) {
        SimpleGraph g{2 + rng() % 9, {}};
        for (std::size_t a = 0; a < g.n; ++a)
            for (std::size_t b = a + 1; b < g.n; ++b)
                if (rng() % 3 == 0) g.edges.emplace_back(a, b);
        EXPECT_EQ(bisection_exact(g), oracle::min_balanced_cut(g.n, g.edges));
    }
}

TEST(Lemma1Property, PerPairAndPerEdgeVertexCounts) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const Drawing d = gen_rac2_fixture(s, 6 + s % 20);
        const auto rec = classify_crossings(d);
        const auto c = count_by_type(rec);
        EXPECT_EQ(c.total(), validate(d, 2).crossings.size());
        const auto n = d.vertex_count();
        EXPECT_LE(c.type1, n * (n - 1));
        for (const auto& [pair, k] : type1_pair_counts(d, rec)) EXPECT_LE(k, 2);
        for (const auto& [key, k] : type2_edge_vertex_counts(d, rec)) EXPECT_LE(k, 1);
        const auto drop = destroy_type3(d);
        EXPECT_LE(drop.size(), d.edge_count() / 2);
        EXPECT_EQ(count_by_type(classify_crossings(d.without_edges(drop))).type3, 0u);
    }
}

TEST(RecursionConstant, PinnedForUnitD) {
    const auto a = recursion_constant(1.0);
    EXPECT_EQ(format_real(a.c, 10), "2.180988");
    EXPECT_NEAR(static_cast<double>(a.c_exact), closed_form_c(1.0), 1e-12);
    EXPECT_NEAR(static_cast<double>(a.c_exact), 2.18098787605986, 1e-13);
    EXPECT_EQ(a.binding_n, 2u);
    EXPECT_LT(a.ratio_n4, a.ratio_n2);
    EXPECT_TRUE(a.closing_holds);
    EXPECT_TRUE(a.previous_grid_value_fails);
    EXPECT_TRUE(a.quadratic_step_holds);
    EXPECT_TRUE(a.split_step_holds);
    EXPECT_EQ(a.swept, 999999u + 21u);  // 2..10^6 and 2^20..2^40
    EXPECT_GE(a.min_margin, 0);
}

TEST(RecursionConstant, ScalesWithDSquared) {
    const auto small = recursion_constant(1e-3, 10000, 40, 64);
    EXPECT_NEAR(static_cast<double>(small.c_exact), closed_form_c(1e-3), 1e-18);
    EXPECT_LT(small.c, Real("1e-5"));
    EXPECT_GT(small.c, 0);
    EXPECT_THROW(recursion_constant(0.0), std::invalid_argument);
}

TEST(JensenCheck, HalfIsExact) {
    EXPECT_TRUE(jensen_check(Real(1) / 2, 9));
    const auto t = jensen_terms(Real(1) / 2, 9);
    EXPECT_LT(abs(t.weighted - t.middle), Real("1e-40"));
    EXPECT_LE(t.middle, t.outer);
}

TEST(JensenCheck, OneThirdMakesTheOuterStepTight) {
    const auto t = jensen_terms(Real(1) / 3, 100);
    EXPECT_LT(abs(t.middle - t.outer), Real("1e-40"));
    EXPECT_TRUE(jensen_check(Real(1) / 3, 100));
}

TEST(JensenCheck, ConcavityStepNeedsNAtLeastSix) {
    // direct evaluation: ln^2 is not concave on the small arguments involved
    EXPECT_FALSE(jensen_check(Real(2) / 3, 2));
    for (std::uint64_t n = 2; n <= 5; ++n) EXPECT_FALSE(jensen_check(Real(2) / 5, n)) << n;
    for (std::uint64_t n = 6; n <= 200; ++n) {
        for (int i = 0; i <= 20; ++i) {
            const Real a = Real(1) / 3 + Real(i) / 60;
            EXPECT_TRUE(jensen_check(a, n)) << n << " " << i;
        }
    }
    EXPECT_THROW(jensen_check(Real("0.2"), 10), std::invalid_argument);
}

TEST(BoundsReport, CountsOnly) {
    const auto r = bounds_for_counts(10, 20);
    EXPECT_EQ(r.cr_upper, 490u);
    const auto text = format_bounds(r);
    EXPECT_NE(text.find("cr_upper=490\n"), std::string::npos);
    EXPECT_NE(text.find("# log=natural"), std::string::npos);
    EXPECT_EQ(text.find("cI="), std::string::npos);
}

TEST(BoundsReport, DrawingMeasuresTypes) {
    const Drawing d = gen_rac2_fixture(3, 12);
    const auto r = bounds_for_drawing(d);
    const auto c = count_by_type(classify_crossings(d));
    ASSERT_TRUE(r.crossings);
    EXPECT_EQ(r.crossings->type1, c.type1);
    EXPECT_EQ(r.crossings->type2, c.type2);
    EXPECT_EQ(r.crossings->type3, c.type3);
    EXPECT_GE(c.type3, 1u);
    EXPECT_EQ(r.cr_upper, cr_upper_bound(d.vertex_count(), d.edge_count() - destroy_type3(d).size()));
    const auto text = format_bounds(r);
    for (const char* key : {"n=", "m=", "cI=", "cII=", "cIII=", "cr_upper=", "bisection_upper="})
        EXPECT_NE(text.find(std::string("\n") + key), std::string::npos) << key;
}
