#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace racdraw;

TEST(HexLattice, SingleHexagon) {
    const Drawing d = gen_hex_lattice({1, Scalar(1)});
    EXPECT_EQ(d.vertex_count(), 6u);
    EXPECT_EQ(d.edge_count(), 12u);
    std::size_t bent = 0;
    for (const auto& e : d.edges()) bent += e.bend_count() == 1;
    EXPECT_EQ(bent, 6u);
    EXPECT_DOUBLE_EQ(static_cast<double>(d.edge_count()) / d.vertex_count(), 2.0);
    const auto r = validate(d, 1);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.crossings.size(), 6u);
}

TEST(HexLattice, ClosedFormsMatchEnumeration) {
    for (int rings = 1; rings <= 4; ++rings) {
        const auto count = oracle::enumerate_lattice(rings);
        const Drawing d = gen_hex_lattice({rings, Scalar(1)});
        EXPECT_EQ(count.hexagons, hex_lattice_hexagons(rings));
        EXPECT_EQ(count.vertices, hex_lattice_vertices(rings));
        EXPECT_EQ(count.sides + 6 * count.hexagons, hex_lattice_edges(rings));
        EXPECT_EQ(d.vertex_count(), hex_lattice_vertices(rings));
        EXPECT_EQ(d.edge_count(), hex_lattice_edges(rings));
        EXPECT_TRUE(validate(d, 1).ok) << rings;
    }
}

TEST(HexLattice, DensityIncreasesBelowFourAndAHalf) {
    double prev = 0;
    for (int rings = 1; rings <= 200; ++rings) {
        const double density = static_cast<double>(hex_lattice_edges(rings)) / hex_lattice_vertices(rings);
        EXPECT_GT(density, prev);
        EXPECT_LT(density, 4.5);
        prev = density;
    }
    // the deficit 4.5 n - m grows like sqrt(n)
    for (int rings : {10, 40, 160}) {
        const double n = hex_lattice_vertices(rings);
        const double deficit = 4.5 * n - hex_lattice_edges(rings);
        EXPECT_GT(deficit / std::sqrt(n), 8.0);
        EXPECT_LT(deficit / std::sqrt(n), 21.0 / std::sqrt(6.0));
    }
}

TEST(HexLattice, ScaledSidesStayValid) {
    for (const Scalar& side : {Scalar::frac(1, 2), Scalar(3), Scalar::sqrt3()}) {
        const Drawing d = gen_hex_lattice({2, side});
        EXPECT_TRUE(validate(d, 1).ok) << side;
    }
    EXPECT_THROW(gen_hex_lattice({0, Scalar(1)}), std::invalid_argument);
    EXPECT_THROW(gen_hex_lattice({1, Scalar(0)}), std::invalid_argument);
}

TEST(HexLattice, CertifiedUpToThreeRings) {
    for (int rings = 1; rings <= 3; ++rings) {
        const auto r = audit_r1(gen_hex_lattice({rings, Scalar(1)}));
        EXPECT_EQ(r.verdict, Verdict::Certified) << r.reason;
        EXPECT_TRUE(r.bound_satisfied);
    }
}

TEST(Rac0Fixtures, Named) {
    const Drawing plus = gen_rac0_fixture(Rac0Kind::PlusSign);
    EXPECT_EQ(plus.vertex_count(), 4u);
    EXPECT_EQ(plus.edge_count(), 2u);
    EXPECT_EQ(validate(plus, 0).crossings.size(), 1u);
    const Drawing k4 = gen_rac0_fixture(Rac0Kind::K4);
    EXPECT_EQ(k4.vertex_count(), 4u);
    EXPECT_EQ(k4.edge_count(), 6u);
    EXPECT_EQ(validate(k4, 0).crossings.size(), 1u);
    EXPECT_TRUE(validate(gen_rac0_fixture(Rac0Kind::GridCrossing), 0).ok);
}

TEST(Rac0Fixtures, RandomIsDeterministicAndValid) {
    EXPECT_EQ(gen_rac0_fixture(Rac0Kind::Random, 7, 20), gen_rac0_fixture(Rac0Kind::Random, 7, 20));
    EXPECT_FALSE(gen_rac0_fixture(Rac0Kind::Random, 7, 20) == gen_rac0_fixture(Rac0Kind::Random, 8, 20));
    for (std::uint64_t s = 0; s < 40; ++s) {
        const Drawing d = gen_rac0_fixture(Rac0Kind::Random, s, 20);
        EXPECT_EQ(d.vertex_count(), 20u);
        EXPECT_TRUE(validate(d, 0).ok);
    }
}

TEST(Rac1Fixtures, ValidAtClassOne) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const Drawing d = gen_rac1_fixture(s);
        EXPECT_TRUE(validate(d, 1).ok);
        EXPECT_EQ(d, gen_rac1_fixture(s));
    }
}

TEST(Rac2Fixtures, TwoEdgesCrossMiddleToMiddle) {
    const auto rec = classify_crossings(gen_rac2_fixture(0, 2));
    ASSERT_EQ(rec.size(), 1u);
    EXPECT_EQ(rec[0].kind, CrossingType::III);
}

TEST(Rac2Fixtures, OneEdgeHasNoCrossings) {
    const Drawing d = gen_rac2_fixture(5, 1);
    EXPECT_EQ(d.edge_count(), 1u);
    EXPECT_TRUE(validate(d, 2).crossings.empty());
}

TEST(Rac2Fixtures, EveryTypeFromSixEdgesAndDeterministic) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const Drawing d = gen_rac2_fixture(s, 6 + s);
        EXPECT_EQ(d.edge_count(), 6 + s);
        EXPECT_TRUE(validate(d, 2).ok);
        const auto c = count_by_type(classify_crossings(d));
        EXPECT_GE(c.type1, 1u);
        EXPECT_GE(c.type2, 1u);
        EXPECT_GE(c.type3, 1u);
    }
    EXPECT_EQ(gen_rac2_fixture(11, 20), gen_rac2_fixture(11, 20));
    EXPECT_THROW(gen_rac2_fixture(0, 0), std::invalid_argument);
}
