#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "systolic/complex.hpp"
#include "systolic/generators.hpp"

using namespace systolic;

namespace {

FlagComplex cycle(int n) {
    std::vector<FlagComplex::Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return FlagComplex::fromEdges(e);
}

FlagComplex randomGraph(std::mt19937_64& rng, int n, double p) {
    std::vector<FlagComplex::Edge> e;
    std::bernoulli_distribution coin(p);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coin(rng)) e.emplace_back(a, b);
    std::vector<VertexId> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    return FlagComplex::fromEdges(e, all);
}

}  // namespace

TEST(Parser, ReadsVerticesEdgesAndCoordinates) {
    const FlagComplex x = parseComplex("# a triangle\nv 0\nv 1\nv 2\nv 7\ne 0 1\ne 1 2\ne 2 0\ncoord 0 0 0\n");
    EXPECT_EQ(x.vertexCount(), 4u);
    EXPECT_EQ(x.edges().size(), 3u);
    EXPECT_TRUE(x.isClique(VertexSet{0, 1, 2}));
    EXPECT_FALSE(x.isConnected());
    ASSERT_TRUE(x.coord(0).has_value());
    EXPECT_FALSE(x.coord(1).has_value());
}

TEST(Parser, RoundTripsGeneratedComplexes) {
    std::mt19937_64 rng(5);
    const FlagComplex x = addRandomTwins(rng, genDiscWithDegrees(rng, 3, 0.3), 0.5);
    const FlagComplex y = parseComplex(serializeComplex(x));
    EXPECT_EQ(serializeComplex(y), serializeComplex(x));
    EXPECT_EQ(x.vertices(), y.vertices());
    EXPECT_EQ(x.edges(), y.edges());
}

TEST(Parser, RejectsMalformedInput) {
    EXPECT_THROW(parseComplex("e 0 0\n"), std::invalid_argument);
    EXPECT_THROW(parseComplex("q 1\n"), std::invalid_argument);
    EXPECT_THROW(parseComplex("e 0\n"), std::invalid_argument);
    EXPECT_THROW(parseComplex("v -3\n"), std::invalid_argument);
}

TEST(Cliques, MatchBruteForceSubsets) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const FlagComplex x = randomGraph(rng, 9, 0.5);
        const oracle::Graph g = oracle::graphOf(x);
        std::set<VertexSet> expected;
        for (unsigned mask = 1; mask < (1u << 9); ++mask) {
            VertexSet vs;
            for (VertexId v = 0; v < 9; ++v)
                if (mask & (1u << v)) vs.push_back(v);
            if (oracle::isClique(g, vs)) expected.insert(vs);
        }
        std::set<VertexSet> got;
        for (const Simplex& s : x.simplices()) got.insert(s.vertices());
        EXPECT_EQ(got, expected);
        for (const Simplex& s : x.maximalSimplices())
            EXPECT_TRUE(x.commonNeighbors(s.vertices()).empty()) << s.str();
    }
}

TEST(Largeness, InducedCyclesAgreeWithOracle) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const FlagComplex x = randomGraph(rng, 8, 0.35);
        const oracle::Graph g = oracle::graphOf(x);
        for (int k : {5, 6, 7}) {
            const bool large = static_cast<bool>(isKLarge(x, k));
            EXPECT_EQ(large, !oracle::hasInducedCycle(g, 4, k - 1)) << serializeComplex(x);
        }
        const auto witness = findInducedCycle(x, 4, 8);
        EXPECT_EQ(witness.has_value(), oracle::hasInducedCycle(g, 4, 8));
    }
}

TEST(Largeness, CyclesAndWheels) {
    EXPECT_FALSE(isKLarge(cycle(5), 6));
    EXPECT_TRUE(isKLarge(cycle(6), 6));
    EXPECT_FALSE(isKLarge(cycle(6), kInfinity));
    EXPECT_TRUE(isLocally6Large(genHexagon(2)));
    // Cone over a 5-cycle: the link of the apex is the 5-cycle.
    std::vector<FlagComplex::Edge> e;
    for (int i = 0; i < 5; ++i) e.emplace_back(i, (i + 1) % 5), e.emplace_back(i, 5);
    const auto r = isLocally6Large(FlagComplex::fromEdges(e));
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.simplex, Simplex::vertex(5));
    EXPECT_EQ(r.cycle.size(), 5u);
}

TEST(Twins, StaySystolicAndAddTetrahedra) {
    std::mt19937_64 rng(8);
    const FlagComplex base = genDiscWithDegrees(rng, 4, 0.2);
    const FlagComplex x = addRandomTwins(rng, base, 0.4);
    ASSERT_GT(x.vertexCount(), base.vertexCount());
    EXPECT_TRUE(isLocally6Large(x));
    EXPECT_FALSE(x.simplicesOfDimension(3).empty());
    const std::vector<VertexId> close{0, 1};
    EXPECT_THROW(addTwins(base, close), std::invalid_argument);
}

TEST(Link, OfVertexInHexagonIsHexagon) {
    const FlagComplex x = genHexagon(2);
    for (VertexId v : x.vertices()) {
        const FlagComplex l = link(x, Simplex::vertex(v));
        if (l.vertexCount() == 6 && l.edges().size() == 6) {
            EXPECT_TRUE(isKLarge(l, 6));
            return;
        }
    }
    FAIL() << "no interior vertex";
}
