#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "systolic/generators.hpp"
#include "systolic/layers.hpp"

using namespace systolic;

TEST(Layers, EqualSphereIntersections) {
    std::mt19937_64 rng(6);
    const FlagComplex x = genDiscWithDegrees(rng, 4, 0.3);
    const Metric m(x);
    const oracle::Graph g = oracle::graphOf(x);
    std::uniform_int_distribution<std::size_t> pick(0, x.vertexCount() - 1);
    for (int trial = 0; trial < 30; ++trial) {
        const VertexId a = x.vertices()[pick(rng)], b = x.vertices()[pick(rng)];
        const LayerDecomposition dec = layers(m, VertexSet{a}, VertexSet{b});
        const auto fa = oracle::bfs(g, {a}), fb = oracle::bfs(g, {b});
        const int n = fa.at(b);
        ASSERT_EQ(dec.n, n);
        for (int i = 0; i <= n; ++i) {
            VertexSet expected;
            for (auto [v, d] : fa)
                if (d == i && fb.at(v) == n - i) expected.push_back(v);
            EXPECT_EQ(dec.layers[static_cast<std::size_t>(i)], expected);
        }
        const auto idx = layerIndex(m, dec);
        for (VertexId v : x.vertices()) {
            const int k = idx[x.index(v)];
            if (k >= 0) EXPECT_EQ(fa.at(v) + fb.at(v), n);
        }
        EXPECT_TRUE(verifyLayerLemmas(m, dec).ok());
    }
}

TEST(Layers, LemmasHoldWithTwinsAndTwoLayerUnions) {
    std::mt19937_64 rng(12);
    const FlagComplex x = addRandomTwins(rng, genDiscWithDegrees(rng, 4, 0.25), 0.4);
    const Metric m(x);
    LayerLemmaOptions opt;
    opt.twoLayerUnion = true;
    for (VertexId a : {x.vertices().front(), x.vertices()[5]}) {
        const LayerDecomposition dec = layers(m, VertexSet{a}, VertexSet{x.vertices().back()});
        const CheckReport rep = verifyLayerLemmas(m, dec, opt);
        EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
        EXPECT_GT(rep.checks, 0u);
    }
}

TEST(Trapezoid, FoundInIsolatedTrapezoid) {
    // p1 r s1, p1 r p2, p2 r s2 with no further edges.
    const std::vector<FlagComplex::Edge> e{{0, 1}, {0, 3}, {1, 3}, {0, 2}, {1, 2}, {2, 4}, {1, 4}};
    const auto t = findTrapezoid(FlagComplex::fromEdges(e));
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(t->r, 1u);
}

TEST(Thickness, ProfileOfFlatPair) {
    const FlagComplex x = genHexagon(4);
    const Metric m(x);
    // Corner to a vertex with two thick intervals.
    const SimplexSequence fwd = directedGeodesic(m, Simplex::vertex(0), VertexSet{42});
    const SimplexSequence bwd = directedGeodesic(m, Simplex::vertex(42), VertexSet{0}).reversed();
    const ThicknessProfile p = thicknessProfile(m, fwd, bwd);
    EXPECT_EQ(p.thickness, (std::vector<int>{0, 1, 1, 2, 1, 2, 1, 1, 0}));
    EXPECT_EQ(p.thickIntervals, (std::vector<std::pair<int, int>>{{2, 4}, {4, 6}}));
    EXPECT_TRUE(p.openRuns.empty());
    EXPECT_TRUE(verifyProfileLemmas(m, p).ok());
}

TEST(Thickness, MismatchedSequencesRejected) {
    const FlagComplex x = genHexagon(3);
    const Metric m(x);
    const SimplexSequence a = directedGeodesic(m, Simplex::vertex(0), VertexSet{20});
    SimplexSequence shorter = a;
    shorter.simplices.pop_back();
    EXPECT_THROW(thicknessProfile(m, a, shorter), std::invalid_argument);
}
