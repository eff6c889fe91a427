#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "systolic/generators.hpp"
#include "systolic/metric.hpp"

using namespace systolic;

namespace {

std::vector<FlagComplex> samples() {
    std::mt19937_64 rng(21);
    std::vector<FlagComplex> out;
    out.push_back(genHexagon(3));
    out.push_back(genParallelogram(5, 4));
    out.push_back(genDiscWithDegrees(rng, 4, 0.3));
    out.push_back(addRandomTwins(rng, genDiscWithDegrees(rng, 4, 0.2), 0.4));
    return out;
}

// Number of geodesics u -> v by dynamic programming over distance levels.
std::size_t countGeodesics(const oracle::Graph& g, VertexId u, VertexId v) {
    const auto du = oracle::bfs(g, {u});
    std::map<VertexId, std::size_t> ways{{u, 1}};
    std::vector<std::pair<int, VertexId>> order;
    for (auto [w, d] : du) order.emplace_back(d, w);
    std::sort(order.begin(), order.end());
    for (auto [d, w] : order)
        for (VertexId z : g.at(w))
            if (du.at(z) == d + 1) ways[z] += ways[w];
    return ways[v];
}

}  // namespace

TEST(Metric, DistancesMatchBfsOracle) {
    for (const FlagComplex& x : samples()) {
        const Metric m(x);
        const auto all = oracle::allPairs(oracle::graphOf(x));
        for (const auto& [a, row] : all)
            for (const auto& [b, d] : row) ASSERT_EQ(m.dist(a, b), d) << a << " " << b;
    }
}

TEST(Metric, SetDistancesBallsAndSpheres) {
    const FlagComplex x = genHexagon(3);
    const Metric m(x);
    const oracle::Graph g = oracle::graphOf(x);
    const VertexSet a{0, 1}, b{30, 31};
    const auto fromA = oracle::bfs(g, {0, 1});
    int expected = 1 << 20;
    for (VertexId v : b) expected = std::min(expected, fromA.at(v));
    EXPECT_EQ(m.dist(a, b), expected);
    for (int r = 0; r <= 4; ++r) {
        VertexSet ball, sphere;
        for (auto [v, d] : fromA) {
            if (d <= r) ball.push_back(v);
            if (d == r) sphere.push_back(v);
        }
        EXPECT_EQ(m.ball(a, r), ball);
        EXPECT_EQ(m.sphere(a, r), sphere);
        EXPECT_TRUE(m.isConvex(m.ball(a, r)));
    }
}

TEST(Projection, CommonNeighboursInsideTheBall) {
    std::mt19937_64 rng(4);
    for (const FlagComplex& x : samples()) {
        const Metric m(x);
        const oracle::Graph g = oracle::graphOf(x);
        std::uniform_int_distribution<std::size_t> pick(0, x.vertexCount() - 1);
        for (int trial = 0; trial < 60; ++trial) {
            const VertexId w = x.vertices()[pick(rng)], u = x.vertices()[pick(rng)];
            const int r = m.dist(u, w) - 1;
            if (r < 0) continue;
            VertexSet sigma{u};
            for (VertexId z : g.at(u))
                if (m.dist(z, w) == r + 1 && oracle::isClique(g, setUnion(sigma, VertexSet{z})))
                    sigma = setUnion(sigma, VertexSet{z});
            const VertexSet ball = m.ball(VertexSet{w}, r);
            const Simplex p = projection(m, Simplex(sigma), ball);
            VertexSet expected;
            for (VertexId z : ball) {
                bool all = true;
                for (VertexId s : sigma) all = all && g.at(s).count(z);
                if (all) expected.push_back(z);
            }
            EXPECT_EQ(p.vertices(), expected);
            EXPECT_FALSE(p.empty());
            EXPECT_TRUE(oracle::isClique(g, p.vertices()));
            // Antitone: a face projects to a superset.
            EXPECT_TRUE(isSubset(p.vertices(), projection(m, Simplex::vertex(u), ball).vertices()));
        }
    }
}

TEST(Projection, RejectsSimplexOutsideSphere) {
    const FlagComplex x = genHexagon(2);
    const Metric m(x);
    EXPECT_THROW(projection(m, Simplex::vertex(0), m.ball(VertexSet{0}, 1)), std::invalid_argument);
}

TEST(DirectedGeodesic, LengthAndSpans) {
    std::mt19937_64 rng(9);
    for (const FlagComplex& x : samples()) {
        const Metric m(x);
        const oracle::Graph g = oracle::graphOf(x);
        std::uniform_int_distribution<std::size_t> pick(0, x.vertexCount() - 1);
        for (int trial = 0; trial < 40; ++trial) {
            const VertexId a = x.vertices()[pick(rng)], w = x.vertices()[pick(rng)];
            const int n = m.dist(a, w);
            const SimplexSequence s = directedGeodesic(m, Simplex::vertex(a), VertexSet{w});
            ASSERT_EQ(static_cast<int>(s.size()), n + 1);
            for (int k = 0; k <= n; ++k) {
                for (VertexId v : s[static_cast<std::size_t>(k)]) EXPECT_EQ(m.dist(v, w), n - k);
                if (k < n)
                    EXPECT_TRUE(oracle::isClique(
                        g, setUnion(s[static_cast<std::size_t>(k)].vertices(), s[static_cast<std::size_t>(k + 1)].vertices())));
            }
        }
    }
}

TEST(Geodesics, EnumerationCountsAndOrder) {
    const FlagComplex x = genParallelogram(4, 3);
    const Metric m(x);
    const oracle::Graph g = oracle::graphOf(x);
    for (VertexId u : {0u, 3u, 7u})
        for (VertexId v : x.vertices()) {
            const auto all = allGeodesics(m, u, v);
            ASSERT_FALSE(all.truncated);
            EXPECT_EQ(all.paths.size(), countGeodesics(g, u, v));
            for (std::size_t i = 0; i < all.paths.size(); ++i) {
                EXPECT_TRUE(isGeodesic(m, all.paths[i].vertices));
                if (i > 0) EXPECT_LT(all.paths[i - 1].vertices, all.paths[i].vertices);
            }
        }
    const auto capped = allGeodesics(m, 0, x.vertices().back(), 2);
    EXPECT_TRUE(capped.truncated);
    EXPECT_EQ(capped.paths.size(), 2u);
}
