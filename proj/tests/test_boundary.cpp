#include <gtest/gtest.h>
#include <json.hpp>

#include "oracles.hpp"
#include "systolic/boundary.hpp"
#include "systolic/generators.hpp"

using namespace systolic;

namespace {

FlagComplex star(int leaves) {
    std::vector<FlagComplex::Edge> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return FlagComplex::fromEdges(e);
}

FlagComplex pathGraph(int n) {
    std::vector<FlagComplex::Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return FlagComplex::fromEdges(e);
}

}  // namespace

TEST(Atlas, StarGraphCollapsesUnderLargeThreshold) {
    const FlagComplex x = star(5);
    const Metric m(x);
    const EucGeodesicCache cache(m);
    const BoundaryAtlas a = boundaryAtlas(cache, 0, 1);
    EXPECT_EQ(a.rays.size(), 5u);
    EXPECT_EQ(a.classCount(), 1u);
    EXPECT_FALSE(a.partial);
    AtlasOptions tight;
    tight.d = 1;
    const BoundaryAtlas b = boundaryAtlas(cache, 0, 1, tight);
    EXPECT_EQ(b.classCount(), 5u);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(b.representativeDistance[i][j], i == j ? 0 : 2);
}

TEST(Atlas, RadiusZeroIsOneClass) {
    const FlagComplex x = genHexagon(2);
    const Metric m(x);
    const EucGeodesicCache cache(m);
    const BoundaryAtlas a = boundaryAtlas(cache, 9, 0);
    EXPECT_EQ(a.rays.size(), 1u);
    EXPECT_EQ(a.classCount(), 1u);
}

TEST(Atlas, FlatDiscClassesAndJson) {
    const FlagComplex x = genHexagon(4);
    const Metric m(x);
    const EucGeodesicCache cache(m);
    const oracle::Graph g = oracle::graphOf(x);
    // Basepoint of smallest eccentricity.
    VertexId centre = 0;
    int best = 1 << 20;
    for (const auto& [v, nbrs] : g) {
        int ecc = 0;
        for (auto [w, k] : oracle::bfs(g, {v})) ecc = std::max(ecc, k);
        if (ecc < best) best = ecc, centre = v;
    }
    AtlasOptions opt;
    opt.d = 2;
    const BoundaryAtlas a = boundaryAtlas(cache, centre, 4, opt);
    // Neighbouring rays chain every direction into one closed class; the
    // raw relation is not transitive and the separated directions remain.
    EXPECT_EQ(a.classCount(), 1u);
    ASSERT_TRUE(a.transitivityViolations.has_value());
    EXPECT_GT(*a.transitivityViolations, 0u);
    EXPECT_GT(a.separated.size(), 1u);
    for (std::size_t i = 0; i < a.separated.size(); ++i)
        for (std::size_t k = i + 1; k < a.separated.size(); ++k)
            EXPECT_FALSE(raysEquivalentTruncated(m, a.rays[a.separated[i]], a.rays[a.separated[k]], opt.d).equivalentSoFar);
    // More directions separate at a larger radius or a smaller threshold.
    AtlasOptions loose;
    loose.d = 4;
    EXPECT_LT(boundaryAtlas(cache, centre, 4, loose).separated.size(), a.separated.size());
    EXPECT_LT(boundaryAtlas(cache, centre, 2, opt).separated.size(), a.separated.size());
    opt.d = 0;
    EXPECT_EQ(boundaryAtlas(cache, centre, 4, opt).classCount(), a.rays.size());
    opt.d = 2;
    // Each ray is a geodesic from the centre and shares a class with its
    // equivalent rays.
    for (std::size_t i = 0; i < a.rays.size(); ++i) {
        EXPECT_TRUE(isGeodesic(m, a.rays[i]));
        EXPECT_EQ(a.rays[i].front(), centre);
        for (std::size_t j = 0; j < a.rays.size(); ++j)
            if (raysEquivalentTruncated(m, a.rays[i], a.rays[j], opt.d).equivalentSoFar)
                EXPECT_EQ(a.classOf[i], a.classOf[j]);
    }
    const auto j = nlohmann::json::parse(a.json());
    EXPECT_EQ(j["classes"].size(), a.classCount());
    EXPECT_EQ(j["basepoint"], centre);
    EXPECT_EQ(a.text(), boundaryAtlas(cache, centre, 4, opt).text());

    // Neighbourhoods of rays far apart at N are disjoint.
    const int d = 1, r = 2, t = 2;
    std::size_t farPairs = 0;
    for (std::size_t i = 0; i < a.rays.size(); ++i)
        for (std::size_t k = 0; k < a.rays.size(); ++k) {
            if (m.dist(a.rays[i].back(), a.rays[k].back()) <= r + t + d + 2) continue;
            ++farPairs;
            for (const auto& z : a.rays)
                EXPECT_FALSE(inStandardNeighborhood(m, z, a.rays[i], 4, r, d) &&
                             inStandardNeighborhood(m, z, a.rays[k], 4, t, d));
        }
    EXPECT_GT(farPairs, 0u);
}

TEST(Rays, TruncatedEquivalenceAndNeighbourhoods) {
    const FlagComplex x = pathGraph(9);
    const Metric m(x);
    const std::vector<VertexId> right{4, 5, 6}, left{4, 3, 2};
    const RayComparison c = raysEquivalentTruncated(m, right, left, 1);
    EXPECT_FALSE(c.equivalentSoFar);
    ASSERT_TRUE(c.witness.has_value());
    EXPECT_EQ(*c.witness, 1);
    EXPECT_TRUE(raysEquivalentTruncated(m, right, left, 4).equivalentSoFar);
    EXPECT_TRUE(inStandardNeighborhood(m, right, right, 2, 2, 1));
    EXPECT_FALSE(inStandardNeighborhood(m, right, left, 2, 3, 1));  // distance 4 = R + 1
    EXPECT_TRUE(inStandardNeighborhood(m, right, left, 2, 4, 1));
    EXPECT_THROW(inStandardNeighborhood(m, right, left, 2, 1, 1), std::invalid_argument);
}

TEST(GoodGeodesic, MadeGeodesicsPassAndSubpathsStayGood) {
    std::mt19937_64 rng(7);
    const FlagComplex x = genDiscWithDegrees(rng, 4, 0.3);
    const Metric m(x);
    const EucGeodesicCache cache(m);
    std::uniform_int_distribution<std::size_t> pick(0, x.vertexCount() - 1);
    for (int trial = 0; trial < 15; ++trial) {
        const VertexId v = x.vertices()[pick(rng)], w = x.vertices()[pick(rng)];
        const GoodGeodesic g = makeGoodGeodesic(cache, v, w);
        EXPECT_TRUE(isGeodesic(m, g.path.vertices));
        EXPECT_LE(g.maxValue, kDefaultC + 1);
        const auto checked = isGoodGeodesic(cache, g.path.vertices);
        ASSERT_TRUE(checked.good.has_value());
        EXPECT_EQ(checked.good->certificate, g.certificate);
        const auto& p = g.path.vertices;
        if (p.size() > 2) {
            const std::vector<VertexId> sub(p.begin() + 1, p.end() - 1);
            EXPECT_TRUE(isGoodGeodesic(cache, sub).good.has_value());
        }
        // A bound one below the certified maximum is violated.
        const auto strict = isGoodGeodesic(cache, p, g.maxValue - 2);
        ASSERT_TRUE(strict.violation.has_value());
        EXPECT_EQ(strict.violation->value, g.maxValue);
    }
    const std::vector<VertexId> notGeodesic{x.vertices()[0], x.vertices()[0]};
    EXPECT_THROW(isGoodGeodesic(cache, notGeodesic), std::invalid_argument);
}

TEST(Contracting, ExcessesOnSmallDisc) {
    std::mt19937_64 rng(5);
    const FlagComplex x = genDiscWithDegrees(rng, 4, 0.3);
    const Metric m(x);
    const EucGeodesicCache cache(m);
    const auto cs = defaultCSamples();
    ASSERT_EQ(cs.size(), 9u);
    EXPECT_EQ(cs.front(), Rational(0));
    EXPECT_EQ(cs.back(), Rational(1));
    std::uniform_int_distribution<std::size_t> pick(0, x.vertexCount() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        const VertexId t = x.vertices()[pick(rng)], s = x.vertices()[pick(rng)], s2 = x.vertices()[pick(rng)];
        if (t == s || t == s2) continue;
        EXPECT_LE(contractingCheck(cache, t, s, s2).maxExcess, Rational(kDefaultC));
        const auto v = makeGoodGeodesic(cache, t, s).path.vertices;
        const auto w = makeGoodGeodesic(cache, t, s2).path.vertices;
        EXPECT_LE(divergenceExcess(m, v, w).maxExcess, Rational(contractionConstant(kDefaultC)));
        EXPECT_LE(prefixExcess(m, v, w), contractionConstant(kDefaultC));
        EXPECT_EQ(divergenceExcess(m, v, v).maxExcess, Rational(0));
        // Same endpoint: c|ss'| vanishes so the excess is the largest gap.
        EXPECT_GE(contractingCheck(cache, t, s, s).maxExcess, Rational(0));
    }
}
