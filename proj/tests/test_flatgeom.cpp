#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "systolic/flatgeom.hpp"
#include "systolic/generators.hpp"
#include "systolic/metric.hpp"

using namespace systolic;

namespace {

LatticePoint pt(int row, Rational x) { return LatticePoint{row, x}; }

std::vector<FlagComplex> flatDiscs(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<FlagComplex> out{genHexagon(2), genHexagon(5), genParallelogram(6, 3)};
    while (static_cast<int>(out.size()) < count) out.push_back(genRandomFlatRegion(rng, 3 + static_cast<int>(out.size() % 9), 6));
    return out;
}

GenCharDisc randomRegion(std::mt19937_64& rng, int rows) {
    GenCharDisc d;
    d.firstRow = 0;
    std::uniform_int_distribution<int> step(-2, 2), width(0, 5);
    int left2 = 0;
    for (int r = 0; r < rows; ++r) {
        left2 += step(rng);
        d.rows.emplace_back(Rational(left2, 2), Rational(left2, 2) + Rational(width(rng), 2));
    }
    return d;
}

}  // namespace

TEST(Lattice, DistanceMatchesAxialFormulaAndBfs) {
    // Explicit BFS over the lattice neighbourhood of the origin.
    std::map<LatticePoint, int> seen{{pt(0, 0), 0}};
    std::deque<LatticePoint> q{pt(0, 0)};
    const std::vector<std::pair<int, Rational>> steps{{0, 1}, {0, -1}, {1, kHalf}, {1, -kHalf}, {-1, kHalf}, {-1, -kHalf}};
    while (!q.empty()) {
        const LatticePoint p = q.front();
        q.pop_front();
        if (seen[p] == 6) continue;
        for (auto [dr, dx] : steps) {
            const LatticePoint n = pt(p.row + dr, p.x + dx);
            if (seen.emplace(n, seen[p] + 1).second) q.push_back(n);
        }
    }
    for (const auto& [p, d] : seen) {
        EXPECT_TRUE(isLatticeVertex(p));
        EXPECT_EQ(latticeDistance(pt(0, 0), p), d) << p.str();
        EXPECT_EQ(oracle::hexDistance(pt(0, 0), p), d) << p.str();
        EXPECT_EQ(latticeNeighbors(p).size(), 6u);
        for (int s = 0; s < 12; ++s) EXPECT_EQ(latticeDistance(pt(0, 0), latticeSymmetry(s, p)), d);
        EXPECT_EQ(toLatticePoint(toLatticeCoord(p)), p);
    }
    EXPECT_FALSE(isLatticeVertex(pt(1, 0)));
}

TEST(Disc, DefectSumMatchesOracle) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        FlagComplex x = i % 2 ? genDiscWithDegrees(rng, 2 + i % 3, 0.4) : genRandomFlatRegion(rng, 2 + i % 6, 4);
        const int expected = oracle::defectSum(x);
        const TriangulatedDisc d = TriangulatedDisc::fromComplex(std::move(x));
        EXPECT_EQ(gaussBonnetSum(d), expected);
        EXPECT_EQ(expected, 6);
    }
}

TEST(Disc, RejectsNonDiscs) {
    std::vector<FlagComplex::Edge> square{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    EXPECT_THROW(TriangulatedDisc::fromComplex(FlagComplex::fromEdges(square)), std::invalid_argument);
    // Annulus: a hexagon wheel without its centre.
    std::vector<FlagComplex::Edge> ring;
    for (VertexId i = 0; i < 6; ++i) ring.emplace_back(i, (i + 1) % 6);
    for (VertexId i = 0; i < 6; ++i) ring.emplace_back(i, 6 + i), ring.emplace_back(6 + i, 6 + (i + 1) % 6),
        ring.emplace_back((i + 1) % 6, 6 + i);
    EXPECT_THROW(TriangulatedDisc::fromComplex(FlagComplex::fromEdges(ring)), std::invalid_argument);
}

TEST(Disc, FlatnessCriterion) {
    EXPECT_TRUE(isFlat(TriangulatedDisc::fromComplex(genHexagon(3))));
    std::mt19937_64 rng(2);
    const FlagComplex bent = genDiscWithDegrees(rng, 3, 1.0);
    const FlatnessResult r = isFlat(TriangulatedDisc::fromComplex(bent));
    EXPECT_FALSE(r.ok);
    EXPECT_TRUE(r.witness.has_value());
}

TEST(Embedding, PreservesAllDistances) {
    for (const FlagComplex& x : flatDiscs(17, 12)) {
        const TriangulatedDisc d = TriangulatedDisc::fromComplex(x);
        if (!isFlat(d)) continue;
        const auto emb = embedFlatDisc(d);
        const auto all = oracle::allPairs(oracle::graphOf(x));
        for (const auto& [a, row] : all)
            for (const auto& [b, dist] : row) ASSERT_EQ(oracle::hexDistance(emb.at(a), emb.at(b)), dist);
    }
}

TEST(Embedding, ThrowsOnNonFlatDisc) {
    std::mt19937_64 rng(2);
    EXPECT_THROW(embedFlatDisc(TriangulatedDisc::fromComplex(genDiscWithDegrees(rng, 3, 1.0))), TheoryViolation);
}

TEST(Funnel, MatchesBreakpointBruteForce) {
    std::mt19937_64 rng(29);
    int compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const GenCharDisc d = randomRegion(rng, 2 + trial % 7);
        const auto& first = d.rows.front();
        const auto& last = d.rows.back();
        const LatticePoint p = pt(0, first.first + (first.second - first.first) * Rational(trial % 3, 2));
        const LatticePoint q = pt(d.lastRow(), last.first + (last.second - last.first) * Rational((trial / 3) % 3, 2));
        const PolyPath path = polygonGeodesic(d, p, q);
        const auto expected = oracle::funnelBruteForce(d, p, q);
        ASSERT_EQ(path.xs, expected) << trial;
        ++compared;
    }
    EXPECT_EQ(compared, 300);
}

TEST(Funnel, StraightLineInConvexRegion) {
    GenCharDisc d{0, {{0, 4}, {0, 4}, {0, 4}, {0, 4}}};
    const PolyPath path = polygonGeodesic(d, pt(0, 0), pt(3, 3));
    EXPECT_EQ(path.xs, (std::vector<Rational>{0, 1, 2, 3}));
    EXPECT_TRUE(path.bends.empty());
    EXPECT_THROW(polygonGeodesic(d, pt(0, 5), pt(3, 3)), std::invalid_argument);
    EXPECT_EQ(dClose(path, path), Rational(0));
    EXPECT_EQ(path.reversedRows().xs, (std::vector<Rational>{3, 2, 1, 0}));
}

TEST(Funnel, BendsAroundCorner) {
    GenCharDisc d{0, {{0, 4}, {0, 1}, {0, 4}}};
    const PolyPath path = polygonGeodesic(d, pt(0, 4), pt(2, 4));
    EXPECT_EQ(path.xs, (std::vector<Rational>{4, 1, 4}));
    EXPECT_EQ(path.bends, std::vector<int>{1});
}
