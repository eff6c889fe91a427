#include <gtest/gtest.h>

#include "oracles.hpp"
#include "systolic/charsurf.hpp"
#include "systolic/eucgeo.hpp"
#include "systolic/generators.hpp"
#include "systolic/suites.hpp"

using namespace systolic;

namespace {

struct Instance {
    const Family* family;
    EndpointPair pair;
};

const std::vector<Family>& families() {
    static const std::vector<Family> f = suiteFamilies(1);
    return f;
}

std::vector<Instance> thickInstances(std::size_t perFamily) {
    std::vector<Instance> out;
    for (const auto& p : suitePairs(families(), 1, perFamily))
        if (p.thick) out.push_back({&families()[p.family], p});
    return out;
}

std::vector<VertexId> boundaryImage(const CharDisc& cd, const CharSurface& s) {
    std::vector<VertexId> loop;
    for (VertexId d : cd.disc.boundary()) loop.push_back(s(d));
    return loop;
}

}  // namespace

TEST(CharDisc, FlatWideAndGaussBonnet) {
    std::size_t discs = 0;
    for (const auto& inst : thickInstances(20)) {
        const EuclideanGeodesic eg = euclideanGeodesic(*inst.family->metric, inst.pair.sigma, inst.pair.tau);
        for (const auto& t : eg.intervals) {
            const CharDisc& cd = t.disc;
            EXPECT_EQ(oracle::defectSum(cd.disc.complex()), 6);
            EXPECT_TRUE(isFlat(cd.disc));
            for (int k = cd.first; k <= cd.last; ++k) {
                EXPECT_EQ(cd.width(k), eg.profile.thickness[static_cast<std::size_t>(k)]);
                EXPECT_EQ(cd.rowOf(cd.v(k)), k);
                EXPECT_EQ(cd.posOf(cd.w(k)), cd.width(k));
            }
            // The region stack matches the embedded vertices.
            const GenCharDisc region = cd.region();
            for (const auto& [d, p] : cd.embedding) EXPECT_TRUE(region.contains(p));
            ++discs;
        }
    }
    EXPECT_GT(discs, 20u);
}

TEST(CharDisc, ShapeIndependentOfTieBreaking) {
    for (const auto& inst : thickInstances(10)) {
        const Metric& m = *inst.family->metric;
        const EuclideanGeodesic eg = euclideanGeodesic(m, inst.pair.sigma, inst.pair.tau);
        for (auto [i, j] : eg.profile.thickIntervals) {
            const std::string key = buildCharDisc(m, eg.profile.sigma, eg.profile.tau, i, j).shapeKey();
            for (std::uint64_t seed = 1; seed <= 5; ++seed)
                EXPECT_EQ(buildCharDisc(m, eg.profile.sigma, eg.profile.tau, i, j, seed).shapeKey(), key);
        }
    }
}

TEST(CharDisc, RejectsNonIntervals) {
    const FlagComplex x = genHexagon(4);
    const Metric m(x);
    const EuclideanGeodesic eg = euclideanGeodesic(m, Simplex::vertex(0), Simplex::vertex(42));
    EXPECT_THROW(buildCharDisc(m, eg.profile.sigma, eg.profile.tau, 0, 3), std::invalid_argument);
    EXPECT_NO_THROW(buildCharDisc(m, eg.profile.sigma, eg.profile.tau, 2, 4));
}

TEST(CharSurface, EnumerationMatchesBruteForce) {
    std::size_t compared = 0, multiple = 0;
    for (const auto& inst : thickInstances(12)) {
        const Metric& m = *inst.family->metric;
        const EuclideanGeodesic eg = euclideanGeodesic(m, inst.pair.sigma, inst.pair.tau);
        const LayerFrame frame(m, eg.profile.sigma, eg.profile.tau);
        for (const auto& t : eg.intervals) {
            EXPECT_TRUE(verifySurface(frame, t.disc, t.surface).ok());
            const auto all = allCharSurfaces(frame, t.disc, eg.profile.sigma, eg.profile.tau);
            ASSERT_FALSE(all.truncated);
            std::set<std::vector<VertexId>> got;
            for (const auto& s : all.surfaces) got.insert(s.image);
            const auto expected = oracle::surfacesBruteForce(m.complex(), t.disc, eg.profile.sigma, eg.profile.tau);
            EXPECT_EQ(got, expected) << inst.pair.id;
            EXPECT_TRUE(got.count(t.surface.image));
            if (got.size() > 1) ++multiple;
            if (t.disc.rowCount() <= 5) {
                for (VertexId d = 0; d < t.disc.vertexCount(); ++d) {
                    VertexSet span;
                    for (const auto& img : expected) span = setUnion(span, VertexSet{img[d]});
                    EXPECT_EQ(t.images.ofVertex(d), span) << inst.pair.id << " disc vertex " << d;
                }
            }
            ++compared;
        }
    }
    EXPECT_GT(compared, 10u);
    // Twinned families must exercise non-unique surfaces.
    EXPECT_GT(multiple, 0u);
}

TEST(MinimalSurface, CharacteristicSurfaceIsMinimal) {
    std::size_t compared = 0;
    for (const auto& inst : thickInstances(12)) {
        const Metric& m = *inst.family->metric;
        const EuclideanGeodesic eg = euclideanGeodesic(m, inst.pair.sigma, inst.pair.tau);
        for (const auto& t : eg.intervals) {
            const auto loop = boundaryImage(t.disc, t.surface);
            if (loop.size() > 10) continue;
            const int area = static_cast<int>(t.disc.area());
            const auto r = minimalSurfaceBruteForce(m.complex(), loop, area);
            ASSERT_TRUE(r.best.has_value());
            EXPECT_EQ(r.best->area, area) << inst.pair.id;
            if (area > 1) EXPECT_TRUE(minimalSurfaceBruteForce(m.complex(), loop, area - 1).capExceeded);
            ++compared;
        }
    }
    EXPECT_GT(compared, 5u);
}

TEST(MinimalSurface, SmallLoops) {
    // Wheel with centre 6 around the hexagon 0..5.
    std::vector<FlagComplex::Edge> wheel;
    for (VertexId i = 0; i < 6; ++i) wheel.emplace_back(i, (i + 1) % 6), wheel.emplace_back(i, 6);
    const FlagComplex w = FlagComplex::fromEdges(wheel);
    const std::vector<VertexId> rim{0, 1, 2, 3, 4, 5};
    const auto r = minimalSurfaceBruteForce(w, rim, 8);
    ASSERT_TRUE(r.best.has_value());
    EXPECT_EQ(r.best->area, 6);
    EXPECT_EQ(r.best->triangles.size(), 6u);
    EXPECT_TRUE(minimalSurfaceBruteForce(w, rim, 5).capExceeded);
    EXPECT_FALSE(isTriangulable(w, rim));
    const std::vector<VertexId> tri{0, 1, 6};
    EXPECT_TRUE(isTriangulable(w, tri));
    EXPECT_EQ(minimalSurfaceBruteForce(w, tri, 3).best->area, 1);
    // Square with a diagonal.
    const FlagComplex sq = FlagComplex::fromEdges(std::vector<FlagComplex::Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
    const std::vector<VertexId> four{0, 1, 2, 3};
    EXPECT_TRUE(isTriangulable(sq, four));
    EXPECT_EQ(minimalSurfaceBruteForce(sq, four, 4).best->area, 2);
}
