#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "systolic/eucgeo.hpp"
#include "systolic/metric.hpp"
#include "systolic/rational.hpp"

namespace systolic {

/// Caches Euclidean geodesics between vertex pairs. Thread-safe.
class EucGeodesicCache {
public:
    explicit EucGeodesicCache(const Metric& m) : m_(&m) {}
    const std::vector<Simplex>& between(VertexId a, VertexId b) const;
    const Metric& metric() const { return *m_; }

private:
    const Metric* m_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<VertexId, VertexId>, std::unique_ptr<const std::vector<Simplex>>> cache_;
};

/// A geodesic certified to stay within c+1 of the Euclidean geodesic of each
/// of its subsegments. certificate[(i, j, k)] = |v_k, delta^{i,j}_k|.
struct GoodGeodesic {
    GeodesicPath path;
    int c = kDefaultC;
    std::map<std::tuple<int, int, int>, int> certificate;
    int maxValue = 0;
};

struct GoodnessWitness {
    int i = 0, j = 0, k = 0, value = 0;
    std::string str() const;
};

struct GoodnessResult {
    std::optional<GoodGeodesic> good;
    std::optional<GoodnessWitness> violation;
};

/// Throws std::invalid_argument if the path is not a 1-skeleton geodesic.
GoodnessResult isGoodGeodesic(const EucGeodesicCache& cache, std::span<const VertexId> path, int c = kDefaultC);

/// Threads a vertex geodesic through the Euclidean geodesic between v and w
/// and certifies it. Throws TheoryViolation if certification fails.
GoodGeodesic makeGoodGeodesic(const EucGeodesicCache& cache, VertexId v, VertexId w, int c = kDefaultC);

/// c ∈ {0, 1/8, ..., 1}.
std::vector<Rational> defaultCSamples();

struct ExcessResult {
    Rational maxExcess{0};
    Rational atC{0};
};

/// Threads r, r' through the Euclidean geodesics t→s and t→s' and returns the
/// largest |r_{⌊cn⌋} r'_{⌊cn'⌋}| - c|ss'| over the samples.
ExcessResult contractingCheck(const EucGeodesicCache& cache, VertexId t, VertexId s, VertexId s2,
                              const std::vector<Rational>& cSamples = defaultCSamples());

/// Largest |v_{⌊cn⌋} w_{⌊cm⌋}| - c|v_n w_m| for two geodesics from one basepoint.
ExcessResult divergenceExcess(const Metric& m, std::span<const VertexId> v, std::span<const VertexId> w,
                              const std::vector<Rational>& cSamples = defaultCSamples());

/// Largest |v_N w_N| - 2|v_k w_l| over k, l and N <= min(k, l).
int prefixExcess(const Metric& m, std::span<const VertexId> v, std::span<const VertexId> w);

struct RayComparison {
    bool equivalentSoFar = true;
    /// First index with |v_i w_i| > d.
    std::optional<int> witness;
};

/// Both paths must start at the same vertex and have equal length.
RayComparison raysEquivalentTruncated(const Metric& m, std::span<const VertexId> a, std::span<const VertexId> b,
                                      int d);

/// Membership of zeta in the standard neighbourhood of eta at radius n and
/// tolerance r: |zeta_n eta_n| <= r. Requires r > d.
bool inStandardNeighborhood(const Metric& m, std::span<const VertexId> zeta, std::span<const VertexId> eta, int n,
                            int r, int d);

struct AtlasOptions {
    int c = kDefaultC;
    int d = contractionConstant(kDefaultC);
    std::size_t cap = 20000;
};

inline constexpr std::size_t kTransitivityLimit = 4000;

struct BoundaryAtlas {
    VertexId basepoint = 0;
    int radius = 0;
    int c = kDefaultC, d = contractionConstant(kDefaultC);
    std::vector<std::vector<VertexId>> rays;
    /// Class index of every ray; classes are numbered by their first ray.
    std::vector<int> classOf;
    /// Smallest ray index of every class.
    std::vector<std::size_t> representatives;
    /// |v_N w_N| between class representatives.
    std::vector<std::vector<int>> representativeDistance;
    /// Triples a~b, b~c with a, c over the threshold somewhere; not computed
    /// above kTransitivityLimit rays.
    std::optional<std::size_t> transitivityViolations;
    /// Rays picked greedily in order, each inequivalent to all earlier picks.
    /// Unlike the closed classes, their number tracks the directions
    /// separated by more than d at this radius.
    std::vector<std::size_t> separated;
    /// Geodesic prefixes pruned for failing the goodness test.
    std::size_t rejected = 0;
    bool partial = false;

    std::size_t classCount() const { return representatives.size(); }
    std::string text() const;
    std::string json() const;
};

/// Good geodesics of length `radius` from the basepoint in lexicographic
/// order (capped), grouped by the all-index threshold d with union-find.
BoundaryAtlas boundaryAtlas(const EucGeodesicCache& cache, VertexId basepoint, int radius,
                            const AtlasOptions& opt = {});

}  // namespace systolic
