#pragma once

#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "systolic/complex.hpp"

namespace systolic {

inline constexpr int kUnreachable = -1;

/// Combinatorial (1-skeleton) metric of a complex. Single-vertex BFS rows are
/// cached and shared between threads; set-to-set queries run a fresh
/// multi-source BFS. The complex must outlive the metric.
class Metric {
public:
    explicit Metric(const FlagComplex& x) : x_(&x) {}
    Metric(const Metric&) = delete;
    Metric& operator=(const Metric&) = delete;

    const FlagComplex& complex() const { return *x_; }

    /// Distances from one vertex, indexed by dense vertex index.
    const std::vector<int>& row(VertexId v) const;
    /// Distances from a vertex set, indexed by dense vertex index.
    std::vector<int> distancesFrom(std::span<const VertexId> sources) const;

    int dist(VertexId a, VertexId b) const;
    /// Set distance (minimum over pairs). Throws std::runtime_error if the sets
    /// lie in different components, std::invalid_argument if one is empty.
    int dist(std::span<const VertexId> a, std::span<const VertexId> b) const;
    /// Maximum pairwise distance between the sets.
    int maxDist(std::span<const VertexId> a, std::span<const VertexId> b) const;

    VertexSet ball(std::span<const VertexId> center, int radius) const;
    VertexSet sphere(std::span<const VertexId> center, int radius) const;

    /// Interval-closure test: every vertex on a geodesic between two members
    /// of `y` belongs to `y`. `y` must be connected for geodesic convexity to
    /// coincide with convexity of the full subcomplex.
    bool isConvex(std::span<const VertexId> y) const;

private:
    const FlagComplex* x_;
    mutable std::shared_mutex mu_;
    mutable std::unordered_map<std::size_t, std::unique_ptr<const std::vector<int>>> rows_;
};

struct GeodesicPath {
    std::vector<VertexId> vertices;
    int length() const { return static_cast<int>(vertices.size()) - 1; }
};

enum class SequenceKind { DirectedGeodesic, EuclideanGeodesic, Other };

struct SimplexSequence {
    std::vector<Simplex> simplices;
    SequenceKind kind = SequenceKind::Other;

    std::size_t size() const { return simplices.size(); }
    const Simplex& operator[](std::size_t i) const { return simplices[i]; }
    SimplexSequence reversed() const;
    std::string str() const;
};

/// All simplices containing sigma (sigma included).
std::vector<Simplex> residue(const FlagComplex& x, const Simplex& sigma);

/// Projection of sigma onto the convex subcomplex spanned by y, where sigma
/// lies in the 1-sphere of y. Throws std::invalid_argument if sigma is not in
/// that sphere and TheoryViolation if the result is empty or not a simplex.
Simplex projection(const Metric& m, const Simplex& sigma, std::span<const VertexId> y);

/// Directed geodesic from sigma to the convex set w. Sigma must lie in one
/// sphere S_n(w) or meet exactly S_n(w) and S_{n-1}(w).
SimplexSequence directedGeodesic(const Metric& m, const Simplex& sigma, std::span<const VertexId> w);

struct GeodesicEnumeration {
    std::vector<GeodesicPath> paths;
    bool truncated = false;
};

inline constexpr std::size_t kDefaultGeodesicCap = 10000;

/// All 1-skeleton geodesics from u to v in lexicographic order, up to `cap`.
GeodesicEnumeration allGeodesics(const Metric& m, VertexId u, VertexId v,
                                 std::size_t cap = kDefaultGeodesicCap);

/// True iff consecutive vertices are adjacent and the length equals the
/// distance between the endpoints.
bool isGeodesic(const Metric& m, std::span<const VertexId> path);

}  // namespace systolic
