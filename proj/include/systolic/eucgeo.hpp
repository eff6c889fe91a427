#pragma once

#include <vector>

#include "systolic/charsurf.hpp"
#include "systolic/flatgeom.hpp"
#include "systolic/layers.hpp"
#include "systolic/metric.hpp"
#include "systolic/report.hpp"

namespace systolic {

inline constexpr int kDefaultC = 208;
inline constexpr int contractionConstant(int c) { return 3 * c + 2; }

/// Everything built for one thick interval.
struct ThickIntervalData {
    CharDisc disc;
    CharSurface surface;
    /// Shortest path in the modified disc between its two endpoint points.
    PolyPath diagonal;
    /// Disc simplices nearest to the diagonal on rows first+1 .. last-1.
    std::vector<VertexSet> rho;
    CharImageMap images;
};

struct EuclideanGeodesic {
    Simplex sigma, tau;
    int n = 0;
    std::vector<Simplex> deltas;
    ThicknessProfile profile;
    std::vector<ThickIntervalData> intervals;
};

/// The disc trimmed by 1/2 on both sides of every row; rows of width 1
/// collapse to their midpoint.
GenCharDisc modifiedDisc(const CharDisc& cd);

/// Shortest path through the modified disc between the midpoints of the
/// first and last row.
PolyPath cat0Diagonal(const CharDisc& cd);

/// For every inner row: the inner vertex of the row closest to the diagonal's
/// crossing, or the inner edge whose midpoint is the crossing. The row ends
/// are never chosen. Entries are disc vertex ids.
std::vector<VertexSet> euclideanDiagonal(const CharDisc& cd, const PolyPath& diagonal);

/// Euclidean geodesic between simplices with sigma ⊂ S_n(tau) and
/// tau ⊂ S_n(sigma). Throws std::invalid_argument when the simplices are not
/// in that position and TheoryViolation when a construction step fails.
EuclideanGeodesic euclideanGeodesic(const Metric& m, const Simplex& sigma, const Simplex& tau);

struct EucCheckOptions {
    bool reversal = true;
};

/// Sphere containments between all pairs of deltas, spans across thick
/// layers, exact distances across thick stretches, layer containment,
/// diagonal properties inside every disc, and (optionally) that the reversed
/// construction yields the reversed sequence.
CheckReport verifyEucProperties(const Metric& m, const EuclideanGeodesic& eg, const EucCheckOptions& opt = {});

/// 1-skeleton geodesic through the deltas passing through `start` ∈ deltas[k],
/// choosing the smallest admissible vertex at each step.
std::vector<VertexId> threadGeodesic(const Metric& m, const std::vector<Simplex>& deltas, std::size_t k,
                                     VertexId start);
/// Thread from the smallest vertex of deltas[0].
std::vector<VertexId> threadGeodesic(const Metric& m, const std::vector<Simplex>& deltas);

enum class SubsegmentMode { Weak, Strong };

struct SubsegmentResult {
    int maxDistance = 0;
    int atLayer = 0;
};

/// Compares deltas l..m with the Euclidean geodesic between deltas[l] and
/// deltas[m] (weak) or between thread[l] and thread[m] (strong; `thread` must
/// be a 1-skeleton geodesic through the deltas). Returns the largest simplex
/// distance.
SubsegmentResult subsegmentCheck(const Metric& m, const EuclideanGeodesic& eg, int l, int mm, SubsegmentMode mode,
                                 const std::vector<VertexId>& thread = {});

struct ClosenessResult {
    Rational value{0};
    int thickIntervals = 0;
};

/// For each thick interval of the vertex geodesics p, r (r threading the
/// deltas of eg): largest horizontal distance between the disc's diagonal,
/// joined between the midpoints of its end rows, and the r side of the disc.
ClosenessResult closenessCheck(const Metric& m, const std::vector<VertexId>& p, const std::vector<VertexId>& r);

}  // namespace systolic
