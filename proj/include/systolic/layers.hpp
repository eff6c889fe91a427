#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "systolic/metric.hpp"
#include "systolic/report.hpp"

namespace systolic {

/// Layers L_i = B_i(V) ∩ B_{n-i}(W) between two convex sets at distance n.
struct LayerDecomposition {
    VertexSet v, w;
    int n = 0;
    std::vector<VertexSet> layers;
};

/// Builds the decomposition and asserts that each layer equals
/// S_i(V) ∩ S_{n-i}(W) and that L_{i+1} lies in S_1(L_i); a failure throws
/// TheoryViolation.
LayerDecomposition layers(const Metric& m, std::span<const VertexId> v, std::span<const VertexId> w);

/// Layer index of every vertex of the complex (-1 outside all layers).
std::vector<int> layerIndex(const Metric& m, const LayerDecomposition& dec);

struct ThicknessProfile {
    SimplexSequence sigma, tau;
    std::vector<int> thickness;
    std::vector<bool> thin;
    /// Maximal runs of thick layers with thin layers at both ends, i+1 < j.
    std::vector<std::pair<int, int>> thickIntervals;
    /// Runs of thick layers reaching the first or last index of the profile.
    /// They have no thin end and are not thick intervals.
    std::vector<std::pair<int, int>> openRuns;

    int n() const { return static_cast<int>(thickness.size()) - 1; }
};

/// Thickness of two simplex sequences of equal length. Both must lie layer by
/// layer between V = sigma_0 ∪ tau_0 and W = sigma_n ∪ tau_n, i.e. every
/// vertex of sigma_k, tau_k has distance k from V and n-k from W; otherwise
/// std::invalid_argument ("layer mismatch").
ThicknessProfile thicknessProfile(const Metric& m, const SimplexSequence& sigma, const SimplexSequence& tau);

/// Derives thick intervals and open runs from a thickness vector.
void classifyThickness(ThicknessProfile& p);

/// Adjacent-layer variation of thickness is at most 1, the two sequences are
/// disjoint at thin ends of thick intervals, and distance-realizing pairs
/// combine (if s t' and s' t realize the thickness, so does s t).
CheckReport verifyProfileLemmas(const Metric& m, const ThicknessProfile& p);

struct LayerLemmaOptions {
    int cycleCap = kDefaultCycleCap;
    /// Upper bound on checked edge pairs per layer pair for the difference
    /// check; beyond it pairs are sampled with `seed`.
    std::size_t pairSamples = 20000;
    std::uint64_t seed = 1;
    /// Also test that the span of two consecutive interior layers is
    /// infinity-large. Off by default.
    bool twoLayerUnion = false;
};

/// Interior layers are infinity-large (up to the cycle cap), no layer contains
/// an isometric trapezoid of three triangles, maximal simplices of a layer
/// intersect in a nested-or-disjoint pattern, and crossing edges between
/// consecutive layers change distances by at most one.
CheckReport verifyLayerLemmas(const Metric& m, const LayerDecomposition& dec, const LayerLemmaOptions& opt = {});

struct Trapezoid {
    VertexId p1, r, p2, s1, s2;
};

/// Searches a complex for an isometric copy of the trapezoid built from the
/// triangles p1 r s1, p1 r p2, p2 r s2.
std::optional<Trapezoid> findTrapezoid(const FlagComplex& x);

}  // namespace systolic
