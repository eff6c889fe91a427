#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "systolic/flatgeom.hpp"
#include "systolic/layers.hpp"
#include "systolic/metric.hpp"

namespace systolic {

/// Layer positions relative to two convex sets V, W at distance n: a vertex
/// lies in layer k iff it is at distance k from V and n-k from W.
class LayerFrame {
public:
    LayerFrame(const Metric& m, std::span<const VertexId> v, std::span<const VertexId> w);
    /// V = sigma_0 ∪ tau_0, W = sigma_n ∪ tau_n.
    LayerFrame(const Metric& m, const SimplexSequence& sigma, const SimplexSequence& tau);

    const Metric& metric() const { return *m_; }
    int n() const { return n_; }
    bool inLayer(VertexId u, int k) const;
    /// Layer of u, or -1.
    int layerOf(VertexId u) const;

private:
    const Metric* m_;
    int n_ = 0;
    std::vector<int> fromV_, fromW_;
};

/// Flat disc spanned on the loop s_i..s_j t_j..t_i over an interval of layers.
/// Row k (layer k) holds the lattice points a_k, a_k + 1, ..., a_k + d_k where
/// d_k = |s_k t_k|; v_k and w_k are the first and last vertex of the row.
/// Disc vertices are numbered 0, 1, ... row by row from left to right.
struct CharDisc {
    int first = 0, last = 0;
    std::vector<int> widths;       // d_k
    std::vector<Rational> leftX;   // a_k
    std::vector<VertexId> s, t;    // chosen representatives in the complex
    bool partial = false;          // endpoint rows thick (restricted disc)
    TriangulatedDisc disc;
    std::map<VertexId, LatticePoint> embedding;

    int rowCount() const { return last - first + 1; }
    int width(int k) const { return widths[static_cast<std::size_t>(k - first)]; }
    Rational left(int k) const { return leftX[static_cast<std::size_t>(k - first)]; }
    VertexId vertexAt(int k, int pos) const;
    VertexId v(int k) const { return vertexAt(k, 0); }
    VertexId w(int k) const { return vertexAt(k, width(k)); }
    int rowOf(VertexId d) const { return embedding.at(d).row; }
    int posOf(VertexId d) const;
    std::size_t vertexCount() const { return disc.complex().vertexCount(); }
    /// Triangle count.
    std::size_t area() const { return disc.area(); }
    /// Canonical text of the shape (first row, widths, left offsets).
    std::string shapeKey() const;
    /// The disc as a stack of row segments.
    GenCharDisc region() const;
};

/// Characteristic disc of the interval (i, j) for the sequences. Picks
/// s_k ∈ sigma_k, t_k ∈ tau_k realizing the thickness, lexicographically
/// smallest or, with `tieSeed`, uniformly at random among maximizing pairs.
/// When every layer of the interval has thickness >= 2 a partial disc is
/// built instead. Throws TheoryViolation when the loop fails wideness or
/// flatness, std::invalid_argument when (i, j) is neither kind of interval.
CharDisc buildCharDisc(const Metric& m, const SimplexSequence& sigma, const SimplexSequence& tau, int i, int j,
                       std::optional<std::uint64_t> tieSeed = std::nullopt);

/// Simplicial map from a characteristic disc to the complex, indexed by disc
/// vertex.
struct CharSurface {
    std::vector<VertexId> image;
    VertexId operator()(VertexId d) const { return image[d]; }
};

/// Finds a characteristic surface by backtracking rows bottom-up, each row a
/// geodesic s_k..t_k whose vertices are adjacent to the images of their
/// already placed disc neighbours; candidates are tried in increasing id order.
/// Throws TheoryViolation if no surface exists or the result fails layer
/// preservation or isometry on consecutive rows.
CharSurface buildCharSurface(const LayerFrame& frame, const CharDisc& cd);

/// Layer preservation and isometry on every pair of equal or consecutive rows.
CheckReport verifySurface(const LayerFrame& frame, const CharDisc& cd, const CharSurface& s);

struct SurfaceEnumeration {
    std::vector<CharSurface> surfaces;
    bool truncated = false;
};

/// Every characteristic surface on the disc, including every admissible
/// choice of boundary representatives, up to `cap`.
SurfaceEnumeration allCharSurfaces(const LayerFrame& frame, const CharDisc& cd, const SimplexSequence& sigma,
                                   const SimplexSequence& tau, std::size_t cap = 10000);

/// Characteristic images of all disc vertices, computed from one base surface
/// by single-vertex substitution: an interior vertex may go to any vertex of
/// its layer adjacent to the base images of all its disc neighbours; v_k (w_k)
/// may go to any such vertex of sigma_k (tau_k) that realizes the thickness.
class CharImageMap {
public:
    CharImageMap(const LayerFrame& frame, const CharDisc& cd, const CharSurface& base, const SimplexSequence& sigma,
                 const SimplexSequence& tau);

    const VertexSet& ofVertex(VertexId d) const { return forward_[d]; }
    /// Span of the images of a disc simplex. Throws TheoryViolation if the
    /// union is not a simplex of the complex.
    Simplex of(std::span<const VertexId> rho) const;
    /// Disc vertex whose image contains u, if any.
    std::optional<VertexId> preimage(VertexId u) const;

private:
    const FlagComplex* x_;
    std::vector<VertexSet> forward_;
    std::map<VertexId, VertexId> backward_;
};

struct SurfaceFilling {
    int area = 0;
    /// Triangles of the filling as vertex triples of the complex.
    std::vector<std::array<VertexId, 3>> triangles;
};

struct MinimalSurfaceResult {
    std::optional<SurfaceFilling> best;
    /// True when no filling of area <= maxArea exists; `best` is then empty.
    bool capExceeded = false;
};

/// Minimum-area disc filling of an embedded loop by exhaustive search. The
/// triangle on the edge loop[0]loop[1] either uses a loop vertex (splitting the
/// loop) or a new vertex (lengthening it); new vertices never repeat a vertex
/// of the current loop, so only fillings whose intermediate loops stay
/// embedded are explored. Small inputs only.
MinimalSurfaceResult minimalSurfaceBruteForce(const FlagComplex& x, std::span<const VertexId> loop, int maxArea);

/// True iff the loop has a filling without interior vertices (chord DP).
bool isTriangulable(const FlagComplex& x, std::span<const VertexId> loop);

}  // namespace systolic
