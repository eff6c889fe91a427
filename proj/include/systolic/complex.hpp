#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "systolic/rational.hpp"

namespace systolic {

using VertexId = std::uint32_t;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<VertexId>;

/// Raised when a computed object contradicts a structural property that holds
/// in every systolic complex. On valid input this never fires; when it does,
/// the input was not systolic (or a precondition was silently violated).
class TheoryViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sort and deduplicate in place.
VertexSet normalized(VertexSet vs);
bool isSubset(std::span<const VertexId> a, std::span<const VertexId> b);
VertexSet setUnion(std::span<const VertexId> a, std::span<const VertexId> b);
VertexSet setIntersection(std::span<const VertexId> a, std::span<const VertexId> b);
std::string formatSet(std::span<const VertexId> vs);

/// A nonempty strictly sorted vertex list. Whether it is a simplex of a
/// particular complex is checked by FlagComplex::isSimplex.
class Simplex {
public:
    Simplex() = default;
    explicit Simplex(VertexSet vertices);
    Simplex(std::initializer_list<VertexId> vertices) : Simplex(VertexSet(vertices)) {}

    static Simplex vertex(VertexId v) { return Simplex(VertexSet{v}); }

    const VertexSet& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }
    int dimension() const { return static_cast<int>(v_.size()) - 1; }
    bool empty() const { return v_.empty(); }
    bool contains(VertexId v) const;
    bool isFaceOf(const Simplex& other) const { return isSubset(v_, other.v_); }
    VertexId front() const { return v_.front(); }

    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend auto operator<=>(const Simplex&, const Simplex&) = default;

    std::string str() const { return formatSet(v_); }

private:
    VertexSet v_;
};

/// Lattice metadata attached to vertices of generated flat regions:
/// row index and twice the horizontal coordinate.
struct LatticeCoord {
    int row = 0;
    int twiceX = 0;
    friend bool operator==(const LatticeCoord&, const LatticeCoord&) = default;
};

/// Finite flag simplicial complex, determined by its 1-skeleton. Simplices are
/// exactly the cliques. Immutable after construction.
class FlagComplex {
public:
    using Edge = std::pair<VertexId, VertexId>;

    FlagComplex() = default;

    /// Builds the complex from an edge list plus optional isolated vertices.
    /// Throws std::invalid_argument on self-loops. Duplicate edges are ignored.
    static FlagComplex fromEdges(std::span<const Edge> edges,
                                 std::span<const VertexId> extraVertices = {});

    std::size_t vertexCount() const { return ids_.size(); }
    std::size_t edgeCount() const { return edgeCount_; }
    const VertexSet& vertices() const { return ids_; }
    bool hasVertex(VertexId v) const;

    /// Dense index of a vertex in [0, vertexCount()). Throws if absent.
    std::size_t index(VertexId v) const;
    VertexId idAt(std::size_t index) const { return ids_[index]; }

    const VertexSet& neighbors(VertexId v) const { return adj_[index(v)]; }
    const VertexSet& neighborsAt(std::size_t index) const { return adj_[index]; }
    std::size_t degree(VertexId v) const { return neighbors(v).size(); }
    bool adjacent(VertexId a, VertexId b) const;

    /// True iff the vertices are pairwise adjacent (distinct, present).
    bool isClique(std::span<const VertexId> vs) const;
    bool isSimplex(const Simplex& s) const { return isClique(s.vertices()); }

    /// Common neighbours of every vertex in vs (excluding vs itself).
    VertexSet commonNeighbors(std::span<const VertexId> vs) const;

    std::vector<Edge> edges() const;
    /// All simplices (cliques), ordered by dimension then lexicographically.
    std::vector<Simplex> simplices(int maxDimension = 64) const;
    std::vector<Simplex> triangles() const { return simplicesOfDimension(2); }
    std::vector<Simplex> simplicesOfDimension(int dim) const;
    /// Inclusion-maximal simplices.
    std::vector<Simplex> maximalSimplices() const;

    /// Induced (full) subcomplex on the given vertices. Lattice metadata is kept.
    FlagComplex induced(std::span<const VertexId> vs) const;

    bool isConnected() const;

    void setCoord(VertexId v, LatticeCoord c);
    const std::map<VertexId, LatticeCoord>& coords() const { return coords_; }
    std::optional<LatticeCoord> coord(VertexId v) const;

private:
    void forEachClique(int maxSize, const auto& fn) const;

    VertexSet ids_;
    std::vector<VertexSet> adj_;
    std::size_t edgeCount_ = 0;
    std::map<VertexId, LatticeCoord> coords_;
};

/// Vertex set interpreted as the full subcomplex it spans.
struct FullSubcomplex {
    const FlagComplex* owner = nullptr;
    VertexSet vertices;

    FullSubcomplex() = default;
    FullSubcomplex(const FlagComplex& x, VertexSet vs) : owner(&x), vertices(normalized(std::move(vs))) {}

    bool contains(VertexId v) const;
    std::size_t size() const { return vertices.size(); }
    FlagComplex complex() const { return owner->induced(vertices); }
};

FlagComplex buildFlagComplex(std::span<const FlagComplex::Edge> edges);

/// Link of a simplex: the full subcomplex on the common neighbours.
/// Throws std::invalid_argument if sigma is not a simplex of X.
FlagComplex link(const FlagComplex& x, const Simplex& sigma);

/// Result of a largeness test; `witness` holds an offending induced cycle.
struct LargenessResult {
    bool ok = true;
    std::vector<VertexId> witness;
    /// Set when the cycle-length cap limited the search (k = infinity only).
    bool capReached = false;
    explicit operator bool() const { return ok; }
};

inline constexpr int kInfinity = -1;
inline constexpr int kDefaultCycleCap = 12;

/// Finds an induced cycle whose length lies in [minLen, maxLen], if any.
/// `capReached` (optional) is set if some induced path hit maxLen unclosed.
std::optional<std::vector<VertexId>> findInducedCycle(const FlagComplex& x, int minLen, int maxLen,
                                                      bool* capReached = nullptr);

/// k-largeness: no induced cycle of length l with 4 <= l < k. Pass kInfinity
/// for infinity-largeness, which searches up to `cycleCap`.
LargenessResult isKLarge(const FlagComplex& x, int k, int cycleCap = kDefaultCycleCap);

struct LocalLargenessResult {
    bool ok = true;
    Simplex simplex;
    std::vector<VertexId> cycle;
    explicit operator bool() const { return ok; }
};

/// Every link of every simplex is 6-large.
LocalLargenessResult isLocally6Large(const FlagComplex& x);

enum class SimpleConnectivity { Verified, Unknown };

/// Sound but incomplete: Verified iff the 2-skeleton collapses to a point
/// through elementary collapses. Never reports a negative.
SimpleConnectivity isSimplyConnectedHeuristic(const FlagComplex& x);

// Text format: `# comment`, `v <id>`, `e <a> <b>`, `coord <id> <row> <2x>`.
FlagComplex parseComplex(std::string_view text);
FlagComplex readComplexFile(const std::string& path);
std::string serializeComplex(const FlagComplex& x);

}  // namespace systolic
