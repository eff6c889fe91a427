#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "systolic/complex.hpp"
#include "systolic/rational.hpp"

namespace systolic {

/// Point of the flat plane in row coordinates: `row` counts horizontal lines
/// (spaced sqrt(3)/2 apart) and `x` is the horizontal position. Lattice
/// vertices have 2x ≡ row (mod 2).
struct LatticePoint {
    int row = 0;
    Rational x{0};

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend auto operator<=>(const LatticePoint& a, const LatticePoint& b) {
        if (a.row != b.row) return a.row <=> b.row;
        if (a.x < b.x) return std::strong_ordering::less;
        if (b.x < a.x) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    std::string str() const;
};

bool isLatticeVertex(const LatticePoint& p);
/// 1-skeleton distance in the equilateral lattice; both points must be vertices.
int latticeDistance(const LatticePoint& a, const LatticePoint& b);
std::vector<LatticePoint> latticeNeighbors(const LatticePoint& p);
LatticePoint toLatticePoint(LatticeCoord c);
LatticeCoord toLatticeCoord(const LatticePoint& p);

/// Triangulated 2-disc given as a flag complex: no 4-cliques, every edge in one
/// or two triangles, boundary edges forming a single cycle, Euler
/// characteristic 1 and every vertex star a disc.
class TriangulatedDisc {
public:
    /// Throws std::invalid_argument describing the first failed condition.
    static TriangulatedDisc fromComplex(FlagComplex x);

    const FlagComplex& complex() const { return x_; }
    /// Boundary cycle starting at its smallest vertex, oriented towards the
    /// smaller of that vertex's two boundary neighbours.
    const std::vector<VertexId>& boundary() const { return boundary_; }
    bool onBoundary(VertexId v) const;
    int triangleCount(VertexId v) const;
    std::size_t area() const { return triangles_; }

private:
    FlagComplex x_;
    std::vector<VertexId> boundary_;
    VertexSet boundarySet_;
    std::map<VertexId, int> trianglesAt_;
    std::size_t triangles_ = 0;
};

int defect(const TriangulatedDisc& d, VertexId v);
int gaussBonnetSum(const TriangulatedDisc& d);

struct FlatnessResult {
    bool ok = true;
    std::optional<VertexId> witness;
    std::string reason;
    explicit operator bool() const { return ok; }
};

/// Defect criterion: interior defects >= 0, boundary defects >= -1, and
/// between two negative-defect boundary vertices each boundary arc carries a
/// positive-defect vertex.
FlatnessResult isFlat(const TriangulatedDisc& d);

/// Places the disc in the lattice by fixing its smallest triangle at
/// (0,0),(0,1),(1,1/2) and unfolding across edges. Verifies injectivity and
/// that every 1-skeleton distance of the disc equals the lattice distance.
/// Throws TheoryViolation if either fails.
std::map<VertexId, LatticePoint> embedFlatDisc(const TriangulatedDisc& d);

/// The twelve symmetries of the lattice fixing the origin, as maps on points.
LatticePoint latticeSymmetry(int which, const LatticePoint& p);

/// Stack of horizontal segments [left, right] on consecutive rows starting at
/// `firstRow`. The region is the union of the trapezoids spanned by
/// consecutive segments. Degenerate rows (left == right) are allowed.
struct GenCharDisc {
    int firstRow = 0;
    std::vector<std::pair<Rational, Rational>> rows;

    int lastRow() const { return firstRow + static_cast<int>(rows.size()) - 1; }
    const std::pair<Rational, Rational>& at(int row) const {
        return rows[static_cast<std::size_t>(row - firstRow)];
    }
    bool contains(const LatticePoint& p) const;
};

/// Piecewise-linear path recorded by its crossing with each row.
struct PolyPath {
    int firstRow = 0;
    std::vector<Rational> xs;
    /// Rows where the path changes direction (excluding the endpoints).
    std::vector<int> bends;

    int lastRow() const { return firstRow + static_cast<int>(xs.size()) - 1; }
    const Rational& at(int row) const { return xs[static_cast<std::size_t>(row - firstRow)]; }
    /// Euclidean length, rows being sqrt(3)/2 apart.
    long double length() const;
    PolyPath reversedRows() const;
};

/// Shortest path inside the region from p (on the first row) to q (on the
/// last row). Exact: the result only depends on orientation tests, which are
/// invariant under the vertical rescaling, so the computation runs in row
/// units. Throws std::invalid_argument if p or q lies outside.
PolyPath polygonGeodesic(const GenCharDisc& d, const LatticePoint& p, const LatticePoint& q);

/// Largest horizontal distance between the paths over their common rows.
/// Throws std::invalid_argument if the row ranges differ.
Rational dClose(const PolyPath& a, const PolyPath& b);

}  // namespace systolic
