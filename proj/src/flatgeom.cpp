#include "systolic/flatgeom.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include <fmt/format.h>

#include "systolic/metric.hpp"

namespace systolic {

std::string LatticePoint::str() const { return fmt::format("({},{})", row, toString(x)); }

bool isLatticeVertex(const LatticePoint& p) {
    if (!isHalfInteger(p.x)) return false;
    return ((twiceOf(p.x) - p.row) % 2 + 2) % 2 == 0;
}

int latticeDistance(const LatticePoint& a, const LatticePoint& b) {
    const int dr = std::abs(a.row - b.row);
    const Rational dx = abs(a.x - b.x);
    const Rational excess = dx - Rational(dr, 2);
    return dr + (excess > 0 ? static_cast<int>(floorOf(excess)) : 0);
}

std::vector<LatticePoint> latticeNeighbors(const LatticePoint& p) {
    return {{p.row, p.x - 1},         {p.row, p.x + 1},         {p.row - 1, p.x - kHalf},
            {p.row - 1, p.x + kHalf}, {p.row + 1, p.x - kHalf}, {p.row + 1, p.x + kHalf}};
}

LatticePoint toLatticePoint(LatticeCoord c) { return {c.row, fromTwice(c.twiceX)}; }

LatticeCoord toLatticeCoord(const LatticePoint& p) { return {p.row, static_cast<int>(twiceOf(p.x))}; }

LatticePoint latticeSymmetry(int which, const LatticePoint& p) {
    // Cube coordinates (a, b, c) with a + b + c = 0, b = row.
    Rational a = p.x - Rational(p.row, 2);
    Rational b(p.row);
    Rational c = -a - b;
    if (which >= 6) std::swap(a, c);
    for (int k = 0; k < which % 6; ++k) {
        Rational na = -b, nb = -c, nc = -a;
        a = na;
        b = nb;
        c = nc;
    }
    if (b.denominator() != 1) throw std::invalid_argument("lattice symmetries act on vertices only");
    const int row = static_cast<int>(b.numerator());
    return {row, a + Rational(row, 2)};
}

// ---------------------------------------------------------------------------
// Discs

TriangulatedDisc TriangulatedDisc::fromComplex(FlagComplex x) {
    TriangulatedDisc d;
    if (x.vertexCount() < 3) throw std::invalid_argument("a disc needs at least one triangle");
    if (!x.simplicesOfDimension(3).empty()) throw std::invalid_argument("complex has a 3-simplex");
    const auto tris = x.triangles();
    std::map<FlagComplex::Edge, int> edgeTris;
    for (const auto& e : x.edges()) edgeTris[e] = 0;
    for (const auto& t : tris) {
        const auto& v = t.vertices();
        ++edgeTris[{v[0], v[1]}];
        ++edgeTris[{v[0], v[2]}];
        ++edgeTris[{v[1], v[2]}];
    }
    std::map<VertexId, VertexSet> boundaryAdj;
    for (const auto& [e, count] : edgeTris) {
        if (count == 0 || count > 2)
            throw std::invalid_argument(fmt::format("edge {}-{} lies in {} triangles", e.first, e.second, count));
        if (count == 1) {
            boundaryAdj[e.first].push_back(e.second);
            boundaryAdj[e.second].push_back(e.first);
        }
    }
    if (boundaryAdj.empty()) throw std::invalid_argument("no boundary");
    for (auto& [v, nb] : boundaryAdj) {
        if (nb.size() != 2) throw std::invalid_argument(fmt::format("boundary is not a cycle at vertex {}", v));
        std::sort(nb.begin(), nb.end());
    }
    const VertexId start = boundaryAdj.begin()->first;
    std::vector<VertexId> cycle{start};
    VertexId prev = start, cur = boundaryAdj[start][0];
    while (cur != start) {
        cycle.push_back(cur);
        const auto& nb = boundaryAdj[cur];
        VertexId next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
        if (cycle.size() > boundaryAdj.size()) throw std::invalid_argument("boundary walk does not close");
    }
    if (cycle.size() != boundaryAdj.size()) throw std::invalid_argument("boundary has several components");

    const long long euler = static_cast<long long>(x.vertexCount()) - static_cast<long long>(x.edgeCount()) +
                            static_cast<long long>(tris.size());
    if (euler != 1) throw std::invalid_argument(fmt::format("Euler characteristic {} instead of 1", euler));

    for (VertexId v : x.vertices()) {
        const VertexSet& nb = x.neighbors(v);
        int ends = 0;
        for (VertexId u : nb) {
            std::size_t deg = setIntersection(nb, x.neighbors(u)).size();
            if (deg == 1)
                ++ends;
            else if (deg != 2)
                throw std::invalid_argument(fmt::format("link of {} is not a path or cycle", v));
        }
        const bool boundary = boundaryAdj.contains(v);
        if (ends != (boundary ? 2 : 0))
            throw std::invalid_argument(fmt::format("link of {} has the wrong shape", v));
        if (!x.induced(nb).isConnected())
            throw std::invalid_argument(fmt::format("link of {} is disconnected", v));
    }

    d.boundary_ = std::move(cycle);
    d.boundarySet_ = normalized(d.boundary_);
    for (const auto& t : tris)
        for (VertexId v : t) ++d.trianglesAt_[v];
    d.triangles_ = tris.size();
    d.x_ = std::move(x);
    return d;
}

bool TriangulatedDisc::onBoundary(VertexId v) const {
    return std::binary_search(boundarySet_.begin(), boundarySet_.end(), v);
}

int TriangulatedDisc::triangleCount(VertexId v) const {
    auto it = trianglesAt_.find(v);
    return it == trianglesAt_.end() ? 0 : it->second;
}

int defect(const TriangulatedDisc& d, VertexId v) {
    if (!d.complex().hasVertex(v)) throw std::invalid_argument(fmt::format("vertex {} not in disc", v));
    return (d.onBoundary(v) ? 3 : 6) - d.triangleCount(v);
}

int gaussBonnetSum(const TriangulatedDisc& d) {
    int sum = 0;
    for (VertexId v : d.complex().vertices()) sum += defect(d, v);
    return sum;
}

FlatnessResult isFlat(const TriangulatedDisc& d) {
    FlatnessResult r;
    for (VertexId v : d.complex().vertices()) {
        const int def = defect(d, v);
        if (!d.onBoundary(v) && def < 0) {
            r = {false, v, fmt::format("interior vertex {} has defect {}", v, def)};
            return r;
        }
        if (d.onBoundary(v) && def < -1) {
            r = {false, v, fmt::format("boundary vertex {} has defect {}", v, def)};
            return r;
        }
    }
    const auto& b = d.boundary();
    std::vector<std::size_t> negatives;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (defect(d, b[i]) < 0) negatives.push_back(i);
    if (negatives.size() >= 2) {
        for (std::size_t k = 0; k < negatives.size(); ++k) {
            std::size_t from = negatives[k], to = negatives[(k + 1) % negatives.size()];
            bool positive = false;
            for (std::size_t i = (from + 1) % b.size(); i != to; i = (i + 1) % b.size())
                if (defect(d, b[i]) > 0) positive = true;
            if (!positive) {
                r = {false, b[from],
                     fmt::format("boundary vertices {} and {} of negative defect are not separated", b[from], b[to])};
                return r;
            }
        }
    }
    return r;
}

std::map<VertexId, LatticePoint> embedFlatDisc(const TriangulatedDisc& d) {
    const FlagComplex& x = d.complex();
    const auto tris = x.triangles();
    std::map<FlagComplex::Edge, std::vector<std::size_t>> edgeTris;
    for (std::size_t t = 0; t < tris.size(); ++t) {
        const auto& v = tris[t].vertices();
        edgeTris[{v[0], v[1]}].push_back(t);
        edgeTris[{v[0], v[2]}].push_back(t);
        edgeTris[{v[1], v[2]}].push_back(t);
    }
    std::map<VertexId, LatticePoint> pos;
    const auto& first = tris.front().vertices();
    pos[first[0]] = {0, Rational(0)};
    pos[first[1]] = {0, Rational(1)};
    pos[first[2]] = {1, kHalf};

    std::vector<char> done(tris.size(), 0);
    std::deque<std::size_t> queue{0};
    done[0] = 1;
    while (!queue.empty()) {
        const std::size_t t = queue.front();
        queue.pop_front();
        const auto& v = tris[t].vertices();
        for (int skip = 0; skip < 3; ++skip) {
            VertexId a = v[skip == 0 ? 1 : 0], b = v[skip == 2 ? 1 : 2], opposite = v[static_cast<std::size_t>(skip)];
            for (std::size_t u : edgeTris[{std::min(a, b), std::max(a, b)}]) {
                if (u == t) continue;
                VertexId w = 0;
                for (VertexId c : tris[u])
                    if (c != a && c != b) w = c;
                auto na = latticeNeighbors(pos.at(a));
                auto nb = latticeNeighbors(pos.at(b));
                std::optional<LatticePoint> target;
                for (const auto& p : na)
                    if (std::find(nb.begin(), nb.end(), p) != nb.end() && p != pos.at(opposite)) target = p;
                auto it = pos.find(w);
                if (it == pos.end()) {
                    pos[w] = *target;
                } else if (it->second != *target) {
                    throw TheoryViolation(fmt::format("unfolding places vertex {} at {} and {}", w, it->second.str(),
                                                      target->str()));
                }
                if (!done[u]) {
                    done[u] = 1;
                    queue.push_back(u);
                }
            }
        }
    }
    if (pos.size() != x.vertexCount()) throw TheoryViolation("unfolding did not reach every vertex");
    std::set<LatticePoint> used;
    for (const auto& [v, p] : pos)
        if (!used.insert(p).second) throw TheoryViolation(fmt::format("two vertices land on {}", p.str()));
    Metric m(x);
    for (const auto& [a, pa] : pos) {
        const auto& row = m.row(a);
        for (const auto& [b, pb] : pos) {
            if (b <= a) continue;
            if (row[x.index(b)] != latticeDistance(pa, pb))
                throw TheoryViolation(fmt::format("distance {}-{} is {} in the disc but {} in the plane", a, b,
                                                  row[x.index(b)], latticeDistance(pa, pb)));
        }
    }
    return pos;
}

// ---------------------------------------------------------------------------
// Geodesics in stacked-trapezoid regions

bool GenCharDisc::contains(const LatticePoint& p) const {
    if (p.row < firstRow || p.row > lastRow()) return false;
    const auto& [l, r] = at(p.row);
    return l <= p.x && p.x <= r;
}

long double PolyPath::length() const {
    long double total = 0;
    std::vector<int> corners{firstRow};
    corners.insert(corners.end(), bends.begin(), bends.end());
    corners.push_back(lastRow());
    for (std::size_t i = 0; i + 1 < corners.size(); ++i) {
        const long double dx = toDouble(at(corners[i + 1]) - at(corners[i]));
        const long double dr = corners[i + 1] - corners[i];
        total += std::sqrt(dx * dx + 0.75L * dr * dr);
    }
    return total;
}

PolyPath PolyPath::reversedRows() const {
    PolyPath r = *this;
    std::reverse(r.xs.begin(), r.xs.end());
    for (int& b : r.bends) b = firstRow + lastRow() - b;
    std::reverse(r.bends.begin(), r.bends.end());
    return r;
}

PolyPath polygonGeodesic(const GenCharDisc& d, const LatticePoint& p, const LatticePoint& q) {
    if (d.rows.empty()) throw std::invalid_argument("empty region");
    for (const auto& [l, r] : d.rows)
        if (r < l) throw std::invalid_argument("row with left end beyond right end");
    if (p.row != d.firstRow || !d.contains(p)) throw std::invalid_argument("start point outside the first row");
    if (q.row != d.lastRow() || !d.contains(q)) throw std::invalid_argument("end point outside the last row");

    const int last = d.lastRow();
    auto doorLeft = [&](int k) { return k == last ? q.x : d.at(k).first; };
    auto doorRight = [&](int k) { return k == last ? q.x : d.at(k).second; };

    // The path is monotone in rows. From each apex keep the cone of slopes
    // (dx per row) that pass every door seen so far; when a door falls
    // outside the cone, the path bends at the door corner that bounded it.
    std::vector<LatticePoint> corners{p};
    LatticePoint apex = p;
    while (apex.row < last) {
        Rational lo, hi;
        int loRow = -1, hiRow = -1;
        std::optional<LatticePoint> bend;
        for (int k = apex.row + 1; k <= last; ++k) {
            const Rational dr(k - apex.row);
            const Rational nl = (doorLeft(k) - apex.x) / dr;
            const Rational nh = (doorRight(k) - apex.x) / dr;
            if (loRow >= 0 && nl > hi) {
                bend = LatticePoint{hiRow, doorRight(hiRow)};
                break;
            }
            if (hiRow >= 0 && nh < lo) {
                bend = LatticePoint{loRow, doorLeft(loRow)};
                break;
            }
            if (loRow < 0 || nl >= lo) {
                lo = nl;
                loRow = k;
            }
            if (hiRow < 0 || nh <= hi) {
                hi = nh;
                hiRow = k;
            }
        }
        apex = bend ? *bend : q;
        corners.push_back(apex);
    }

    PolyPath path;
    path.firstRow = p.row;
    path.xs.assign(static_cast<std::size_t>(last - p.row) + 1, Rational(0));
    path.xs[0] = p.x;
    for (std::size_t c = 0; c + 1 < corners.size(); ++c) {
        const auto& a = corners[c];
        const auto& b = corners[c + 1];
        for (int k = a.row + 1; k <= b.row; ++k)
            path.xs[static_cast<std::size_t>(k - p.row)] = a.x + (b.x - a.x) * Rational(k - a.row, b.row - a.row);
        if (c + 2 < corners.size()) path.bends.push_back(b.row);
    }
    // A corner collinear with its neighbours is not a bend.
    std::erase_if(path.bends, [&](int row) {
        const Rational before = path.at(row) - path.at(row - 1);
        const Rational after = path.at(row + 1) - path.at(row);
        return before == after;
    });
    return path;
}

Rational dClose(const PolyPath& a, const PolyPath& b) {
    if (a.firstRow != b.firstRow || a.xs.size() != b.xs.size())
        throw std::invalid_argument("paths cover different rows");
    Rational best(0);
    for (std::size_t k = 0; k < a.xs.size(); ++k) best = std::max(best, abs(a.xs[k] - b.xs[k]));
    return best;
}

}  // namespace systolic
