#include "systolic/complex.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

namespace systolic {

VertexSet normalized(VertexSet vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

bool isSubset(std::span<const VertexId> a, std::span<const VertexId> b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VertexSet setUnion(std::span<const VertexId> a, std::span<const VertexId> b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet setIntersection(std::span<const VertexId> a, std::span<const VertexId> b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::string formatSet(std::span<const VertexId> vs) {
    return fmt::format("{{{}}}", fmt::join(vs, ","));
}

Simplex::Simplex(VertexSet vertices) : v_(normalized(std::move(vertices))) {
    if (v_.empty()) throw std::invalid_argument("simplex must be nonempty");
}

bool Simplex::contains(VertexId v) const { return std::binary_search(v_.begin(), v_.end(), v); }

// ---------------------------------------------------------------------------
// FlagComplex

FlagComplex FlagComplex::fromEdges(std::span<const Edge> edges, std::span<const VertexId> extraVertices) {
    FlagComplex x;
    VertexSet ids(extraVertices.begin(), extraVertices.end());
    for (const auto& [a, b] : edges) {
        if (a == b) throw std::invalid_argument(fmt::format("self-loop at vertex {}", a));
        ids.push_back(a);
        ids.push_back(b);
    }
    x.ids_ = normalized(std::move(ids));
    x.adj_.assign(x.ids_.size(), {});
    for (const auto& [a, b] : edges) {
        x.adj_[x.index(a)].push_back(b);
        x.adj_[x.index(b)].push_back(a);
    }
    std::size_t total = 0;
    for (auto& nb : x.adj_) {
        nb = normalized(std::move(nb));
        total += nb.size();
    }
    x.edgeCount_ = total / 2;
    return x;
}

bool FlagComplex::hasVertex(VertexId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

std::size_t FlagComplex::index(VertexId v) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) throw std::invalid_argument(fmt::format("vertex {} not in complex", v));
    return static_cast<std::size_t>(it - ids_.begin());
}

bool FlagComplex::adjacent(VertexId a, VertexId b) const {
    if (a == b || !hasVertex(a)) return false;
    const auto& nb = adj_[index(a)];
    return std::binary_search(nb.begin(), nb.end(), b);
}

bool FlagComplex::isClique(std::span<const VertexId> vs) const {
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!hasVertex(vs[i])) return false;
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (!adjacent(vs[i], vs[j])) return false;
    }
    return !vs.empty();
}

VertexSet FlagComplex::commonNeighbors(std::span<const VertexId> vs) const {
    if (vs.empty()) return ids_;
    VertexSet out = neighbors(vs[0]);
    for (std::size_t i = 1; i < vs.size() && !out.empty(); ++i) out = setIntersection(out, neighbors(vs[i]));
    return out;
}

std::vector<FlagComplex::Edge> FlagComplex::edges() const {
    std::vector<Edge> out;
    out.reserve(edgeCount_);
    for (std::size_t i = 0; i < ids_.size(); ++i)
        for (VertexId b : adj_[i])
            if (b > ids_[i]) out.emplace_back(ids_[i], b);
    return out;
}

void FlagComplex::forEachClique(int maxSize, const auto& fn) const {
    VertexSet clique;
    auto rec = [&](auto& self, const VertexSet& candidates) -> void {
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            clique.push_back(candidates[c]);
            fn(clique);
            if (static_cast<int>(clique.size()) < maxSize) {
                VertexSet rest(candidates.begin() + static_cast<std::ptrdiff_t>(c) + 1, candidates.end());
                VertexSet next = setIntersection(rest, neighbors(candidates[c]));
                if (!next.empty()) self(self, next);
            }
            clique.pop_back();
        }
    };
    rec(rec, ids_);
}

std::vector<Simplex> FlagComplex::simplices(int maxDimension) const {
    std::vector<Simplex> out;
    forEachClique(maxDimension + 1, [&](const VertexSet& c) { out.emplace_back(c); });
    std::stable_sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<Simplex> FlagComplex::simplicesOfDimension(int dim) const {
    std::vector<Simplex> out;
    forEachClique(dim + 1, [&](const VertexSet& c) {
        if (static_cast<int>(c.size()) == dim + 1) out.emplace_back(c);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> FlagComplex::maximalSimplices() const {
    std::vector<Simplex> out;
    forEachClique(static_cast<int>(ids_.size()), [&](const VertexSet& c) {
        if (commonNeighbors(c).empty()) out.emplace_back(c);
    });
    std::sort(out.begin(), out.end());
    return out;
}

FlagComplex FlagComplex::induced(std::span<const VertexId> vs) const {
    VertexSet keep(vs.begin(), vs.end());
    keep = normalized(std::move(keep));
    std::vector<Edge> es;
    for (VertexId a : keep) {
        for (VertexId b : neighbors(a))
            if (b > a && std::binary_search(keep.begin(), keep.end(), b)) es.emplace_back(a, b);
    }
    FlagComplex sub = fromEdges(es, keep);
    for (VertexId v : keep)
        if (auto c = coord(v)) sub.coords_[v] = *c;
    return sub;
}

bool FlagComplex::isConnected() const {
    if (ids_.empty()) return true;
    std::vector<char> seen(ids_.size(), 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (VertexId b : adj_[i]) {
            std::size_t j = index(b);
            if (!seen[j]) {
                seen[j] = 1;
                ++count;
                queue.push_back(j);
            }
        }
    }
    return count == ids_.size();
}

void FlagComplex::setCoord(VertexId v, LatticeCoord c) { coords_[v] = c; }

std::optional<LatticeCoord> FlagComplex::coord(VertexId v) const {
    auto it = coords_.find(v);
    if (it == coords_.end()) return std::nullopt;
    return it->second;
}

bool FullSubcomplex::contains(VertexId v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

FlagComplex buildFlagComplex(std::span<const FlagComplex::Edge> edges) { return FlagComplex::fromEdges(edges); }

FlagComplex link(const FlagComplex& x, const Simplex& sigma) {
    if (!x.isSimplex(sigma)) throw std::invalid_argument(fmt::format("{} is not a simplex", sigma.str()));
    return x.induced(x.commonNeighbors(sigma.vertices()));
}

// ---------------------------------------------------------------------------
// Largeness

std::optional<std::vector<VertexId>> findInducedCycle(const FlagComplex& x, int minLen, int maxLen,
                                                      bool* capReached) {
    if (capReached) *capReached = false;
    if (maxLen < 3 || maxLen < minLen) return std::nullopt;
    std::vector<VertexId> path;
    std::optional<std::vector<VertexId>> found;

    // Extends an induced path whose vertices all exceed path[0].
    auto extend = [&](auto& self) -> bool {
        const VertexId start = path.front();
        const VertexId last = path.back();
        for (VertexId w : x.neighbors(last)) {
            if (w <= start) continue;
            if (std::find(path.begin(), path.end(), w) != path.end()) continue;
            bool chord = false;
            for (std::size_t i = 1; i + 1 < path.size(); ++i) {
                if (x.adjacent(w, path[i])) {
                    chord = true;
                    break;
                }
            }
            if (chord) continue;
            const int cycleLen = static_cast<int>(path.size()) + 1;
            if (path.size() >= 2 && x.adjacent(w, start)) {
                if (cycleLen >= minLen && cycleLen <= maxLen) {
                    path.push_back(w);
                    found = path;
                    return true;
                }
                continue;
            }
            if (cycleLen >= maxLen) {
                if (capReached) *capReached = true;
                continue;
            }
            path.push_back(w);
            if (self(self)) return true;
            path.pop_back();
        }
        return false;
    };

    for (VertexId s : x.vertices()) {
        path.assign(1, s);
        if (extend(extend)) return found;
    }
    return std::nullopt;
}

LargenessResult isKLarge(const FlagComplex& x, int k, int cycleCap) {
    LargenessResult r;
    int maxLen = 0;
    if (k == kInfinity) {
        maxLen = cycleCap;
    } else {
        if (k < 4) throw std::invalid_argument("k must be at least 4");
        maxLen = k - 1;
    }
    bool capped = false;
    if (auto cyc = findInducedCycle(x, 4, maxLen, &capped)) {
        r.ok = false;
        r.witness = std::move(*cyc);
    }
    r.capReached = (k == kInfinity) && capped;
    return r;
}

LocalLargenessResult isLocally6Large(const FlagComplex& x) {
    LocalLargenessResult r;
    for (const Simplex& s : x.simplices()) {
        VertexSet nb = x.commonNeighbors(s.vertices());
        if (nb.size() < 4) continue;
        FlagComplex lk = x.induced(nb);
        if (auto cyc = findInducedCycle(lk, 4, 5)) {
            r.ok = false;
            r.simplex = s;
            r.cycle = std::move(*cyc);
            return r;
        }
    }
    return r;
}

SimpleConnectivity isSimplyConnectedHeuristic(const FlagComplex& x) {
    if (x.vertexCount() == 0 || !x.isConnected()) return SimpleConnectivity::Unknown;

    const auto edges = x.edges();
    const auto tris = x.triangles();
    std::map<FlagComplex::Edge, std::size_t> edgeIndex;
    for (std::size_t i = 0; i < edges.size(); ++i) edgeIndex[edges[i]] = i;

    std::vector<std::array<std::size_t, 3>> triEdges(tris.size());
    std::vector<std::vector<std::size_t>> edgeTris(edges.size());
    for (std::size_t t = 0; t < tris.size(); ++t) {
        const auto& v = tris[t].vertices();
        triEdges[t] = {edgeIndex.at({v[0], v[1]}), edgeIndex.at({v[0], v[2]}), edgeIndex.at({v[1], v[2]})};
        for (std::size_t e : triEdges[t]) edgeTris[e].push_back(t);
    }

    std::vector<char> triAlive(tris.size(), 1), edgeAlive(edges.size(), 1);
    std::vector<int> edgeTriCount(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) edgeTriCount[e] = static_cast<int>(edgeTris[e].size());
    std::map<VertexId, int> vertexEdgeCount;
    for (VertexId v : x.vertices()) vertexEdgeCount[v] = static_cast<int>(x.degree(v));
    std::size_t aliveVertices = x.vertexCount(), aliveEdges = edges.size(), aliveTris = tris.size();

    std::vector<std::size_t> vertexEdges;  // scratch
    bool progress = true;
    while (progress) {
        progress = false;
        // Free edges: faces of exactly one triangle.
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!edgeAlive[e] || edgeTriCount[e] != 1) continue;
            for (std::size_t t : edgeTris[e]) {
                if (!triAlive[t]) continue;
                triAlive[t] = 0;
                --aliveTris;
                for (std::size_t f : triEdges[t]) --edgeTriCount[f];
            }
            edgeAlive[e] = 0;
            --aliveEdges;
            --vertexEdgeCount[edges[e].first];
            --vertexEdgeCount[edges[e].second];
            progress = true;
        }
        // Free vertices: faces of exactly one edge, which then lies in no triangle.
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!edgeAlive[e] || edgeTriCount[e] != 0) continue;
            auto [a, b] = edges[e];
            VertexId leaf = 0;
            if (vertexEdgeCount[a] == 1) {
                leaf = a;
            } else if (vertexEdgeCount[b] == 1) {
                leaf = b;
            } else {
                continue;
            }
            edgeAlive[e] = 0;
            --aliveEdges;
            --vertexEdgeCount[a];
            --vertexEdgeCount[b];
            vertexEdgeCount[leaf] = -1;
            --aliveVertices;
            progress = true;
        }
    }
    return (aliveVertices == 1 && aliveEdges == 0 && aliveTris == 0) ? SimpleConnectivity::Verified
                                                                      : SimpleConnectivity::Unknown;
}

// ---------------------------------------------------------------------------
// Text format

FlagComplex parseComplex(std::string_view text) {
    std::vector<FlagComplex::Edge> edges;
    VertexSet verts;
    std::vector<std::pair<VertexId, LatticeCoord>> coords;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineNo = 0;
    auto parseId = [&](std::istringstream& ls) {
        long long v = -1;
        if (!(ls >> v) || v < 0 || v > static_cast<long long>(UINT32_MAX))
            throw std::invalid_argument(fmt::format("line {}: expected a nonnegative vertex id", lineNo));
        return static_cast<VertexId>(v);
    };
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            verts.push_back(parseId(ls));
        } else if (tag == "e") {
            VertexId a = parseId(ls);
            VertexId b = parseId(ls);
            edges.emplace_back(a, b);
        } else if (tag == "coord") {
            VertexId v = parseId(ls);
            LatticeCoord c;
            if (!(ls >> c.row >> c.twiceX))
                throw std::invalid_argument(fmt::format("line {}: coord needs <row> <2x>", lineNo));
            coords.emplace_back(v, c);
        } else {
            throw std::invalid_argument(fmt::format("line {}: unknown record '{}'", lineNo, tag));
        }
        std::string extra;
        if (ls >> extra && extra[0] != '#')
            throw std::invalid_argument(fmt::format("line {}: trailing token '{}'", lineNo, extra));
    }
    FlagComplex x = FlagComplex::fromEdges(edges, verts);
    for (const auto& [v, c] : coords) {
        if (!x.hasVertex(v)) throw std::invalid_argument(fmt::format("coord for unknown vertex {}", v));
        x.setCoord(v, c);
    }
    return x;
}

FlagComplex readComplexFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot open {}", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parseComplex(ss.str());
}

std::string serializeComplex(const FlagComplex& x) {
    std::string out = fmt::format("# flag complex: {} vertices, {} edges\n", x.vertexCount(), x.edgeCount());
    for (VertexId v : x.vertices()) out += fmt::format("v {}\n", v);
    for (const auto& [a, b] : x.edges()) out += fmt::format("e {} {}\n", a, b);
    for (const auto& [v, c] : x.coords()) out += fmt::format("coord {} {} {}\n", v, c.row, c.twiceX);
    return out;
}

}  // namespace systolic
