#pragma once

// Independent reference computations for tests. They use only the raw edge
// lists of complexes and plain arithmetic, never the library's algorithms.

#include <algorithm>
#include <cmath>
#include <array>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "systolic/charsurf.hpp"
#include "systolic/complex.hpp"
#include "systolic/flatgeom.hpp"

namespace oracle {

using systolic::FlagComplex;
using systolic::LatticePoint;
using systolic::Rational;
using systolic::VertexId;
using systolic::VertexSet;

using Graph = std::map<VertexId, std::set<VertexId>>;

inline Graph graphOf(const FlagComplex& x) {
    Graph g;
    for (VertexId v : x.vertices()) g[v];
    for (auto [a, b] : x.edges()) {
        g[a].insert(b);
        g[b].insert(a);
    }
    return g;
}

inline std::map<VertexId, int> bfs(const Graph& g, const std::vector<VertexId>& sources) {
    std::map<VertexId, int> d;
    std::deque<VertexId> q;
    for (VertexId s : sources)
        if (d.emplace(s, 0).second) q.push_back(s);
    while (!q.empty()) {
        const VertexId u = q.front();
        q.pop_front();
        for (VertexId w : g.at(u))
            if (d.emplace(w, d[u] + 1).second) q.push_back(w);
    }
    return d;
}

/// All-pairs distances; -1 when unreachable.
inline std::map<VertexId, std::map<VertexId, int>> allPairs(const Graph& g) {
    std::map<VertexId, std::map<VertexId, int>> out;
    for (const auto& [v, nbrs] : g) {
        auto d = bfs(g, {v});
        for (const auto& [w, _] : g) out[v][w] = d.count(w) ? d[w] : -1;
    }
    return out;
}

inline bool isClique(const Graph& g, const std::vector<VertexId>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (!g.at(vs[i]).count(vs[j])) return false;
    return true;
}

/// Lattice distance through axial hex coordinates q = x - row/2, r = row.
inline int hexDistance(const LatticePoint& a, const LatticePoint& b) {
    const Rational dq = (b.x - Rational(b.row, 2)) - (a.x - Rational(a.row, 2));
    const Rational dr(b.row - a.row);
    const Rational twice = abs(dq) + abs(dr) + abs(dq + dr);
    if (twice.denominator() != 1 || twice.numerator() % 2 != 0) throw std::logic_error("not lattice vertices");
    return static_cast<int>(twice.numerator() / 2);
}

/// Triangles via brute force over vertex triples.
inline std::vector<std::array<VertexId, 3>> triangles(const Graph& g) {
    std::vector<std::array<VertexId, 3>> out;
    for (const auto& [a, na] : g)
        for (VertexId b : na)
            if (b > a)
                for (VertexId c : g.at(b))
                    if (c > b && na.count(c)) out.push_back({a, b, c});
    return out;
}

/// Defect sum of a triangulated disc: 6 - t(v) inside, 3 - t(v) on the
/// boundary, where boundary vertices lie on an edge in exactly one triangle.
inline int defectSum(const FlagComplex& x) {
    const Graph g = graphOf(x);
    std::map<VertexId, int> t;
    std::map<std::pair<VertexId, VertexId>, int> edgeUse;
    for (auto [a, b, c] : triangles(g)) {
        ++t[a], ++t[b], ++t[c];
        ++edgeUse[{a, b}], ++edgeUse[{a, c}], ++edgeUse[{b, c}];
    }
    std::set<VertexId> boundary;
    for (auto [e, k] : edgeUse)
        if (k == 1) boundary.insert(e.first), boundary.insert(e.second);
    int sum = 0;
    for (const auto& [v, _] : g) sum += (boundary.count(v) ? 3 : 6) - t[v];
    return sum;
}

/// Whether some induced cycle of length in [minLen, maxLen] exists, by
/// extending induced paths from their smallest vertex.
inline bool hasInducedCycle(const Graph& g, int minLen, int maxLen) {
    std::vector<VertexId> path;
    std::set<VertexId> on;
    std::function<bool()> grow = [&]() -> bool {
        const VertexId start = path.front(), last = path.back();
        const int len = static_cast<int>(path.size());
        for (VertexId w : g.at(last)) {
            if (w < start || on.count(w)) continue;
            // w must see no interior path vertex and see start only to close.
            bool chord = false;
            for (std::size_t i = 1; i + 1 < path.size(); ++i)
                if (g.at(w).count(path[i])) chord = true;
            if (chord) continue;
            const bool closes = len >= 2 && g.at(w).count(start);
            if (closes) {
                if (len + 1 >= minLen && len + 1 <= maxLen && w > path[1]) return true;
                continue;
            }
            if (len + 1 >= maxLen) continue;
            path.push_back(w);
            on.insert(w);
            if (grow()) return true;
            on.erase(w);
            path.pop_back();
        }
        return false;
    };
    for (const auto& [v, _] : g) {
        path = {v};
        on = {v};
        if (grow()) return true;
    }
    return false;
}

/// Shortest path through a row-stacked region by enumerating, for each inner
/// row, whether the path bends at the left end, the right end, or crosses
/// freely. Returns the crossings of the unique shortest candidate.
inline std::vector<Rational> funnelBruteForce(const systolic::GenCharDisc& d, const LatticePoint& p,
                                              const LatticePoint& q) {
    const int rows = static_cast<int>(d.rows.size());
    const int inner = std::max(0, rows - 2);
    long double best = std::numeric_limits<long double>::infinity();
    std::vector<Rational> bestXs;
    std::vector<int> choice(static_cast<std::size_t>(inner), 0);
    auto value = [](const Rational& r) {
        return static_cast<long double>(r.numerator()) / static_cast<long double>(r.denominator());
    };
    for (;;) {
        std::vector<std::pair<int, Rational>> pins{{0, p.x}};
        for (int k = 0; k < inner; ++k) {
            const auto& row = d.rows[static_cast<std::size_t>(k + 1)];
            if (choice[static_cast<std::size_t>(k)] == 1) pins.emplace_back(k + 1, row.first);
            if (choice[static_cast<std::size_t>(k)] == 2) pins.emplace_back(k + 1, row.second);
        }
        if (rows > 1) pins.emplace_back(rows - 1, q.x);
        std::vector<Rational> xs(static_cast<std::size_t>(rows));
        long double length = 0;
        for (std::size_t s = 0; s + 1 < pins.size(); ++s) {
            const auto [r0, x0] = pins[s];
            const auto [r1, x1] = pins[s + 1];
            for (int r = r0; r <= r1; ++r) xs[static_cast<std::size_t>(r)] = x0 + (x1 - x0) * Rational(r - r0, r1 - r0);
            const long double dx = value(x1 - x0), dy = std::sqrt(3.0L) / 2 * (r1 - r0);
            length += std::sqrt(dx * dx + dy * dy);
        }
        if (rows == 1) xs[0] = p.x;
        bool inside = true;
        for (int r = 0; r < rows; ++r) {
            const auto& row = d.rows[static_cast<std::size_t>(r)];
            if (xs[static_cast<std::size_t>(r)] < row.first || row.second < xs[static_cast<std::size_t>(r)]) inside = false;
        }
        if (inside && length < best - 1e-12L) {
            best = length;
            bestXs = xs;
        }
        int k = 0;
        while (k < inner && choice[static_cast<std::size_t>(k)] == 2) choice[static_cast<std::size_t>(k++)] = 0;
        if (k == inner) break;
        ++choice[static_cast<std::size_t>(k)];
    }
    return bestXs;
}

/// Every characteristic surface on the disc: maps of disc vertices into
/// their layers, isometric on pairs of equal or consecutive rows, with row
/// ends in sigma_k and tau_k. Layers are recomputed from V = sigma_0 ∪ tau_0
/// and W = sigma_n ∪ tau_n.
inline std::set<std::vector<VertexId>> surfacesBruteForce(const FlagComplex& x, const systolic::CharDisc& cd,
                                                          const systolic::SimplexSequence& sigma,
                                                          const systolic::SimplexSequence& tau,
                                                          std::size_t cap = 100000) {
    const Graph g = graphOf(x);
    const std::size_t n = sigma.size() - 1;
    auto ends = [&](std::size_t k) {
        std::vector<VertexId> out(sigma[k].begin(), sigma[k].end());
        out.insert(out.end(), tau[k].begin(), tau[k].end());
        return out;
    };
    const auto fromV = bfs(g, ends(0)), fromW = bfs(g, ends(n));
    const Graph dg = graphOf(cd.disc.complex());
    const auto discDist = allPairs(dg);
    std::map<VertexId, std::map<VertexId, int>> xDist;
    auto distX = [&](VertexId a, VertexId b) {
        auto it = xDist.find(a);
        if (it == xDist.end()) it = xDist.emplace(a, bfs(g, {a})).first;
        return it->second.at(b);
    };
    std::vector<VertexId> order(dg.size());
    for (const auto& [v, _] : dg) order[v] = v;
    std::set<std::vector<VertexId>> out;
    std::vector<VertexId> image(order.size());
    std::function<void(std::size_t)> place = [&](std::size_t i) {
        if (out.size() >= cap) return;
        if (i == order.size()) {
            out.insert(image);
            return;
        }
        const VertexId d = order[i];
        const int row = cd.rowOf(d);
        const int pos = cd.posOf(d);
        for (const auto& [u, _] : g) {
            if (fromV.at(u) != row || fromW.at(u) != static_cast<int>(n) - row) continue;
            if (pos == 0 && !sigma[static_cast<std::size_t>(row)].contains(u)) continue;
            if (pos == cd.width(row) && !tau[static_cast<std::size_t>(row)].contains(u)) continue;
            bool ok = true;
            for (std::size_t e = 0; e < i && ok; ++e)
                if (std::abs(cd.rowOf(order[e]) - row) <= 1 && distX(image[order[e]], u) != discDist.at(d).at(order[e]))
                    ok = false;
            if (!ok) continue;
            image[d] = u;
            place(i + 1);
        }
    };
    place(0);
    return out;
}

}  // namespace oracle
