#include "systolic/generators.hpp"

#include <map>

#include <fmt/format.h>

#include "systolic/metric.hpp"

namespace systolic {

FlagComplex genFlatRegion(const std::vector<std::pair<Rational, Rational>>& rows, VertexId firstId, int firstRow) {
    if (rows.empty()) throw std::invalid_argument("no rows");
    std::map<std::pair<int, int>, VertexId> at;  // (row, 2x) -> id
    std::vector<VertexId> ids;
    VertexId next = firstId;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const int row = firstRow + static_cast<int>(k);
        const auto& [l, r] = rows[k];
        if (r < l) throw std::invalid_argument(fmt::format("row {}: left end beyond right end", row));
        if (!isLatticeVertex({row, l}) || !isLatticeVertex({row, r}))
            throw std::invalid_argument(fmt::format("row {}: endpoints {} {} are not lattice points", row,
                                                    toString(l), toString(r)));
        for (std::int64_t tx = twiceOf(l); tx <= twiceOf(r); tx += 2) {
            at[{row, static_cast<int>(tx)}] = next;
            ids.push_back(next++);
        }
    }
    std::vector<FlagComplex::Edge> edges;
    auto link = [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
        auto ia = at.find(a), ib = at.find(b);
        if (ia != at.end() && ib != at.end()) edges.emplace_back(ia->second, ib->second);
    };
    for (const auto& [key, id] : at) {
        auto [row, tx] = key;
        link(key, {row, tx + 2});
        link(key, {row + 1, tx - 1});
        link(key, {row + 1, tx + 1});
    }
    FlagComplex x = FlagComplex::fromEdges(edges, ids);
    for (const auto& [key, id] : at) x.setCoord(id, {key.first, key.second});
    try {
        (void)TriangulatedDisc::fromComplex(x);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(fmt::format("row specification does not give a disc: {}", e.what()));
    }
    return x;
}

FlagComplex genParallelogram(int width, int height) {
    std::vector<std::pair<Rational, Rational>> rows;
    for (int k = 0; k <= height; ++k) rows.emplace_back(Rational(k, 2), Rational(k, 2) + width);
    return genFlatRegion(rows);
}

FlagComplex genHexagon(int radius) {
    std::vector<std::pair<Rational, Rational>> rows;
    for (int r = -radius; r <= radius; ++r) {
        const int qLo = std::max(-radius, -radius - r), qHi = std::min(radius, radius - r);
        const Rational shift = Rational(r + radius, 2);
        rows.emplace_back(Rational(qLo) + shift, Rational(qHi) + shift);
    }
    return genFlatRegion(rows);
}

FlagComplex genRandomFlatRegion(std::mt19937_64& rng, int rowCount, int maxWidth) {
    if (rowCount < 2 || maxWidth < 1) throw std::invalid_argument("need at least two rows of width >= 1");
    std::uniform_int_distribution<int> width(1, maxWidth);
    std::vector<std::pair<Rational, Rational>> rows;
    rows.emplace_back(Rational(0), Rational(width(rng)));
    for (int k = 1; k < rowCount; ++k) {
        const auto [l, r] = rows.back();
        std::vector<std::pair<Rational, Rational>> options;
        for (int a : {-1, 1})
            for (int b : {-1, 1}) {
                Rational nl = l + Rational(a, 2), nr = r + Rational(b, 2);
                if (nr - nl >= 1 && nr - nl <= maxWidth) options.emplace_back(nl, nr);
            }
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        rows.push_back(options[pick(rng)]);
    }
    return genFlatRegion(rows);
}

namespace {

std::optional<FlagComplex> growDisc(std::mt19937_64& rng, int rings, double p7) {
    std::bernoulli_distribution seven(p7);
    std::vector<FlagComplex::Edge> edges;
    std::map<VertexId, int> degree;
    auto connect = [&](VertexId a, VertexId b) {
        edges.emplace_back(a, b);
        ++degree[a];
        ++degree[b];
    };
    VertexId next = 0;
    const VertexId center = next++;
    const int spokes = seven(rng) ? 7 : 6;
    std::vector<VertexId> boundary;
    for (int i = 0; i < spokes; ++i) boundary.push_back(next++);
    for (int i = 0; i < spokes; ++i) {
        connect(center, boundary[static_cast<std::size_t>(i)]);
        connect(boundary[static_cast<std::size_t>(i)], boundary[static_cast<std::size_t>((i + 1) % spokes)]);
    }
    for (int ring = 2; ring <= rings; ++ring) {
        const std::size_t m = boundary.size();
        std::vector<int> extra(m);
        for (std::size_t i = 0; i < m; ++i) {
            const int target = seven(rng) ? 7 : 6;
            extra[i] = target - degree[boundary[i]];
            if (extra[i] < 2) return std::nullopt;
        }
        // Block i holds the new neighbours of boundary[i] except the last one,
        // which is the first vertex of block i+1.
        std::vector<std::vector<VertexId>> blocks(m);
        for (std::size_t i = 0; i < m; ++i)
            for (int t = 0; t + 1 < extra[i]; ++t) blocks[i].push_back(next++);
        std::vector<VertexId> ring_;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<VertexId> nbrs = blocks[i];
            nbrs.push_back(blocks[(i + 1) % m].front());
            for (VertexId u : nbrs) connect(boundary[i], u);
            ring_.insert(ring_.end(), blocks[i].begin(), blocks[i].end());
        }
        for (std::size_t i = 0; i < ring_.size(); ++i) connect(ring_[i], ring_[(i + 1) % ring_.size()]);
        boundary = std::move(ring_);
    }
    FlagComplex x = FlagComplex::fromEdges(edges);
    try {
        (void)TriangulatedDisc::fromComplex(x);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
    if (!isLocally6Large(x)) return std::nullopt;
    return x;
}

}  // namespace

FlagComplex genDiscWithDegrees(std::mt19937_64& rng, int rings, double p7) {
    if (rings < 1) throw std::invalid_argument("need at least one ring");
    for (int attempt = 0; attempt < 100; ++attempt)
        if (auto x = growDisc(rng, rings, p7)) return *x;
    throw std::runtime_error("disc generation kept failing validation");
}

FlagComplex addTwins(const FlagComplex& x, std::span<const VertexId> vertices) {
    Metric m(x);
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (m.dist(vertices[a], vertices[b]) < 3)
                throw std::invalid_argument(
                    fmt::format("twinned vertices {} and {} are closer than 3", vertices[a], vertices[b]));
    std::vector<FlagComplex::Edge> edges = x.edges();
    VertexSet ids = x.vertices();
    VertexId next = ids.empty() ? 0 : ids.back() + 1;
    for (VertexId v : vertices) {
        const VertexId twin = next++;
        ids.push_back(twin);
        edges.emplace_back(v, twin);
        for (VertexId u : x.neighbors(v)) edges.emplace_back(u, twin);
    }
    FlagComplex out = FlagComplex::fromEdges(edges, ids);
    for (const auto& [v, c] : x.coords()) out.setCoord(v, c);
    return out;
}

FlagComplex addRandomTwins(std::mt19937_64& rng, const FlagComplex& x, double p) {
    Metric m(x);
    std::bernoulli_distribution take(p);
    std::vector<VertexId> chosen;
    for (VertexId v : x.vertices()) {
        if (!take(rng)) continue;
        bool farEnough = true;
        for (VertexId u : chosen) farEnough = farEnough && m.dist(u, v) >= 3;
        if (farEnough) chosen.push_back(v);
    }
    return addTwins(x, chosen);
}

}  // namespace systolic
