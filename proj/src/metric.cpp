#include "systolic/metric.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

#include <fmt/format.h>

namespace systolic {

namespace {

std::vector<int> bfs(const FlagComplex& x, std::span<const VertexId> sources) {
    std::vector<int> d(x.vertexCount(), kUnreachable);
    std::deque<std::size_t> queue;
    for (VertexId s : sources) {
        std::size_t i = x.index(s);
        if (d[i] != 0) {
            d[i] = 0;
            queue.push_back(i);
        }
    }
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (VertexId b : x.neighborsAt(i)) {
            std::size_t j = x.index(b);
            if (d[j] == kUnreachable) {
                d[j] = d[i] + 1;
                queue.push_back(j);
            }
        }
    }
    return d;
}

}  // namespace

const std::vector<int>& Metric::row(VertexId v) const {
    const std::size_t i = x_->index(v);
    {
        std::shared_lock lock(mu_);
        auto it = rows_.find(i);
        if (it != rows_.end()) return *it->second;
    }
    auto fresh = std::make_unique<const std::vector<int>>(bfs(*x_, std::span<const VertexId>(&v, 1)));
    std::unique_lock lock(mu_);
    auto [it, inserted] = rows_.try_emplace(i, std::move(fresh));
    return *it->second;
}

std::vector<int> Metric::distancesFrom(std::span<const VertexId> sources) const {
    if (sources.size() == 1) return row(sources[0]);
    return bfs(*x_, sources);
}

int Metric::dist(VertexId a, VertexId b) const {
    int d = row(a)[x_->index(b)];
    if (d == kUnreachable) throw std::runtime_error(fmt::format("vertices {} and {} are disconnected", a, b));
    return d;
}

int Metric::dist(std::span<const VertexId> a, std::span<const VertexId> b) const {
    if (a.empty() || b.empty()) throw std::invalid_argument("distance between empty sets");
    if (a.size() == 1 && b.size() == 1) return dist(a[0], b[0]);
    std::vector<int> d = distancesFrom(a);
    int best = kUnreachable;
    for (VertexId v : b) {
        int dv = d[x_->index(v)];
        if (dv != kUnreachable && (best == kUnreachable || dv < best)) best = dv;
    }
    if (best == kUnreachable) throw std::runtime_error("vertex sets lie in different components");
    return best;
}

int Metric::maxDist(std::span<const VertexId> a, std::span<const VertexId> b) const {
    int best = 0;
    for (VertexId u : a)
        for (VertexId v : b) best = std::max(best, dist(u, v));
    return best;
}

VertexSet Metric::ball(std::span<const VertexId> center, int radius) const {
    std::vector<int> d = distancesFrom(center);
    VertexSet out;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != kUnreachable && d[i] <= radius) out.push_back(x_->idAt(i));
    return out;
}

VertexSet Metric::sphere(std::span<const VertexId> center, int radius) const {
    std::vector<int> d = distancesFrom(center);
    VertexSet out;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] == radius) out.push_back(x_->idAt(i));
    return out;
}

bool Metric::isConvex(std::span<const VertexId> y) const {
    VertexSet members(y.begin(), y.end());
    members = normalized(std::move(members));
    std::vector<char> inY(x_->vertexCount(), 0);
    for (VertexId v : members) inY[x_->index(v)] = 1;
    for (std::size_t a = 0; a < members.size(); ++a) {
        const auto& du = row(members[a]);
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            const auto& dv = row(members[b]);
            const int d = du[x_->index(members[b])];
            if (d == kUnreachable) return false;
            for (std::size_t w = 0; w < du.size(); ++w) {
                if (!inY[w] && du[w] != kUnreachable && dv[w] != kUnreachable && du[w] + dv[w] == d) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

SimplexSequence SimplexSequence::reversed() const {
    SimplexSequence r = *this;
    std::reverse(r.simplices.begin(), r.simplices.end());
    return r;
}

std::string SimplexSequence::str() const {
    std::string out;
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        if (i) out += " ";
        out += simplices[i].str();
    }
    return out;
}

std::vector<Simplex> residue(const FlagComplex& x, const Simplex& sigma) {
    if (!x.isSimplex(sigma)) throw std::invalid_argument(fmt::format("{} is not a simplex", sigma.str()));
    FlagComplex lk = x.induced(x.commonNeighbors(sigma.vertices()));
    std::vector<Simplex> out{sigma};
    for (const Simplex& s : lk.simplices()) out.emplace_back(setUnion(sigma.vertices(), s.vertices()));
    std::sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

Simplex projection(const Metric& m, const Simplex& sigma, std::span<const VertexId> y) {
    const FlagComplex& x = m.complex();
    std::vector<int> dy = m.distancesFrom(y);
    for (VertexId v : sigma)
        if (dy[x.index(v)] != 1)
            throw std::invalid_argument(fmt::format("{} is not in the 1-sphere of the target", sigma.str()));
    VertexSet out;
    for (VertexId w : x.commonNeighbors(sigma.vertices()))
        if (dy[x.index(w)] == 0) out.push_back(w);
    if (out.empty() || !x.isClique(out))
        throw TheoryViolation(fmt::format("projection is not a simplex: projection of {} is {}", sigma.str(),
                                          formatSet(out)));
    return Simplex(std::move(out));
}

SimplexSequence directedGeodesic(const Metric& m, const Simplex& sigma, std::span<const VertexId> w) {
    const FlagComplex& x = m.complex();
    if (!x.isSimplex(sigma)) throw std::invalid_argument(fmt::format("{} is not a simplex", sigma.str()));
    std::vector<int> dw = m.distancesFrom(w);
    int lo = INT32_MAX, hi = -1;
    for (VertexId v : sigma) {
        int d = dw[x.index(v)];
        if (d == kUnreachable) throw std::runtime_error("source and target are disconnected");
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    if (hi - lo > 1) throw std::invalid_argument("simplex spans more than two spheres around the target");
    const int n = hi;

    SimplexSequence seq;
    seq.kind = SequenceKind::DirectedGeodesic;
    seq.simplices.push_back(sigma);
    int start = 1;
    if (lo != hi) {
        VertexSet lower;
        for (VertexId v : sigma)
            if (dw[x.index(v)] == n - 1) lower.push_back(v);
        seq.simplices.emplace_back(std::move(lower));
        start = 2;
    }
    for (int i = start; i <= n; ++i) {
        const Simplex& prev = seq.simplices.back();
        VertexSet next;
        for (VertexId u : x.commonNeighbors(prev.vertices()))
            if (dw[x.index(u)] == n - i) next.push_back(u);
        if (next.empty() || !x.isClique(next))
            throw TheoryViolation(fmt::format("projection is not a simplex: projection of {} onto B_{} is {}",
                                              prev.str(), n - i, formatSet(next)));
        seq.simplices.emplace_back(std::move(next));
    }
    return seq;
}

GeodesicEnumeration allGeodesics(const Metric& m, VertexId u, VertexId v, std::size_t cap) {
    const FlagComplex& x = m.complex();
    const auto& dv = m.row(v);
    const int n = m.dist(u, v);
    GeodesicEnumeration out;
    std::vector<VertexId> path{u};
    auto rec = [&](auto& self) -> void {
        if (out.truncated) return;
        VertexId last = path.back();
        if (last == v) {
            if (out.paths.size() >= cap) {
                out.truncated = true;
                return;
            }
            out.paths.push_back({path});
            return;
        }
        const int remaining = n - static_cast<int>(path.size()) + 1;
        for (VertexId w : x.neighbors(last)) {
            if (dv[x.index(w)] != remaining - 1) continue;
            path.push_back(w);
            self(self);
            path.pop_back();
        }
    };
    rec(rec);
    return out;
}

bool isGeodesic(const Metric& m, std::span<const VertexId> path) {
    if (path.empty()) return false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!m.complex().adjacent(path[i], path[i + 1])) return false;
    return m.dist(path.front(), path.back()) == static_cast<int>(path.size()) - 1;
}

}  // namespace systolic
