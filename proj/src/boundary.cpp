#include "systolic/boundary.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include <boost/pending/disjoint_sets.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

namespace systolic {

const std::vector<Simplex>& EucGeodesicCache::between(VertexId a, VertexId b) const {
    const auto key = std::make_pair(a, b);
    {
        std::lock_guard lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
    }
    auto fresh = std::make_unique<const std::vector<Simplex>>(
        euclideanGeodesic(*m_, Simplex::vertex(a), Simplex::vertex(b)).deltas);
    std::lock_guard lock(mu_);
    auto [it, inserted] = cache_.try_emplace(key, std::move(fresh));
    return *it->second;
}

std::string GoodnessWitness::str() const {
    return fmt::format("position {} is at distance {} from the Euclidean geodesic between positions {} and {}", k,
                       value, i, j);
}

namespace {

int distanceToSimplex(const Metric& m, VertexId v, const Simplex& s) {
    int best = -1;
    for (VertexId u : s) {
        const int d = m.dist(v, u);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

// Checks every subsegment ending at position j. Records values in `cert` if
// given; returns the first violation.
std::optional<GoodnessWitness> checkEndingAt(const EucGeodesicCache& cache, std::span<const VertexId> path, int j,
                                             int c, GoodGeodesic* cert) {
    const Metric& m = cache.metric();
    for (int i = 0; i < j; ++i) {
        const auto& deltas = cache.between(path[static_cast<std::size_t>(i)], path[static_cast<std::size_t>(j)]);
        for (int k = i; k <= j; ++k) {
            const int value =
                distanceToSimplex(m, path[static_cast<std::size_t>(k)], deltas[static_cast<std::size_t>(k - i)]);
            if (cert) {
                cert->certificate[{i, j, k}] = value;
                cert->maxValue = std::max(cert->maxValue, value);
            }
            if (value > c + 1) return GoodnessWitness{i, j, k, value};
        }
    }
    return std::nullopt;
}

}  // namespace

GoodnessResult isGoodGeodesic(const EucGeodesicCache& cache, std::span<const VertexId> path, int c) {
    if (path.empty() || !isGeodesic(cache.metric(), path)) throw std::invalid_argument("path is not a geodesic");
    GoodGeodesic g;
    g.path.vertices.assign(path.begin(), path.end());
    g.c = c;
    GoodnessResult r;
    for (int j = 1; j < static_cast<int>(path.size()); ++j) {
        if (auto w = checkEndingAt(cache, path, j, c, &g)) {
            r.violation = *w;
            return r;
        }
    }
    r.good = std::move(g);
    return r;
}

GoodGeodesic makeGoodGeodesic(const EucGeodesicCache& cache, VertexId v, VertexId w, int c) {
    const std::vector<VertexId> path = threadGeodesic(cache.metric(), cache.between(v, w));
    GoodnessResult r = isGoodGeodesic(cache, path, c);
    if (!r.good) throw TheoryViolation("threaded Euclidean geodesic is not good: " + r.violation->str());
    return std::move(*r.good);
}

std::vector<Rational> defaultCSamples() {
    std::vector<Rational> out;
    for (int i = 0; i <= 8; ++i) out.emplace_back(i, 8);
    return out;
}

namespace {

std::size_t floorIndex(const Rational& c, std::size_t n) {
    return static_cast<std::size_t>(floorOf(c * static_cast<std::int64_t>(n)));
}

}  // namespace

ExcessResult divergenceExcess(const Metric& m, std::span<const VertexId> v, std::span<const VertexId> w,
                              const std::vector<Rational>& cSamples) {
    if (v.empty() || w.empty() || v.front() != w.front()) throw std::invalid_argument("paths must share a basepoint");
    const std::size_t n = v.size() - 1, mm = w.size() - 1;
    const int far = m.dist(v.back(), w.back());
    ExcessResult r;
    bool first = true;
    for (const Rational& c : cSamples) {
        const Rational excess = Rational(m.dist(v[floorIndex(c, n)], w[floorIndex(c, mm)])) - c * far;
        if (first || excess > r.maxExcess) {
            r.maxExcess = excess;
            r.atC = c;
            first = false;
        }
    }
    return r;
}

ExcessResult contractingCheck(const EucGeodesicCache& cache, VertexId t, VertexId s, VertexId s2,
                              const std::vector<Rational>& cSamples) {
    const Metric& m = cache.metric();
    const std::vector<VertexId> r = threadGeodesic(m, cache.between(t, s));
    const std::vector<VertexId> r2 = threadGeodesic(m, cache.between(t, s2));
    return divergenceExcess(m, r, r2, cSamples);
}

int prefixExcess(const Metric& m, std::span<const VertexId> v, std::span<const VertexId> w) {
    if (v.empty() || w.empty() || v.front() != w.front()) throw std::invalid_argument("paths must share a basepoint");
    // max over N <= min(k, l) of |v_N w_N| is a running maximum.
    std::vector<int> prefixMax(std::min(v.size(), w.size()));
    for (std::size_t i = 0; i < prefixMax.size(); ++i)
        prefixMax[i] = std::max(i ? prefixMax[i - 1] : 0, m.dist(v[i], w[i]));
    int best = std::numeric_limits<int>::min();
    for (std::size_t k = 0; k < v.size(); ++k)
        for (std::size_t l = 0; l < w.size(); ++l)
            best = std::max(best, prefixMax[std::min(k, l)] - 2 * m.dist(v[k], w[l]));
    return best;
}

RayComparison raysEquivalentTruncated(const Metric& m, std::span<const VertexId> a, std::span<const VertexId> b,
                                      int d) {
    if (a.empty() || b.empty() || a.front() != b.front()) throw std::invalid_argument("rays must share a basepoint");
    if (a.size() != b.size()) throw std::invalid_argument("rays differ in length");
    RayComparison r;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (m.dist(a[i], b[i]) > d) {
            r.equivalentSoFar = false;
            r.witness = static_cast<int>(i);
            break;
        }
    return r;
}

bool inStandardNeighborhood(const Metric& m, std::span<const VertexId> zeta, std::span<const VertexId> eta, int n,
                            int r, int d) {
    if (r <= d) throw std::invalid_argument(fmt::format("tolerance {} must exceed {}", r, d));
    if (n < 1) throw std::invalid_argument("radius must be at least 1");
    if (zeta.empty() || eta.empty() || zeta.front() != eta.front())
        throw std::invalid_argument("rays must share a basepoint");
    if (zeta.size() <= static_cast<std::size_t>(n) || eta.size() <= static_cast<std::size_t>(n))
        throw std::invalid_argument("ray shorter than the radius");
    return m.dist(zeta[static_cast<std::size_t>(n)], eta[static_cast<std::size_t>(n)]) <= r;
}

// ---------------------------------------------------------------------------
// Atlas

namespace {

struct Branch {
    std::vector<std::vector<VertexId>> rays;
    std::size_t rejected = 0;
    bool capped = false;
};

Branch enumerateBranch(const EucGeodesicCache& cache, VertexId basepoint, VertexId firstStep, int radius,
                       const AtlasOptions& opt) {
    const Metric& m = cache.metric();
    const FlagComplex& x = m.complex();
    const auto& fromBase = m.row(basepoint);
    Branch out;
    std::vector<VertexId> path{basepoint, firstStep};
    auto extend = [&](auto& self) -> void {
        if (out.capped) return;
        const int len = static_cast<int>(path.size()) - 1;
        if (checkEndingAt(cache, path, len, opt.c, nullptr)) {
            ++out.rejected;
            return;
        }
        if (len == radius) {
            if (out.rays.size() >= opt.cap) {
                out.capped = true;
                return;
            }
            out.rays.push_back(path);
            return;
        }
        for (VertexId u : x.neighbors(path.back())) {
            if (fromBase[x.index(u)] != len + 1) continue;
            path.push_back(u);
            self(self);
            path.pop_back();
            if (out.capped) return;
        }
    };
    extend(extend);
    return out;
}

}  // namespace

BoundaryAtlas boundaryAtlas(const EucGeodesicCache& cache, VertexId basepoint, int radius, const AtlasOptions& opt) {
    const Metric& m = cache.metric();
    const FlagComplex& x = m.complex();
    if (radius < 0) throw std::invalid_argument("negative radius");
    BoundaryAtlas atlas;
    atlas.basepoint = basepoint;
    atlas.radius = radius;
    atlas.c = opt.c;
    atlas.d = opt.d;
    if (radius == 0) {
        atlas.rays.push_back({basepoint});
    } else {
        std::vector<std::future<Branch>> tasks;
        for (VertexId u : x.neighbors(basepoint))
            tasks.push_back(std::async(std::launch::async, enumerateBranch, std::cref(cache), basepoint, u, radius,
                                       std::cref(opt)));
        for (auto& t : tasks) {
            Branch b = t.get();
            atlas.rejected += b.rejected;
            for (auto& r : b.rays) {
                if (atlas.rays.size() >= opt.cap) {
                    atlas.partial = true;
                    break;
                }
                atlas.rays.push_back(std::move(r));
            }
            atlas.partial = atlas.partial || b.capped;
        }
    }

    const std::size_t count = atlas.rays.size();
    auto related = [&](std::size_t a, std::size_t b) {
        return raysEquivalentTruncated(m, atlas.rays[a], atlas.rays[b], opt.d).equivalentSoFar;
    };
    std::vector<std::size_t> rank(count), parent(count);
    boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
    for (std::size_t a = 0; a < count; ++a) sets.make_set(a);
    std::vector<std::vector<bool>> rel;
    const bool keepRelation = count <= kTransitivityLimit;
    if (keepRelation) rel.assign(count, std::vector<bool>(count, false));
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = a; b < count; ++b) {
            const bool r = a == b || related(a, b);
            if (keepRelation) rel[a][b] = rel[b][a] = r;
            if (r) sets.union_set(a, b);
        }
    if (keepRelation) {
        std::size_t bad = 0;
        for (std::size_t b = 0; b < count; ++b)
            for (std::size_t a = 0; a < count; ++a) {
                if (a == b || !rel[a][b]) continue;
                for (std::size_t c = a + 1; c < count; ++c)
                    if (c != b && rel[b][c] && !rel[a][c]) ++bad;
            }
        atlas.transitivityViolations = bad;
    }

    for (std::size_t a = 0; a < count; ++a) {
        bool apart = true;
        for (std::size_t b : atlas.separated)
            if (keepRelation ? rel[a][b] : related(a, b)) {
                apart = false;
                break;
            }
        if (apart) atlas.separated.push_back(a);
    }

    std::map<std::size_t, int> classIndex;
    atlas.classOf.resize(count);
    for (std::size_t a = 0; a < count; ++a) {
        const std::size_t root = sets.find_set(a);
        auto [it, inserted] = classIndex.try_emplace(root, static_cast<int>(atlas.representatives.size()));
        if (inserted) atlas.representatives.push_back(a);
        atlas.classOf[a] = it->second;
    }
    const std::size_t k = atlas.representatives.size();
    atlas.representativeDistance.assign(k, std::vector<int>(k, 0));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            atlas.representativeDistance[a][b] =
                m.dist(atlas.rays[atlas.representatives[a]].back(), atlas.rays[atlas.representatives[b]].back());
    return atlas;
}

namespace {

std::string joinPath(const std::vector<VertexId>& p) { return fmt::format("{}", fmt::join(p, " ")); }

}  // namespace

std::string BoundaryAtlas::text() const {
    std::string out = fmt::format("basepoint {} radius {} C {} D {}\n", basepoint, radius, c, d);
    out += fmt::format("rays {}{} rejected-prefixes {} classes {}\n", rays.size(), partial ? " (partial: cap reached)" : "",
                       rejected, classCount());
    out += transitivityViolations ? fmt::format("transitivity-violations {}\n", *transitivityViolations)
                                  : std::string("transitivity-violations not-computed\n");
    out += fmt::format("separated-directions {}\n", separated.size());
    for (std::size_t k = 0; k < representatives.size(); ++k) {
        std::size_t members = 0;
        for (int c : classOf) members += static_cast<std::size_t>(c) == k;
        out += fmt::format("class {} members {} representative {}\n", k, members, joinPath(rays[representatives[k]]));
    }
    out += "representative distances\n";
    for (const auto& row : representativeDistance) out += fmt::format("{}\n", fmt::join(row, " "));
    return out;
}

std::string BoundaryAtlas::json() const {
    nlohmann::ordered_json j;
    j["basepoint"] = basepoint;
    j["radius"] = radius;
    j["C"] = c;
    j["D"] = d;
    j["partial"] = partial;
    j["rejectedPrefixes"] = rejected;
    j["transitivityViolations"] =
        transitivityViolations ? nlohmann::ordered_json(*transitivityViolations) : nlohmann::ordered_json(nullptr);
    j["separatedDirections"] = separated;
    j["rays"] = rays;
    nlohmann::ordered_json classes = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < representatives.size(); ++k) {
        std::vector<std::size_t> members;
        for (std::size_t a = 0; a < classOf.size(); ++a)
            if (static_cast<std::size_t>(classOf[a]) == k) members.push_back(a);
        nlohmann::ordered_json cls;
        cls["representative"] = representatives[k];
        cls["members"] = members;
        classes.push_back(std::move(cls));
    }
    j["classes"] = std::move(classes);
    j["representativeDistance"] = representativeDistance;
    return j.dump(2) + "\n";
}

}  // namespace systolic
