#include "systolic/charsurf.hpp"

#include <algorithm>
#include <random>

#include <fmt/format.h>

#include "systolic/generators.hpp"

namespace systolic {

LayerFrame::LayerFrame(const Metric& m, std::span<const VertexId> v, std::span<const VertexId> w)
    : m_(&m), n_(m.dist(v, w)), fromV_(m.distancesFrom(v)), fromW_(m.distancesFrom(w)) {}

LayerFrame::LayerFrame(const Metric& m, const SimplexSequence& sigma, const SimplexSequence& tau)
    : LayerFrame(m, setUnion(sigma.simplices.front().vertices(), tau.simplices.front().vertices()),
                 setUnion(sigma.simplices.back().vertices(), tau.simplices.back().vertices())) {}

bool LayerFrame::inLayer(VertexId u, int k) const {
    const std::size_t i = m_->complex().index(u);
    return fromV_[i] == k && fromW_[i] == n_ - k;
}

int LayerFrame::layerOf(VertexId u) const {
    const std::size_t i = m_->complex().index(u);
    if (fromV_[i] == kUnreachable || fromV_[i] + fromW_[i] != n_) return -1;
    return fromV_[i];
}

// ---------------------------------------------------------------------------
// Discs

VertexId CharDisc::vertexAt(int k, int pos) const {
    if (k < first || k > last || pos < 0 || pos > width(k))
        throw std::out_of_range(fmt::format("no disc vertex at row {} position {}", k, pos));
    VertexId id = 0;
    for (int r = first; r < k; ++r) id += static_cast<VertexId>(width(r) + 1);
    return id + static_cast<VertexId>(pos);
}

int CharDisc::posOf(VertexId d) const {
    const LatticePoint& p = embedding.at(d);
    return static_cast<int>((p.x - left(p.row)).numerator());
}

std::string CharDisc::shapeKey() const {
    std::string out = fmt::format("rows {}..{}:", first, last);
    for (int k = first; k <= last; ++k) out += fmt::format(" [{},{}]", toString(left(k)), width(k));
    return out;
}

GenCharDisc CharDisc::region() const {
    GenCharDisc g;
    g.firstRow = first;
    for (int k = first; k <= last; ++k) g.rows.emplace_back(left(k), left(k) + width(k));
    return g;
}

namespace {

std::vector<std::pair<VertexId, VertexId>> realizingPairs(const Metric& m, const Simplex& a, const Simplex& b,
                                                          int thickness) {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (VertexId s : a)
        for (VertexId t : b)
            if (m.dist(s, t) == thickness) out.emplace_back(s, t);
    return out;
}

VertexSet realizingSide(const Metric& m, const Simplex& own, const Simplex& other, int thickness) {
    VertexSet out;
    for (VertexId s : own)
        for (VertexId t : other)
            if (m.dist(s, t) == thickness) {
                out.push_back(s);
                break;
            }
    return out;
}

}  // namespace

CharDisc buildCharDisc(const Metric& m, const SimplexSequence& sigma, const SimplexSequence& tau, int i, int j,
                       std::optional<std::uint64_t> tieSeed) {
    const int n = static_cast<int>(sigma.size()) - 1;
    if (sigma.size() != tau.size()) throw std::invalid_argument("sequences differ in length");
    if (i < 0 || j > n || i >= j) throw std::invalid_argument(fmt::format("bad interval ({},{})", i, j));
    const FlagComplex& x = m.complex();

    std::vector<int> thick;
    for (int k = i; k <= j; ++k)
        thick.push_back(m.maxDist(sigma[static_cast<std::size_t>(k)].vertices(),
                                  tau[static_cast<std::size_t>(k)].vertices()));
    auto th = [&](int k) { return thick[static_cast<std::size_t>(k - i)]; };
    const bool interiorThick = std::all_of(thick.begin() + 1, thick.end() - 1, [](int t) { return t >= 2; });
    CharDisc cd;
    cd.first = i;
    cd.last = j;
    if (th(i) >= 2 && th(j) >= 2 && interiorThick) {
        cd.partial = true;
    } else if (th(i) <= 1 && th(j) <= 1 && interiorThick && i + 1 < j) {
        if (th(i) != 1 || th(j) != 1)
            throw TheoryViolation(fmt::format("thin end of thick interval ({},{}) has thickness 0", i, j));
    } else {
        throw std::invalid_argument(fmt::format("({},{}) is neither a thick interval nor a thick run", i, j));
    }

    std::mt19937_64 rng(tieSeed.value_or(0));
    for (int k = i; k <= j; ++k) {
        auto pairs = realizingPairs(m, sigma[static_cast<std::size_t>(k)], tau[static_cast<std::size_t>(k)], th(k));
        std::size_t pick = 0;
        if (tieSeed) pick = std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng);
        cd.s.push_back(pairs[pick].first);
        cd.t.push_back(pairs[pick].second);
    }
    auto s = [&](int k) { return cd.s[static_cast<std::size_t>(k - i)]; };
    auto t = [&](int k) { return cd.t[static_cast<std::size_t>(k - i)]; };

    for (int k = i; k < j; ++k) {
        if (!x.adjacent(s(k), s(k + 1)) || !x.adjacent(t(k), t(k + 1)))
            throw std::invalid_argument(fmt::format("representatives at layers {},{} are not adjacent", k, k + 1));
    }
    if (!cd.partial) {
        std::vector<VertexId> loop;
        for (int k = i; k <= j; ++k) loop.push_back(s(k));
        for (int k = j; k >= i; --k) loop.push_back(t(k));
        const std::size_t len = loop.size();
        for (std::size_t a = 0; a < len; ++a)
            for (std::size_t b = a + 2; b < len; ++b) {
                if (a == 0 && b == len - 1) continue;
                if (m.dist(loop[a], loop[b]) < 2)
                    throw TheoryViolation(fmt::format("characteristic loop is not wide: {} and {} are adjacent",
                                                      loop[a], loop[b]));
            }
    }

    // Row offsets: a_{k+1} = a_k + 1/2 iff |s_k t_{k+1}| = d_{k+1} + 1.
    cd.widths = thick;
    cd.leftX.push_back(Rational(i % 2 == 0 ? 0 : 1, 2));
    for (int k = i; k < j; ++k) {
        const int dNext = th(k + 1);
        const int cross = m.dist(s(k), t(k + 1));
        Rational a = cd.leftX.back();
        Rational next;
        if (cross == dNext + 1)
            next = a + kHalf;
        else if (cross == dNext)
            next = a - kHalf;
        else
            throw TheoryViolation(fmt::format("|s_{} t_{}| = {} does not fit a flat strip of widths {},{}", k, k + 1,
                                              cross, th(k), dNext));
        const Rational shift = (next + dNext) - (a + th(k));
        if (shift != kHalf && shift != -kHalf)
            throw TheoryViolation(fmt::format("right side of the loop jumps by {} between layers {} and {}",
                                              toString(shift), k, k + 1));
        const LatticePoint vNext{k + 1, next}, wHere{k, a + th(k)};
        if (latticeDistance(vNext, wHere) != m.dist(s(k + 1), t(k)))
            throw TheoryViolation(fmt::format("|s_{} t_{}| = {} disagrees with the flat strip", k + 1, k,
                                              m.dist(s(k + 1), t(k))));
        cd.leftX.push_back(next);
    }

    FlagComplex dx = genFlatRegion(cd.region().rows, 0, i);
    cd.disc = TriangulatedDisc::fromComplex(std::move(dx));
    for (const auto& [v, c] : cd.disc.complex().coords()) cd.embedding[v] = toLatticePoint(c);
    if (gaussBonnetSum(cd.disc) != 6) throw TheoryViolation("characteristic disc violates Gauss-Bonnet");
    if (auto flat = isFlat(cd.disc); !flat) throw TheoryViolation("characteristic disc is not flat: " + flat.reason);
    if (!cd.partial) {
        const auto& b = cd.disc.boundary();
        for (std::size_t a = 0; a < b.size(); ++a)
            for (std::size_t c = a + 2; c < b.size(); ++c) {
                if (a == 0 && c == b.size() - 1) continue;
                if (cd.disc.complex().adjacent(b[a], b[c]))
                    throw TheoryViolation("characteristic disc is not wide");
            }
    }
    return cd;
}

// ---------------------------------------------------------------------------
// Surfaces

namespace {

struct RowChoices {
    // Per row: allowed (s, t) boundary pairs.
    std::vector<std::vector<std::pair<VertexId, VertexId>>> pairs;
};

// Fills the disc row by row. `emit` returns false to stop the search.
template <class Emit>
void searchSurfaces(const LayerFrame& frame, const CharDisc& cd, const RowChoices& choices, Emit&& emit) {
    const Metric& m = frame.metric();
    const FlagComplex& x = m.complex();
    const FlagComplex& dx = cd.disc.complex();
    const std::size_t count = cd.vertexCount();
    std::vector<std::vector<VertexId>> earlier(count);
    for (VertexId d = 0; d < count; ++d)
        for (VertexId e : dx.neighbors(d))
            if (e < d) earlier[d].push_back(e);

    std::vector<VertexId> image(count, 0);
    bool stop = false;
    auto fitsEarlier = [&](VertexId d, VertexId u) {
        for (VertexId e : earlier[d])
            if (!x.adjacent(u, image[e])) return false;
        return true;
    };

    auto row = [&](auto& self, int k) -> void {
        if (stop) return;
        if (k > cd.last) {
            stop = !emit(CharSurface{image});
            return;
        }
        const int width = cd.width(k);
        const VertexId base = cd.vertexAt(k, 0);
        for (const auto& [s, t] : choices.pairs[static_cast<std::size_t>(k - cd.first)]) {
            if (!fitsEarlier(base, s)) continue;
            image[base] = s;
            const auto& toT = m.row(t);
            auto pos = [&](auto& again, int p) -> void {
                if (stop) return;
                const VertexId d = base + static_cast<VertexId>(p);
                if (p == width) {
                    if (fitsEarlier(d, t)) {
                        image[d] = t;
                        self(self, k + 1);
                    }
                    return;
                }
                for (VertexId u : x.neighbors(image[d - 1])) {
                    if (toT[x.index(u)] != width - p || !frame.inLayer(u, k) || !fitsEarlier(d, u)) continue;
                    image[d] = u;
                    again(again, p + 1);
                    if (stop) return;
                }
            };
            pos(pos, 1);
            if (stop) return;
        }
    };
    row(row, cd.first);
}

}  // namespace

CharSurface buildCharSurface(const LayerFrame& frame, const CharDisc& cd) {
    RowChoices choices;
    for (std::size_t r = 0; r < cd.s.size(); ++r) choices.pairs.push_back({{cd.s[r], cd.t[r]}});
    std::optional<CharSurface> found;
    searchSurfaces(frame, cd, choices, [&](CharSurface s) {
        found = std::move(s);
        return false;
    });
    if (!found) throw TheoryViolation(fmt::format("no characteristic surface fills {}", cd.shapeKey()));
    CheckReport rep = verifySurface(frame, cd, *found);
    if (!rep.ok()) throw TheoryViolation("characteristic surface check failed: " + rep.failures.front());
    return *found;
}

CheckReport verifySurface(const LayerFrame& frame, const CharDisc& cd, const CharSurface& s) {
    const Metric& m = frame.metric();
    CheckReport rep;
    for (const auto& [d, p] : cd.embedding)
        rep.expect(frame.inLayer(s(d), p.row),
                   fmt::format("disc vertex {} (row {}) maps to {} outside layer {}", d, p.row, s(d), p.row));
    for (const auto& [a, pa] : cd.embedding)
        for (const auto& [b, pb] : cd.embedding) {
            if (b <= a || std::abs(pa.row - pb.row) > 1) continue;
            const int want = latticeDistance(pa, pb), got = m.dist(s(a), s(b));
            if (want != got)
                rep.failures.push_back(
                    fmt::format("disc vertices {},{} at distance {} map to distance {}", a, b, want, got));
            ++rep.checks;
        }
    return rep;
}

SurfaceEnumeration allCharSurfaces(const LayerFrame& frame, const CharDisc& cd, const SimplexSequence& sigma,
                                   const SimplexSequence& tau, std::size_t cap) {
    RowChoices choices;
    for (int k = cd.first; k <= cd.last; ++k)
        choices.pairs.push_back(realizingPairs(frame.metric(), sigma[static_cast<std::size_t>(k)],
                                               tau[static_cast<std::size_t>(k)], cd.width(k)));
    SurfaceEnumeration out;
    searchSurfaces(frame, cd, choices, [&](CharSurface s) {
        if (out.surfaces.size() >= cap) {
            out.truncated = true;
            return false;
        }
        out.surfaces.push_back(std::move(s));
        return true;
    });
    return out;
}

CharImageMap::CharImageMap(const LayerFrame& frame, const CharDisc& cd, const CharSurface& base,
                           const SimplexSequence& sigma, const SimplexSequence& tau)
    : x_(&frame.metric().complex()) {
    if (cd.partial) throw std::invalid_argument("characteristic images need a full thick interval");
    const Metric& m = frame.metric();
    const FlagComplex& dx = cd.disc.complex();
    forward_.resize(cd.vertexCount());
    for (VertexId d = 0; d < cd.vertexCount(); ++d) {
        const int k = cd.rowOf(d), p = cd.posOf(d);
        VertexSet nbrImages;
        for (VertexId e : dx.neighbors(d)) nbrImages.push_back(base(e));
        nbrImages = normalized(std::move(nbrImages));
        VertexSet cand;
        for (VertexId u : x_->commonNeighbors(nbrImages))
            if (frame.inLayer(u, k)) cand.push_back(u);
        const auto& sk = sigma[static_cast<std::size_t>(k)];
        const auto& tk = tau[static_cast<std::size_t>(k)];
        if (p == 0) cand = setIntersection(cand, realizingSide(m, sk, tk, cd.width(k)));
        if (p == cd.width(k)) cand = setIntersection(cand, realizingSide(m, tk, sk, cd.width(k)));
        if (!std::binary_search(cand.begin(), cand.end(), base(d)))
            throw TheoryViolation(fmt::format("base image {} of disc vertex {} is not admissible", base(d), d));
        for (VertexId u : cand) {
            auto [it, inserted] = backward_.try_emplace(u, d);
            if (!inserted && it->second != d)
                throw TheoryViolation(fmt::format("vertex {} is an image of disc vertices {} and {}", u, it->second, d));
        }
        forward_[d] = std::move(cand);
    }
}

Simplex CharImageMap::of(std::span<const VertexId> rho) const {
    VertexSet out;
    for (VertexId d : rho) out = setUnion(out, forward_[d]);
    if (out.empty() || !x_->isClique(out))
        throw TheoryViolation(fmt::format("characteristic image {} is not a simplex", formatSet(out)));
    return Simplex(std::move(out));
}

std::optional<VertexId> CharImageMap::preimage(VertexId u) const {
    auto it = backward_.find(u);
    if (it == backward_.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// Minimal fillings

namespace {

using Loop = std::vector<VertexId>;

Loop canonicalLoop(const Loop& loop) {
    Loop best = loop;
    const std::size_t n = loop.size();
    Loop cand(n);
    for (int dir : {1, -1}) {
        for (std::size_t start = 0; start < n; ++start) {
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t idx = dir == 1 ? (start + i) % n : (start + n - i) % n;
                cand[i] = loop[idx];
            }
            if (cand < best) best = cand;
        }
    }
    return best;
}

class FillingSearch {
public:
    explicit FillingSearch(const FlagComplex& x) : x_(x) {}

    // Minimum area <= budget, or nullopt. `loop` must be canonical.
    std::optional<int> solve(const Loop& loop, int budget) {
        if (loop.size() <= 2) return 0;
        const int lower = static_cast<int>(loop.size()) - 2;
        if (lower > budget) return std::nullopt;
        auto it = memo_.find(loop);
        if (it != memo_.end()) {
            if (it->second.exact >= 0) {
                if (it->second.exact <= budget) return it->second.exact;
                return std::nullopt;
            }
            if (budget <= it->second.infeasibleUpTo) return std::nullopt;
        }
        std::optional<int> best;
        VertexId bestChoice = 0;
        int limit = budget;
        const VertexId a = loop[0], b = loop[1];
        for (VertexId c : x_.commonNeighbors(std::array<VertexId, 2>{a, b})) {
            auto pos = std::find(loop.begin(), loop.end(), c);
            std::optional<int> total;
            if (pos != loop.end()) {
                const std::size_t mIdx = static_cast<std::size_t>(pos - loop.begin());
                Loop first(loop.begin() + 1, loop.begin() + static_cast<std::ptrdiff_t>(mIdx) + 1);
                Loop second(loop.begin() + static_cast<std::ptrdiff_t>(mIdx), loop.end());
                second.push_back(a);
                const int secondLower = std::max(0, static_cast<int>(second.size()) - 2);
                auto fa = solve(canonicalLoop(first), limit - 1 - secondLower);
                if (fa) {
                    auto fb = solve(canonicalLoop(second), limit - 1 - *fa);
                    if (fb) total = 1 + *fa + *fb;
                }
            } else {
                Loop longer = loop;
                longer.insert(longer.begin() + 1, c);
                auto f = solve(canonicalLoop(longer), limit - 1);
                if (f) total = 1 + *f;
            }
            if (total && (!best || *total < *best)) {
                best = total;
                bestChoice = c;
                limit = *total - 1;
            }
        }
        Entry& e = memo_[loop];
        if (best) {
            e.exact = *best;
            e.choice = bestChoice;
        } else {
            e.infeasibleUpTo = std::max(e.infeasibleUpTo, budget);
        }
        return best;
    }

    void collect(const Loop& loop, std::vector<std::array<VertexId, 3>>& out) const {
        if (loop.size() <= 2) return;
        const Entry& e = memo_.at(loop);
        const VertexId a = loop[0], b = loop[1], c = e.choice;
        std::array<VertexId, 3> tri{a, b, c};
        std::sort(tri.begin(), tri.end());
        out.push_back(tri);
        auto pos = std::find(loop.begin(), loop.end(), c);
        if (pos != loop.end()) {
            const std::size_t mIdx = static_cast<std::size_t>(pos - loop.begin());
            Loop first(loop.begin() + 1, loop.begin() + static_cast<std::ptrdiff_t>(mIdx) + 1);
            Loop second(loop.begin() + static_cast<std::ptrdiff_t>(mIdx), loop.end());
            second.push_back(a);
            collect(canonicalLoop(first), out);
            collect(canonicalLoop(second), out);
        } else {
            Loop longer = loop;
            longer.insert(longer.begin() + 1, c);
            collect(canonicalLoop(longer), out);
        }
    }

private:
    struct Entry {
        int exact = -1;
        int infeasibleUpTo = -1;
        VertexId choice = 0;
    };
    const FlagComplex& x_;
    std::map<Loop, Entry> memo_;
};

void requireEmbeddedLoop(const FlagComplex& x, std::span<const VertexId> loop) {
    if (loop.size() < 3) throw std::invalid_argument("loop needs at least three vertices");
    VertexSet sorted = normalized(VertexSet(loop.begin(), loop.end()));
    if (sorted.size() != loop.size()) throw std::invalid_argument("loop repeats a vertex");
    for (std::size_t i = 0; i < loop.size(); ++i)
        if (!x.adjacent(loop[i], loop[(i + 1) % loop.size()]))
            throw std::invalid_argument(fmt::format("loop vertices {} and {} are not adjacent", loop[i],
                                                    loop[(i + 1) % loop.size()]));
}

}  // namespace

MinimalSurfaceResult minimalSurfaceBruteForce(const FlagComplex& x, std::span<const VertexId> loop, int maxArea) {
    requireEmbeddedLoop(x, loop);
    FillingSearch search(x);
    const Loop start = canonicalLoop(Loop(loop.begin(), loop.end()));
    MinimalSurfaceResult r;
    auto area = search.solve(start, maxArea);
    if (!area) {
        r.capExceeded = true;
        return r;
    }
    SurfaceFilling f;
    f.area = *area;
    search.collect(start, f.triangles);
    std::sort(f.triangles.begin(), f.triangles.end());
    r.best = std::move(f);
    return r;
}

bool isTriangulable(const FlagComplex& x, std::span<const VertexId> loop) {
    requireEmbeddedLoop(x, loop);
    const std::size_t n = loop.size();
    auto joined = [&](std::size_t a, std::size_t b) { return b == a + 1 || x.adjacent(loop[a], loop[b]); };
    // ok[a][b]: the sub-polygon loop[a..b] closed by the chord a-b is triangulable.
    std::vector<std::vector<char>> ok(n, std::vector<char>(n, 0));
    for (std::size_t a = 0; a + 1 < n; ++a) ok[a][a + 1] = 1;
    for (std::size_t len = 2; len < n; ++len)
        for (std::size_t a = 0; a + len < n; ++a) {
            const std::size_t b = a + len;
            if (!joined(a, b) && !(a == 0 && b == n - 1)) continue;
            for (std::size_t c = a + 1; c < b && !ok[a][b]; ++c)
                if (joined(a, c) && joined(c, b) && ok[a][c] && ok[c][b]) ok[a][b] = 1;
        }
    return ok[0][n - 1];
}

}  // namespace systolic
