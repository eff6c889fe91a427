#include "systolic/eucgeo.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace systolic {

GenCharDisc modifiedDisc(const CharDisc& cd) {
    GenCharDisc g;
    g.firstRow = cd.first;
    for (int k = cd.first; k <= cd.last; ++k) {
        const Rational a = cd.left(k);
        g.rows.emplace_back(a + kHalf, a + cd.width(k) - kHalf);
    }
    return g;
}

PolyPath cat0Diagonal(const CharDisc& cd) {
    const GenCharDisc g = modifiedDisc(cd);
    return polygonGeodesic(g, {cd.first, g.rows.front().first}, {cd.last, g.rows.back().first});
}

std::vector<VertexSet> euclideanDiagonal(const CharDisc& cd, const PolyPath& diagonal) {
    std::vector<VertexSet> out;
    for (int k = cd.first + 1; k < cd.last; ++k) {
        const int d = cd.width(k);
        if (d < 2) throw TheoryViolation(fmt::format("row {} of a thick interval has width {}", k, d));
        const Rational u = diagonal.at(k) - cd.left(k);
        if (u.denominator() == 2) {
            const int lo = static_cast<int>(floorOf(u));
            if (lo >= 1 && lo + 1 <= d - 1) {
                out.push_back({cd.vertexAt(k, lo), cd.vertexAt(k, lo + 1)});
                continue;
            }
        }
        // Nearest inner vertex; off the inner midpoints the rounding is unambiguous.
        const int pos = std::clamp(static_cast<int>(floorOf(u + kHalf)), 1, d - 1);
        out.push_back({cd.vertexAt(k, pos)});
    }
    return out;
}

namespace {

void requireOppositeSpheres(const Metric& m, const Simplex& sigma, const Simplex& tau, int n) {
    const auto fromSigma = m.distancesFrom(sigma.vertices());
    const auto fromTau = m.distancesFrom(tau.vertices());
    const FlagComplex& x = m.complex();
    for (VertexId v : sigma)
        if (fromTau[x.index(v)] != n)
            throw std::invalid_argument(fmt::format("{} is not in the {}-sphere of {}", v, n, tau.str()));
    for (VertexId v : tau)
        if (fromSigma[x.index(v)] != n)
            throw std::invalid_argument(fmt::format("{} is not in the {}-sphere of {}", v, n, sigma.str()));
}

}  // namespace

EuclideanGeodesic euclideanGeodesic(const Metric& m, const Simplex& sigma, const Simplex& tau) {
    const FlagComplex& x = m.complex();
    if (sigma.empty() || tau.empty()) throw std::invalid_argument("empty simplex");
    if (!x.isSimplex(sigma) || !x.isSimplex(tau)) throw std::invalid_argument("endpoint is not a simplex");
    EuclideanGeodesic eg;
    eg.sigma = sigma;
    eg.tau = tau;
    eg.n = m.dist(sigma.vertices(), tau.vertices());
    requireOppositeSpheres(m, sigma, tau, eg.n);

    const SimplexSequence forward = directedGeodesic(m, sigma, tau.vertices());
    const SimplexSequence backward = directedGeodesic(m, tau, sigma.vertices()).reversed();
    eg.profile = thicknessProfile(m, forward, backward);
    const LayerFrame frame(m, forward, backward);

    eg.deltas.resize(static_cast<std::size_t>(eg.n) + 1);
    for (int k = 0; k <= eg.n; ++k) {
        if (!eg.profile.thin[static_cast<std::size_t>(k)]) continue;
        VertexSet span = setUnion(forward[static_cast<std::size_t>(k)].vertices(),
                                  backward[static_cast<std::size_t>(k)].vertices());
        if (!x.isClique(span))
            throw TheoryViolation(fmt::format("thin layer {}: {} does not span a simplex", k, formatSet(span)));
        eg.deltas[static_cast<std::size_t>(k)] = Simplex(std::move(span));
    }
    for (auto [i, j] : eg.profile.thickIntervals) {
        CharDisc cd = buildCharDisc(m, forward, backward, i, j);
        CharSurface surface = buildCharSurface(frame, cd);
        PolyPath diagonal = cat0Diagonal(cd);
        std::vector<VertexSet> rho = euclideanDiagonal(cd, diagonal);
        CharImageMap images(frame, cd, surface, forward, backward);
        for (int k = i + 1; k < j; ++k)
            eg.deltas[static_cast<std::size_t>(k)] = images.of(rho[static_cast<std::size_t>(k - i - 1)]);
        eg.intervals.push_back(ThickIntervalData{std::move(cd), std::move(surface), std::move(diagonal),
                                                 std::move(rho), std::move(images)});
    }
    if (!eg.profile.openRuns.empty())
        throw TheoryViolation("directed geodesics between simplices left a thick run at an end");
    return eg;
}

namespace {

bool spansSimplex(const FlagComplex& x, const VertexSet& a, const VertexSet& b) {
    return x.isClique(setUnion(a, b));
}

void checkDiagonal(const ThickIntervalData& t, CheckReport& rep) {
    const CharDisc& cd = t.disc;
    const FlagComplex& dx = cd.disc.complex();
    const int i = cd.first, j = cd.last;
    if (j - i > 2) {
        for (int k = i; k < j; ++k) {
            const Rational step = abs(t.diagonal.at(k + 1) - t.diagonal.at(k));
            rep.expect(step < kHalf, fmt::format("diagonal of rows {}..{} is not transversal at row {}: step {}", i,
                                                 j, k, toString(step)));
        }
    }
    for (std::size_t r = 0; r + 1 < t.rho.size(); ++r)
        rep.expect(spansSimplex(dx, t.rho[r], t.rho[r + 1]),
                   fmt::format("diagonal simplices at rows {},{} do not span", i + 1 + static_cast<int>(r),
                               i + 2 + static_cast<int>(r)));
    rep.expect(spansSimplex(dx, t.rho.front(), {cd.v(i), cd.w(i)}), "first diagonal simplex misses the first row");
    rep.expect(spansSimplex(dx, t.rho.back(), {cd.v(j), cd.w(j)}), "last diagonal simplex misses the last row");
    for (std::size_t r = 0; r < t.rho.size(); ++r) {
        const int k = i + 1 + static_cast<int>(r);
        for (VertexId d : t.rho[r])
            rep.expect(d != cd.v(k) && d != cd.w(k), fmt::format("diagonal touches the boundary at row {}", k));
    }
    // Discs over directed geodesics bend towards each end right after the
    // first thin row.
    const TriangulatedDisc& disc = cd.disc;
    rep.expect(defect(disc, cd.v(i + 1)) == 1, fmt::format("defect at the second left vertex of rows {}..{} is {}",
                                                           i, j, defect(disc, cd.v(i + 1))));
    rep.expect(defect(disc, cd.w(j - 1)) == 1, fmt::format("defect at the second-last right vertex of rows {}..{} is {}",
                                                           i, j, defect(disc, cd.w(j - 1))));
    for (int k = i + 2; k < j - 1; ++k)
        if (defect(disc, cd.v(k)) == -1)
            rep.expect(defect(disc, cd.v(k + 1)) == 1,
                       fmt::format("left vertex of row {} with defect -1 is not followed by defect 1", k));
    for (int k = i + 2; k < j - 1; ++k)
        if (defect(disc, cd.w(k)) == -1)
            rep.expect(defect(disc, cd.w(k - 1)) == 1,
                       fmt::format("right vertex of row {} with defect -1 is not preceded by defect 1", k));
}

}  // namespace

CheckReport verifyEucProperties(const Metric& m, const EuclideanGeodesic& eg, const EucCheckOptions& opt) {
    const FlagComplex& x = m.complex();
    CheckReport rep;
    const int n = eg.n;
    const auto& d = eg.deltas;
    rep.expect(d.size() == static_cast<std::size_t>(n) + 1, "wrong number of simplices");
    if (!rep.ok()) return rep;
    rep.expect(d.front() == eg.sigma, "sequence does not start at sigma");
    rep.expect(d.back() == eg.tau, "sequence does not end at tau");

    const auto fromSigma = m.distancesFrom(eg.sigma.vertices());
    const auto fromTau = m.distancesFrom(eg.tau.vertices());
    for (int k = 0; k <= n; ++k)
        for (VertexId v : d[static_cast<std::size_t>(k)])
            rep.expect(fromSigma[x.index(v)] == k && fromTau[x.index(v)] == n - k,
                       fmt::format("vertex {} of simplex {} lies outside layer {}", v, k, k));

    std::vector<std::vector<int>> from;
    from.reserve(d.size());
    for (const Simplex& s : d) from.push_back(m.distancesFrom(s.vertices()));
    for (int k = 0; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
            bool ok = true;
            for (VertexId v : d[static_cast<std::size_t>(k)]) ok = ok && from[static_cast<std::size_t>(l)][x.index(v)] == l - k;
            for (VertexId v : d[static_cast<std::size_t>(l)]) ok = ok && from[static_cast<std::size_t>(k)][x.index(v)] == l - k;
            rep.expect(ok, fmt::format("simplices {} and {} are not in each other's {}-spheres", k, l, l - k));
        }

    const auto& thin = eg.profile.thin;
    for (int k = 0; k < n; ++k)
        if (!thin[static_cast<std::size_t>(k)] || !thin[static_cast<std::size_t>(k) + 1])
            rep.expect(spansSimplex(x, d[static_cast<std::size_t>(k)].vertices(), d[static_cast<std::size_t>(k) + 1].vertices()),
                       fmt::format("simplices {} and {} next to a thick layer do not span a simplex", k, k + 1));

    // Exact distances across any stretch that contains a thick layer.
    std::vector<int> thickBefore(static_cast<std::size_t>(n) + 2, 0);
    for (int k = 0; k <= n; ++k)
        thickBefore[static_cast<std::size_t>(k) + 1] = thickBefore[static_cast<std::size_t>(k)] + (thin[static_cast<std::size_t>(k)] ? 0 : 1);
    for (int l = 0; l <= n; ++l)
        for (int mm = l + 1; mm <= n; ++mm) {
            if (thickBefore[static_cast<std::size_t>(mm) + 1] == thickBefore[static_cast<std::size_t>(l)]) continue;
            bool ok = true;
            for (VertexId a : d[static_cast<std::size_t>(l)])
                for (VertexId b : d[static_cast<std::size_t>(mm)]) ok = ok && m.dist(a, b) == mm - l;
            rep.expect(ok, fmt::format("vertices of simplices {} and {} are not at distance {}", l, mm, mm - l));
        }

    for (const auto& t : eg.intervals) checkDiagonal(t, rep);

    if (opt.reversal) {
        const EuclideanGeodesic back = euclideanGeodesic(m, eg.tau, eg.sigma);
        std::vector<Simplex> reversed(back.deltas.rbegin(), back.deltas.rend());
        rep.expect(reversed == eg.deltas, fmt::format("reversed construction differs between {} and {}",
                                                      eg.sigma.str(), eg.tau.str()));
    }
    return rep;
}

std::vector<VertexId> threadGeodesic(const Metric& m, const std::vector<Simplex>& deltas, std::size_t k,
                                     VertexId start) {
    const FlagComplex& x = m.complex();
    if (k >= deltas.size() || !deltas[k].contains(start)) throw std::invalid_argument("start is not in its simplex");
    std::vector<VertexId> path(deltas.size());
    path[k] = start;
    auto step = [&](std::size_t from, std::size_t to) {
        for (VertexId u : deltas[to])
            if (x.adjacent(path[from], u)) {
                path[to] = u;
                return;
            }
        throw TheoryViolation(fmt::format("vertex {} of simplex {} has no neighbour in simplex {}", path[from], from, to));
    };
    for (std::size_t i = k; i + 1 < deltas.size(); ++i) step(i, i + 1);
    for (std::size_t i = k; i > 0; --i) step(i, i - 1);
    return path;
}

std::vector<VertexId> threadGeodesic(const Metric& m, const std::vector<Simplex>& deltas) {
    if (deltas.empty()) return {};
    return threadGeodesic(m, deltas, 0, deltas.front().front());
}

SubsegmentResult subsegmentCheck(const Metric& m, const EuclideanGeodesic& eg, int l, int mm, SubsegmentMode mode,
                                 const std::vector<VertexId>& thread) {
    if (l < 0 || mm > eg.n || l >= mm) throw std::invalid_argument(fmt::format("bad subsegment [{},{}]", l, mm));
    Simplex from, to;
    if (mode == SubsegmentMode::Weak) {
        from = eg.deltas[static_cast<std::size_t>(l)];
        to = eg.deltas[static_cast<std::size_t>(mm)];
    } else {
        if (thread.size() != eg.deltas.size()) throw std::invalid_argument("thread length differs from the geodesic");
        from = Simplex::vertex(thread[static_cast<std::size_t>(l)]);
        to = Simplex::vertex(thread[static_cast<std::size_t>(mm)]);
    }
    const EuclideanGeodesic sub = euclideanGeodesic(m, from, to);
    if (sub.n != mm - l)
        throw TheoryViolation(fmt::format("subsegment endpoints at distance {} instead of {}", sub.n, mm - l));
    SubsegmentResult r;
    r.atLayer = l;
    for (int k = l; k <= mm; ++k) {
        const int dk = m.dist(eg.deltas[static_cast<std::size_t>(k)].vertices(),
                              sub.deltas[static_cast<std::size_t>(k - l)].vertices());
        if (dk > r.maxDistance) {
            r.maxDistance = dk;
            r.atLayer = k;
        }
    }
    return r;
}

ClosenessResult closenessCheck(const Metric& m, const std::vector<VertexId>& p, const std::vector<VertexId>& r) {
    if (p.size() != r.size() || p.empty()) throw std::invalid_argument("paths differ in length");
    auto asSequence = [](const std::vector<VertexId>& path) {
        SimplexSequence s;
        for (VertexId v : path) s.simplices.push_back(Simplex::vertex(v));
        return s;
    };
    const SimplexSequence ps = asSequence(p), rs = asSequence(r);
    const ThicknessProfile prof = thicknessProfile(m, ps, rs);
    ClosenessResult out;
    for (auto [i, j] : prof.thickIntervals) {
        const CharDisc cd = buildCharDisc(m, ps, rs, i, j);
        // Straight through the unmodified disc between the end-row midpoints.
        GenCharDisc region = cd.region();
        const PolyPath gamma = polygonGeodesic(region, {i, cd.left(i) + kHalf}, {j, cd.left(j) + kHalf});
        for (int k = i; k <= j; ++k) out.value = std::max(out.value, abs(gamma.at(k) - (cd.left(k) + cd.width(k))));
        ++out.thickIntervals;
    }
    return out;
}

}  // namespace systolic
