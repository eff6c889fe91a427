#include "systolic/layers.hpp"

#include <algorithm>
#include <random>

#include <fmt/format.h>

namespace systolic {

LayerDecomposition layers(const Metric& m, std::span<const VertexId> v, std::span<const VertexId> w) {
    const FlagComplex& x = m.complex();
    LayerDecomposition dec;
    dec.v = normalized(VertexSet(v.begin(), v.end()));
    dec.w = normalized(VertexSet(w.begin(), w.end()));
    dec.n = m.dist(dec.v, dec.w);
    const std::vector<int> dv = m.distancesFrom(dec.v);
    const std::vector<int> dw = m.distancesFrom(dec.w);
    dec.layers.assign(static_cast<std::size_t>(dec.n) + 1, {});
    for (std::size_t idx = 0; idx < dv.size(); ++idx) {
        if (dv[idx] == kUnreachable || dw[idx] == kUnreachable) continue;
        if (dv[idx] <= dec.n && dw[idx] <= dec.n - dv[idx]) {
            // Membership in B_i(V) ∩ B_{n-i}(W) for i = dv forces equality.
            if (dv[idx] + dw[idx] != dec.n)
                throw TheoryViolation(fmt::format("vertex {} is closer than n to both sides", x.idAt(idx)));
            dec.layers[static_cast<std::size_t>(dv[idx])].push_back(x.idAt(idx));
        }
    }
    for (int i = 0; i < dec.n; ++i) {
        const auto& next = dec.layers[static_cast<std::size_t>(i) + 1];
        std::vector<int> d = m.distancesFrom(dec.layers[static_cast<std::size_t>(i)]);
        for (VertexId u : next)
            if (d[x.index(u)] != 1)
                throw TheoryViolation(fmt::format("layer {} vertex {} is not adjacent to layer {}", i + 1, u, i));
    }
    return dec;
}

std::vector<int> layerIndex(const Metric& m, const LayerDecomposition& dec) {
    std::vector<int> out(m.complex().vertexCount(), -1);
    for (std::size_t i = 0; i < dec.layers.size(); ++i)
        for (VertexId u : dec.layers[i]) out[m.complex().index(u)] = static_cast<int>(i);
    return out;
}

void classifyThickness(ThicknessProfile& p) {
    const int n = p.n();
    p.thin.assign(p.thickness.size(), false);
    for (std::size_t k = 0; k < p.thickness.size(); ++k) p.thin[k] = p.thickness[k] <= 1;
    p.thickIntervals.clear();
    p.openRuns.clear();
    int k = 0;
    while (k <= n) {
        if (p.thin[static_cast<std::size_t>(k)]) {
            ++k;
            continue;
        }
        int a = k;
        while (k <= n && !p.thin[static_cast<std::size_t>(k)]) ++k;
        int b = k - 1;
        if (a > 0 && b < n)
            p.thickIntervals.emplace_back(a - 1, b + 1);
        else
            p.openRuns.emplace_back(a, b);
    }
}

ThicknessProfile thicknessProfile(const Metric& m, const SimplexSequence& sigma, const SimplexSequence& tau) {
    if (sigma.size() != tau.size() || sigma.size() == 0)
        throw std::invalid_argument("sequences must be nonempty and of equal length");
    const FlagComplex& x = m.complex();
    const int n = static_cast<int>(sigma.size()) - 1;
    VertexSet v = setUnion(sigma[0].vertices(), tau[0].vertices());
    VertexSet w = setUnion(sigma[static_cast<std::size_t>(n)].vertices(), tau[static_cast<std::size_t>(n)].vertices());
    const std::vector<int> dv = m.distancesFrom(v);
    const std::vector<int> dw = m.distancesFrom(w);

    ThicknessProfile p;
    p.sigma = sigma;
    p.tau = tau;
    p.thickness.resize(sigma.size());
    for (int k = 0; k <= n; ++k) {
        const auto& sk = sigma[static_cast<std::size_t>(k)];
        const auto& tk = tau[static_cast<std::size_t>(k)];
        for (const Simplex* s : {&sk, &tk}) {
            for (VertexId u : *s) {
                std::size_t idx = x.index(u);
                if (dv[idx] != k || dw[idx] != n - k)
                    throw std::invalid_argument(fmt::format("layer mismatch: vertex {} of position {} sits at "
                                                            "distances ({},{})",
                                                            u, k, dv[idx], dw[idx]));
            }
        }
        if (k < n) {
            if (!x.isClique(setUnion(sk.vertices(), sigma[static_cast<std::size_t>(k) + 1].vertices())) ||
                !x.isClique(setUnion(tk.vertices(), tau[static_cast<std::size_t>(k) + 1].vertices())))
                throw std::invalid_argument(fmt::format("consecutive members at {} do not span a simplex", k));
        }
        p.thickness[static_cast<std::size_t>(k)] = m.maxDist(sk.vertices(), tk.vertices());
    }
    classifyThickness(p);
    return p;
}

CheckReport verifyProfileLemmas(const Metric& m, const ThicknessProfile& p) {
    CheckReport rep;
    const int n = p.n();
    for (int k = 0; k < n; ++k) {
        int a = p.thickness[static_cast<std::size_t>(k)], b = p.thickness[static_cast<std::size_t>(k) + 1];
        rep.expect(std::abs(a - b) <= 1, fmt::format("thickness jumps from {} to {} at layer {}", a, b, k));
    }
    for (auto [i, j] : p.thickIntervals) {
        for (int e : {i, j}) {
            auto common = setIntersection(p.sigma[static_cast<std::size_t>(e)].vertices(),
                                          p.tau[static_cast<std::size_t>(e)].vertices());
            rep.expect(common.empty(), fmt::format("sequences meet at thin end {} of thick interval ({},{}): {}", e, i,
                                                   j, formatSet(common)));
        }
    }
    for (int k = 0; k <= n; ++k) {
        const int t = p.thickness[static_cast<std::size_t>(k)];
        if (t < 2) continue;
        const auto& sk = p.sigma[static_cast<std::size_t>(k)].vertices();
        const auto& tk = p.tau[static_cast<std::size_t>(k)].vertices();
        VertexSet sReal, tReal;
        for (VertexId s : sk)
            for (VertexId u : tk)
                if (m.dist(s, u) == t) {
                    sReal.push_back(s);
                    tReal.push_back(u);
                }
        sReal = normalized(std::move(sReal));
        tReal = normalized(std::move(tReal));
        for (VertexId s : sReal)
            for (VertexId u : tReal)
                rep.expect(m.dist(s, u) == t,
                           fmt::format("layer {}: {} and {} realize thickness {} separately but not as a pair", k, s,
                                       u, t));
    }
    return rep;
}

std::optional<Trapezoid> findTrapezoid(const FlagComplex& x) {
    for (VertexId r : x.vertices()) {
        const VertexSet& nr = x.neighbors(r);
        for (VertexId p1 : nr) {
            for (VertexId p2 : nr) {
                if (p2 == p1 || !x.adjacent(p1, p2)) continue;
                for (VertexId s1 : setIntersection(nr, x.neighbors(p1))) {
                    if (s1 == p2 || x.adjacent(s1, p2)) continue;
                    for (VertexId s2 : setIntersection(nr, x.neighbors(p2))) {
                        if (s2 == p1 || s2 == s1 || x.adjacent(s2, p1) || x.adjacent(s2, s1)) continue;
                        return Trapezoid{p1, r, p2, s1, s2};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

namespace {

// Maximal simplices s1, s2, s3 with t1 = s1∩s2 and t2 = s2∩s3 must have t1, t2
// disjoint or nested.
std::optional<std::string> nestedIntersectionWitness(const FlagComplex& layer) {
    const auto maxes = layer.maximalSimplices();
    for (std::size_t b = 0; b < maxes.size(); ++b) {
        std::vector<VertexSet> meets;
        for (std::size_t a = 0; a < maxes.size(); ++a) {
            if (a == b) continue;
            auto t = setIntersection(maxes[a].vertices(), maxes[b].vertices());
            if (!t.empty()) meets.push_back(std::move(t));
        }
        for (std::size_t i = 0; i < meets.size(); ++i) {
            for (std::size_t j = i + 1; j < meets.size(); ++j) {
                const auto& t1 = meets[i];
                const auto& t2 = meets[j];
                if (setIntersection(t1, t2).empty() || isSubset(t1, t2) || isSubset(t2, t1)) continue;
                return fmt::format("maximal simplex {} meets neighbours in {} and {}", maxes[b].str(), formatSet(t1),
                                   formatSet(t2));
            }
        }
    }
    return std::nullopt;
}

}  // namespace

CheckReport verifyLayerLemmas(const Metric& m, const LayerDecomposition& dec, const LayerLemmaOptions& opt) {
    const FlagComplex& x = m.complex();
    CheckReport rep;
    const int n = dec.n;
    for (int i = 0; i <= n; ++i) {
        const auto& li = dec.layers[static_cast<std::size_t>(i)];
        FlagComplex sub = x.induced(li);
        if (i > 0 && i < n) {
            auto large = isKLarge(sub, kInfinity, opt.cycleCap);
            rep.expect(large.ok, fmt::format("layer {} has induced cycle {}", i, formatSet(large.witness)));
            if (large.capReached)
                rep.warnings.push_back(fmt::format("layer {}: cycle cap {} reached", i, opt.cycleCap));
        }
        auto trap = findTrapezoid(sub);
        rep.expect(!trap, trap ? fmt::format("layer {} contains trapezoid p1={} r={} p2={} s1={} s2={}", i, trap->p1,
                                             trap->r, trap->p2, trap->s1, trap->s2)
                               : std::string());
        auto nested = nestedIntersectionWitness(sub);
        rep.expect(!nested, nested ? fmt::format("layer {}: {}", i, *nested) : std::string());
    }

    std::mt19937_64 rng(opt.seed);
    for (int i = 0; i < n; ++i) {
        std::vector<FlagComplex::Edge> cross;
        for (VertexId v : dec.layers[static_cast<std::size_t>(i)])
            for (VertexId w : x.neighbors(v))
                if (std::binary_search(dec.layers[static_cast<std::size_t>(i) + 1].begin(),
                                       dec.layers[static_cast<std::size_t>(i) + 1].end(), w))
                    cross.emplace_back(v, w);
        auto checkPair = [&](const FlagComplex::Edge& e, const FlagComplex::Edge& f) {
            int a = m.dist(e.first, f.first), b = m.dist(e.second, f.second);
            if (std::abs(a - b) > 1)
                rep.failures.push_back(fmt::format("edges {}-{} and {}-{} between layers {},{}: distances {} vs {}",
                                                   e.first, e.second, f.first, f.second, i, i + 1, a, b));
            ++rep.checks;
        };
        const std::size_t total = cross.size() * (cross.size() - (cross.empty() ? 0 : 1)) / 2;
        if (total <= opt.pairSamples) {
            for (std::size_t a = 0; a < cross.size(); ++a)
                for (std::size_t b = a + 1; b < cross.size(); ++b) checkPair(cross[a], cross[b]);
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, cross.size() - 1);
            for (std::size_t s = 0; s < opt.pairSamples; ++s) checkPair(cross[pick(rng)], cross[pick(rng)]);
        }
    }

    if (opt.twoLayerUnion) {
        for (int i = 1; i + 1 < n; ++i) {
            auto both = setUnion(dec.layers[static_cast<std::size_t>(i)], dec.layers[static_cast<std::size_t>(i) + 1]);
            auto large = isKLarge(x.induced(both), kInfinity, opt.cycleCap);
            rep.expect(large.ok, fmt::format("span of layers {},{} has induced cycle {}", i, i + 1,
                                             formatSet(large.witness)));
        }
    }
    return rep;
}

}  // namespace systolic
