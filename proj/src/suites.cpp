#include "systolic/suites.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "systolic/boundary.hpp"
#include "systolic/generators.hpp"
#include "systolic/layers.hpp"
#include "systolic/parallel.hpp"

namespace systolic {

namespace {

std::mt19937_64 derivedRng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

std::uint64_t stableHash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
    return h;
}

Family makeFamily(std::string name, bool flat, FlagComplex x) {
    Family f;
    f.name = std::move(name);
    f.flat = flat;
    auto shared = std::make_shared<const FlagComplex>(std::move(x));
    f.metric = std::make_shared<const Metric>(*shared);
    f.complex = std::move(shared);
    return f;
}

bool oppositeSpheres(const Metric& m, const Simplex& a, const Simplex& b, int& n) {
    const FlagComplex& x = m.complex();
    const auto fa = m.distancesFrom(a.vertices());
    const auto fb = m.distancesFrom(b.vertices());
    n = fb[x.index(a.front())];
    if (n == kUnreachable) return false;
    for (VertexId v : a)
        if (fb[x.index(v)] != n) return false;
    for (VertexId v : b)
        if (fa[x.index(v)] != n) return false;
    return true;
}

bool hasThickLayer(const Metric& m, const Simplex& a, const Simplex& b) {
    const auto fwd = directedGeodesic(m, a, b.vertices());
    const auto bwd = directedGeodesic(m, b, a.vertices()).reversed();
    return !thicknessProfile(m, fwd, bwd).thickIntervals.empty();
}

// Runs `body` on every pair, collecting failures in pair order.
template <class Body>
void forEachPair(const std::vector<Family>& families, const std::vector<EndpointPair>& pairs, SuiteResult& out,
                 Body&& body) {
    struct Local {
        CheckReport rep;
        std::map<std::string, Rational> maxima;
        std::vector<std::string> errors;
    };
    auto results = parallelMap(pairs.size(), [&](std::size_t i) {
        Local local;
        const EndpointPair& p = pairs[i];
        try {
            body(*families[p.family].metric, p, local.rep, local.maxima);
        } catch (const std::exception& e) {
            local.errors.push_back(fmt::format("{} ({} -> {}): {}", p.id, p.sigma.str(), p.tau.str(), e.what()));
        }
        return local;
    });
    std::map<std::string, std::pair<Rational, std::string>> maxima;
    for (std::size_t i = 0; i < results.size(); ++i) {
        out.checks += results[i].rep.checks;
        for (const auto& f : results[i].rep.failures) out.failures.push_back(fmt::format("{}: {}", pairs[i].id, f));
        for (const auto& e : results[i].errors) out.failures.push_back(e);
        for (const auto& [k, v] : results[i].maxima) {
            auto [it, inserted] = maxima.try_emplace(k, v, pairs[i].id);
            if (!inserted && it->second.first < v) it->second = {v, pairs[i].id};
        }
    }
    out.instances = pairs.size();
    for (auto& obs : out.observations) {
        auto it = maxima.find(obs.quantity);
        if (it != maxima.end()) std::tie(obs.value, obs.witness) = it->second;
    }
}

void raise(std::map<std::string, Rational>& maxima, const std::string& key, const Rational& v) {
    auto [it, inserted] = maxima.try_emplace(key, v);
    if (!inserted) it->second = std::max(it->second, v);
}

std::vector<std::pair<int, int>> subsegments(int n, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> all;
    for (int l = 0; l < n; ++l)
        for (int m = l + 1; m <= n; ++m) all.emplace_back(l, m);
    constexpr std::size_t kMax = 45;
    if (all.size() > kMax) {
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(kMax);
        std::sort(all.begin(), all.end());
    }
    return all;
}

struct Workload {
    std::vector<Family> families;
    std::vector<EndpointPair> pairs;
};

Workload workload(const SuiteConfig& cfg) {
    Workload w;
    w.families = suiteFamilies(cfg.seed);
    w.pairs = suitePairs(w.families, cfg.seed, cfg.pairsPerFamily);
    return w;
}

std::size_t countThick(const std::vector<EndpointPair>& pairs) {
    return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.thick; }));
}

}  // namespace

std::vector<Family> suiteFamilies(std::uint64_t seed) {
    std::mt19937_64 rng = derivedRng(seed, 0);
    std::vector<Family> out;
    out.push_back(makeFamily("hexagon-6", true, genHexagon(6)));
    out.push_back(makeFamily("parallelogram-10x8", true, genParallelogram(10, 8)));
    out.push_back(makeFamily("flat-random-a", true, genRandomFlatRegion(rng, 12, 8)));
    out.push_back(makeFamily("flat-random-b", true, genRandomFlatRegion(rng, 14, 6)));
    out.push_back(makeFamily("disc-a", false, genDiscWithDegrees(rng, 5, 0.3)));
    out.push_back(makeFamily("disc-b", false, genDiscWithDegrees(rng, 6, 0.15)));
    FlagComplex base = genDiscWithDegrees(rng, 5, 0.2);
    out.push_back(makeFamily("twins-a", false, addRandomTwins(rng, base, 0.3)));
    out.push_back(makeFamily("twins-b", false, addRandomTwins(rng, genHexagon(6), 0.3)));
    return out;
}

std::vector<EndpointPair> suitePairs(const std::vector<Family>& families, std::uint64_t seed, std::size_t count) {
    std::vector<EndpointPair> out;
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        const Family& fam = families[fi];
        const Metric& m = *fam.metric;
        std::mt19937_64 rng = derivedRng(seed, 100 + fi);
        const std::vector<Simplex> simplices = fam.complex->simplices(3);
        const VertexSet& vertices = fam.complex->vertices();
        std::uniform_int_distribution<std::size_t> pickSimplex(0, simplices.size() - 1);
        std::uniform_int_distribution<std::size_t> pickVertex(0, vertices.size() - 1);
        std::bernoulli_distribution useVertex(0.4);
        auto draw = [&] {
            return useVertex(rng) ? Simplex::vertex(vertices[pickVertex(rng)]) : simplices[pickSimplex(rng)];
        };
        const std::size_t thickTarget = count / 2;
        std::vector<EndpointPair> thick, thin;
        for (std::size_t attempt = 0; attempt < 200 * count; ++attempt) {
            if (thick.size() >= thickTarget && thin.size() >= count) break;
            const Simplex a = draw(), b = draw();
            int n = 0;
            if (!oppositeSpheres(m, a, b, n) || n < 2) continue;
            EndpointPair p{"", fi, a, b, hasThickLayer(m, a, b)};
            if (p.thick && thick.size() < thickTarget)
                thick.push_back(std::move(p));
            else if (!p.thick && thin.size() < count)
                thin.push_back(std::move(p));
        }
        std::vector<EndpointPair> chosen = std::move(thick);
        for (auto& p : thin) {
            if (chosen.size() >= count) break;
            chosen.push_back(std::move(p));
        }
        for (std::size_t k = 0; k < chosen.size(); ++k) {
            chosen[k].id = fmt::format("{}#{:03}", fam.name, k);
            out.push_back(std::move(chosen[k]));
        }
    }
    return out;
}

bool SuiteResult::ok() const {
    return failures.empty() && std::all_of(observations.begin(), observations.end(), [](const auto& o) {
               return o.within();
           });
}

std::string SuiteResult::report(const SuiteConfig& cfg) const {
    std::string out = fmt::format("suite {} seed {} C {}{} D {}{}\n", name, seed, cfg.c,
                                  cfg.c != kDefaultC ? " (override)" : "", cfg.d,
                                  cfg.dOverridden ? fmt::format(" (override; 3C+2 = {})", contractionConstant(cfg.c))
                                                  : std::string());
    out += fmt::format("instances {} checks {}\n", instances, checks);
    for (const auto& n : notes) out += n + "\n";
    for (const auto& o : observations)
        out += fmt::format("max {} = {} (bound {}){}{}\n", o.quantity, toString(o.value), toString(o.bound),
                           o.within() ? "" : " EXCEEDED", o.witness.empty() ? "" : " at " + o.witness);
    for (const auto& f : failures) out += "failure: " + f + "\n";
    out += ok() ? "PASS\n" : "FAIL\n";
    return out;
}

SuiteResult gaussBonnetSuite(const SuiteConfig& cfg, std::size_t discs) {
    SuiteResult out;
    out.name = "gauss-bonnet";
    out.seed = cfg.seed;
    std::mt19937_64 rng = derivedRng(cfg.seed, 1);
    std::size_t good = 0;
    for (std::size_t i = 0; i < discs; ++i) {
        FlagComplex x;
        switch (i % 3) {
            case 0: x = genDiscWithDegrees(rng, 2 + static_cast<int>(i % 3), 0.1 * static_cast<double>(i % 6)); break;
            case 1: x = genRandomFlatRegion(rng, 3 + static_cast<int>(i % 7), 1 + static_cast<int>(i % 5)); break;
            default: x = genDiscWithDegrees(rng, 3, 0.5); break;
        }
        const int sum = gaussBonnetSum(TriangulatedDisc::fromComplex(std::move(x)));
        ++out.checks;
        if (sum == 6)
            ++good;
        else
            out.failures.push_back(fmt::format("random disc {}: defect sum {}", i, sum));
    }
    out.notes.push_back(fmt::format("sum=6 on {}/{} discs", good, discs));

    const Workload w = workload(cfg);
    SuiteResult charDiscs;
    forEachPair(w.families, w.pairs, charDiscs, [&](const Metric& m, const EndpointPair& p, CheckReport& rep, auto&) {
        const EuclideanGeodesic eg = euclideanGeodesic(m, p.sigma, p.tau);
        for (const auto& t : eg.intervals) rep.expect(gaussBonnetSum(t.disc.disc) == 6, "characteristic disc sum is not 6");
    });
    std::size_t total = charDiscs.checks, bad = charDiscs.failures.size();
    out.checks += total;
    out.instances = discs + w.pairs.size();
    out.failures.insert(out.failures.end(), charDiscs.failures.begin(), charDiscs.failures.end());
    out.notes.push_back(fmt::format("sum=6 on {}/{} characteristic discs", total - std::min(total, bad), total));
    return out;
}

SuiteResult layersSuite(const SuiteConfig& cfg) {
    SuiteResult out;
    out.name = "layers";
    out.seed = cfg.seed;
    const Workload w = workload(cfg);
    forEachPair(w.families, w.pairs, out, [&](const Metric& m, const EndpointPair& p, CheckReport& rep, auto&) {
        auto check = [&](const Simplex& a, const Simplex& b) {
            const LayerDecomposition dec = layers(m, a.vertices(), b.vertices());
            rep.merge(verifyLayerLemmas(m, dec));
        };
        check(p.sigma, p.tau);
        const EuclideanGeodesic eg = euclideanGeodesic(m, p.sigma, p.tau);
        rep.merge(verifyProfileLemmas(m, eg.profile));
        // Every decomposition the subsegment suites build: between deltas
        // (weak) and between thread vertices (strong).
        const std::vector<VertexId> thread = threadGeodesic(m, eg.deltas);
        std::mt19937_64 rng = derivedRng(cfg.seed, stableHash(p.id));
        for (auto [l, mm] : subsegments(eg.n, rng)) {
            const auto a = static_cast<std::size_t>(l), b = static_cast<std::size_t>(mm);
            check(eg.deltas[a], eg.deltas[b]);
            check(Simplex::vertex(thread[a]), Simplex::vertex(thread[b]));
        }
    });
    out.notes.push_back(fmt::format("pairs {} (with thick layers {})", w.pairs.size(), countThick(w.pairs)));
    return out;
}

SuiteResult eucPropertiesSuite(const SuiteConfig& cfg) {
    SuiteResult out;
    out.name = "egeo";
    out.seed = cfg.seed;
    const Workload w = workload(cfg);
    forEachPair(w.families, w.pairs, out, [&](const Metric& m, const EndpointPair& p, CheckReport& rep, auto&) {
        rep.merge(verifyEucProperties(m, euclideanGeodesic(m, p.sigma, p.tau)));
    });
    out.notes.push_back(fmt::format("pairs {} (with thick layers {})", w.pairs.size(), countThick(w.pairs)));
    return out;
}

SuiteResult weakSubsegmentSuite(const SuiteConfig& cfg) {
    SuiteResult out;
    out.name = "thm8.1";
    out.seed = cfg.seed;
    out.observations.push_back({"|delta_k, delta~_k| (simplex ends)", Rational(0), Rational(3)});
    const Workload w = workload(cfg);
    forEachPair(w.families, w.pairs, out, [&](const Metric& m, const EndpointPair& p, CheckReport& rep, auto& maxima) {
        const EuclideanGeodesic eg = euclideanGeodesic(m, p.sigma, p.tau);
        std::mt19937_64 rng = derivedRng(cfg.seed, stableHash(p.id));
        for (auto [l, mm] : subsegments(eg.n, rng)) {
            const auto r = subsegmentCheck(m, eg, l, mm, SubsegmentMode::Weak);
            ++rep.checks;
            raise(maxima, "|delta_k, delta~_k| (simplex ends)", Rational(r.maxDistance));
            if (r.maxDistance > 3)
                rep.failures.push_back(fmt::format("subsegment [{},{}] layer {}: distance {}", l, mm, r.atLayer,
                                                   r.maxDistance));
        }
    });
    out.notes.push_back(fmt::format("pairs {} (with thick layers {})", w.pairs.size(), countThick(w.pairs)));
    return out;
}

SuiteResult strongSubsegmentSuite(const SuiteConfig& cfg) {
    SuiteResult out;
    out.name = "thmB";
    out.seed = cfg.seed;
    const std::string strongKey = "|delta_k, delta~_k| (vertex ends)";
    const std::string certKey = "good-geodesic certificate";
    out.observations.push_back({strongKey, Rational(0), Rational(198)});
    out.observations.push_back({certKey, Rational(0), Rational(cfg.c + 1)});
    const Workload w = workload(cfg);
    std::vector<std::unique_ptr<EucGeodesicCache>> caches;
    for (const auto& f : w.families) caches.push_back(std::make_unique<EucGeodesicCache>(*f.metric));
    forEachPair(w.families, w.pairs, out, [&](const Metric& m, const EndpointPair& p, CheckReport& rep, auto& maxima) {
        const EuclideanGeodesic eg = euclideanGeodesic(m, p.sigma, p.tau);
        const std::vector<VertexId> thread = threadGeodesic(m, eg.deltas);
        rep.expect(isGeodesic(m, thread), "thread is not a geodesic");
        std::mt19937_64 rng = derivedRng(cfg.seed, stableHash(p.id));
        for (auto [l, mm] : subsegments(eg.n, rng)) {
            const auto r = subsegmentCheck(m, eg, l, mm, SubsegmentMode::Strong, thread);
            ++rep.checks;
            raise(maxima, strongKey, Rational(r.maxDistance));
            if (r.maxDistance > 198)
                rep.failures.push_back(fmt::format("subsegment [{},{}] layer {}: distance {}", l, mm, r.atLayer,
                                                   r.maxDistance));
        }
        // Goodness of the thread between the first vertices of the ends.
        const GoodGeodesic g = makeGoodGeodesic(*caches[p.family], p.sigma.front(), p.tau.front(), cfg.c);
        ++rep.checks;
        raise(maxima, certKey, Rational(g.maxValue));
    });
    out.notes.push_back(fmt::format("pairs {} (with thick layers {})", w.pairs.size(), countThick(w.pairs)));
    return out;
}

SuiteResult contractingSuite(const SuiteConfig& cfg) {
    SuiteResult out;
    out.name = "thmC";
    out.seed = cfg.seed;
    const std::string contrKey = "|r_cn r'_cn'| - c|ss'|";
    const std::string divKey = "|v_cn w_cm| - c|v_n w_m|";
    const std::string prefixKey = "|v_N w_N| - 2|v_k w_l|";
    out.observations.push_back({contrKey, Rational(0), Rational(cfg.c)});
    out.observations.push_back({divKey, Rational(0), Rational(cfg.d)});
    out.observations.push_back({prefixKey, Rational(0), Rational(cfg.d)});
    const std::vector<Family> families = suiteFamilies(cfg.seed);
    struct Triple {
        std::size_t family;
        VertexId t, s, s2;
    };
    std::vector<Triple> triples;
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        std::mt19937_64 rng = derivedRng(cfg.seed, 200 + fi);
        const VertexSet& vs = families[fi].complex->vertices();
        std::uniform_int_distribution<std::size_t> pick(0, vs.size() - 1);
        for (std::size_t k = 0; k < cfg.triplesPerFamily;) {
            const VertexId t = vs[pick(rng)], s = vs[pick(rng)], s2 = vs[pick(rng)];
            if (t == s || t == s2) continue;
            triples.push_back({fi, t, s, s2});
            ++k;
        }
    }
    std::vector<std::unique_ptr<EucGeodesicCache>> caches;
    for (const auto& f : families) caches.push_back(std::make_unique<EucGeodesicCache>(*f.metric));
    struct Local {
        Rational contr{0}, div{0};
        int prefix = 0;
        std::string error;
    };
    auto results = parallelMap(triples.size(), [&](std::size_t i) {
        Local l;
        const Triple& tr = triples[i];
        const EucGeodesicCache& cache = *caches[tr.family];
        try {
            l.contr = contractingCheck(cache, tr.t, tr.s, tr.s2).maxExcess;
            const GoodGeodesic v = makeGoodGeodesic(cache, tr.t, tr.s, cfg.c);
            const GoodGeodesic w = makeGoodGeodesic(cache, tr.t, tr.s2, cfg.c);
            l.div = divergenceExcess(cache.metric(), v.path.vertices, w.path.vertices).maxExcess;
            l.prefix = prefixExcess(cache.metric(), v.path.vertices, w.path.vertices);
        } catch (const std::exception& e) {
            l.error = fmt::format("{} triple ({}, {}, {}): {}", families[tr.family].name, tr.t, tr.s, tr.s2, e.what());
        }
        return l;
    });
    bool first = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const Local& l = results[i];
        out.checks += 3;
        if (!l.error.empty()) {
            out.failures.push_back(l.error);
            continue;
        }
        const Triple& tr = triples[i];
        const std::string id = fmt::format("{} triple ({}, {}, {})", families[tr.family].name, tr.t, tr.s, tr.s2);
        const Rational values[3] = {l.contr, l.div, Rational(l.prefix)};
        for (std::size_t q = 0; q < 3; ++q)
            if (first || out.observations[q].value < values[q]) {
                out.observations[q].value = values[q];
                out.observations[q].witness = id;
            }
        first = false;
    }
    out.instances = triples.size();
    return out;
}

SuiteResult closenessSuite(const SuiteConfig& cfg) {
    SuiteResult out;
    out.name = "prop99";
    out.seed = cfg.seed;
    const std::string key = "horizontal distance of the disc diagonal to the r side";
    out.observations.push_back({key, Rational(0), Rational(99)});
    const Workload w = workload(cfg);
    std::atomic<std::size_t> discs{0};
    forEachPair(w.families, w.pairs, out, [&](const Metric& m, const EndpointPair& p, CheckReport& rep, auto& maxima) {
        const EuclideanGeodesic eg = euclideanGeodesic(m, p.sigma, p.tau);
        const std::vector<VertexId> r = threadGeodesic(m, eg.deltas);
        std::vector<std::vector<VertexId>> others;
        std::vector<VertexId> sigmaSide, tauSide;
        for (std::size_t k = 0; k < eg.profile.sigma.size(); ++k) {
            sigmaSide.push_back(eg.profile.sigma[k].front());
            tauSide.push_back(eg.profile.tau[k].vertices().back());
        }
        others.push_back(sigmaSide);
        if (isGeodesic(m, tauSide)) others.push_back(tauSide);
        std::mt19937_64 rng = derivedRng(cfg.seed, stableHash(p.id));
        std::vector<std::pair<VertexId, VertexId>> ends;
        for (VertexId a : p.sigma)
            for (VertexId b : p.tau)
                if (m.dist(a, b) == eg.n) ends.emplace_back(a, b);
        for (int k = 0; k < 3 && !ends.empty(); ++k) {
            const auto [a, b] = ends[std::uniform_int_distribution<std::size_t>(0, ends.size() - 1)(rng)];
            const auto all = allGeodesics(m, a, b, cfg.geodesicCap);
            others.push_back(
                all.paths[std::uniform_int_distribution<std::size_t>(0, all.paths.size() - 1)(rng)].vertices);
        }
        for (const auto& path : others) {
            const ClosenessResult c = closenessCheck(m, path, r);
            ++rep.checks;
            raise(maxima, key, c.value);
            discs += static_cast<std::size_t>(c.thickIntervals);
            if (c.value > 99) rep.failures.push_back(fmt::format("closeness {}", toString(c.value)));
        }
    });
    out.notes.push_back(fmt::format("pairs {} (with thick layers {}), characteristic discs between geodesic pairs {}",
                                    w.pairs.size(), countThick(w.pairs), discs.load()));
    return out;
}

std::vector<std::string> suiteNames() { return {"gauss-bonnet", "layers", "egeo", "thm8.1", "thmB", "thmC", "prop99"}; }

SuiteResult runSuite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "gauss-bonnet") return gaussBonnetSuite(cfg);
    if (name == "layers") return layersSuite(cfg);
    if (name == "egeo") return eucPropertiesSuite(cfg);
    if (name == "thm8.1") return weakSubsegmentSuite(cfg);
    if (name == "thmB") return strongSubsegmentSuite(cfg);
    if (name == "thmC") return contractingSuite(cfg);
    if (name == "prop99") return closenessSuite(cfg);
    throw std::invalid_argument("unknown suite " + name);
}

}  // namespace systolic
