// Command-line front end for the systolic library.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "systolic/boundary.hpp"
#include "systolic/complex.hpp"
#include "systolic/eucgeo.hpp"
#include "systolic/generators.hpp"
#include "systolic/layers.hpp"
#include "systolic/metric.hpp"
#include "systolic/suites.hpp"
#include "systolic/svg.hpp"

using namespace systolic;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string complexPath;
    std::string from, to;
    std::uint64_t seed = 1;
    std::string suite = "all";
    std::string svgPath;
    int c = kDefaultC;
    std::optional<int> d;
    std::size_t cap = 20000;
    bool json = false;
    // gen
    std::string family = "hexagon";
    int size = 3;
    int width = 4;
    double p7 = 0.2;
    double twins = 0.3;
    std::string output;
    // good
    std::string path;
    // atlas
    int radius = 3;
};

// "3" or "3,4,5".
Simplex parseSimplex(const FlagComplex& x, const std::string& text) {
    VertexSet vs;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            vs.push_back(static_cast<VertexId>(v));
        } catch (const std::exception&) {
            throw UsageError(fmt::format("'{}' is not a vertex list", text));
        }
    }
    vs = normalized(std::move(vs));
    if (vs.empty()) throw UsageError("empty simplex");
    for (VertexId v : vs)
        if (!std::binary_search(x.vertices().begin(), x.vertices().end(), v))
            throw UsageError(fmt::format("vertex {} is not in the complex", v));
    if (!x.isClique(vs)) throw UsageError(fmt::format("{} is not a simplex", formatSet(vs)));
    return Simplex(std::move(vs));
}

VertexId parseVertex(const FlagComplex& x, const std::string& text) {
    const Simplex s = parseSimplex(x, text);
    if (s.size() != 1) throw UsageError(fmt::format("'{}' must be a single vertex", text));
    return s.front();
}

FlagComplex loadComplex(const Options& o) {
    if (o.complexPath.empty()) throw UsageError("--complex is required");
    try {
        return readComplexFile(o.complexPath);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

void header(const std::string& command, const Options& o) {
    std::cout << fmt::format("# systolic {} seed {}\n", command, o.seed);
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << content;
}

int cmdGen(const Options& o) {
    std::mt19937_64 rng(o.seed);
    FlagComplex x;
    if (o.family == "hexagon")
        x = genHexagon(o.size);
    else if (o.family == "parallelogram")
        x = genParallelogram(o.width, o.size);
    else if (o.family == "flat-random")
        x = genRandomFlatRegion(rng, o.size, o.width);
    else if (o.family == "disc")
        x = genDiscWithDegrees(rng, o.size, o.p7);
    else if (o.family == "twins")
        x = addRandomTwins(rng, genDiscWithDegrees(rng, o.size, o.p7), o.twins);
    else
        throw UsageError("unknown family " + o.family);
    std::string text = fmt::format("# systolic gen family {} size {} seed {}\n", o.family, o.size, o.seed);
    text += serializeComplex(x);
    if (o.output.empty())
        std::cout << text;
    else
        writeFile(o.output, text);
    return 0;
}

int cmdCheck(const Options& o) {
    const FlagComplex x = loadComplex(o);
    header("check", o);
    const bool connected = x.isConnected();
    const auto local = isLocally6Large(x);
    const auto sc = isSimplyConnectedHeuristic(x);
    int dim = -1;
    for (const Simplex& s : x.maximalSimplices()) dim = std::max(dim, s.dimension());
    std::cout << fmt::format("vertices {} edges {} dimension {}\n", x.vertexCount(), x.edges().size(), dim);
    std::cout << "flag yes (clique complex of its 1-skeleton)\n";
    std::cout << "connected " << (connected ? "yes" : "no") << "\n";
    if (local.ok)
        std::cout << "locally-6-large yes\n";
    else
        std::cout << fmt::format("locally-6-large no: link of {} has induced cycle {}\n", local.simplex.str(),
                                 fmt::join(local.cycle, " "));
    std::cout << "simply-connected "
              << (sc == SimpleConnectivity::Verified ? "verified (collapses)" : "unknown (heuristic inconclusive)")
              << "\n";
    return connected && local.ok ? 0 : kExitFailure;
}

int cmdDist(const Options& o) {
    const FlagComplex x = loadComplex(o);
    Metric m(x);
    const Simplex a = parseSimplex(x, o.from), b = parseSimplex(x, o.to);
    header("dist", o);
    std::cout << m.dist(a.vertices(), b.vertices()) << "\n";
    return 0;
}

int cmdDgeo(const Options& o) {
    const FlagComplex x = loadComplex(o);
    Metric m(x);
    const Simplex a = parseSimplex(x, o.from), b = parseSimplex(x, o.to);
    const SimplexSequence g = directedGeodesic(m, a, b.vertices());
    if (!o.json) header("dgeo", o);
    if (o.json) {
        nlohmann::ordered_json j;
        j["seed"] = o.seed;
        j["from"] = a.vertices();
        j["to"] = b.vertices();
        nlohmann::ordered_json seq = nlohmann::ordered_json::array();
        for (const Simplex& s : g.simplices) seq.push_back(s.vertices());
        j["simplices"] = seq;
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t k = 0; k < g.size(); ++k) std::cout << fmt::format("{} {}\n", k, g[k].str());
    }
    return 0;
}

std::vector<SvgScene> discScenes(const EuclideanGeodesic& eg) {
    std::vector<SvgScene> scenes;
    for (const auto& t : eg.intervals) {
        SvgScene s;
        s.disc = &t.disc.disc.complex();
        s.embedding = t.disc.embedding;
        s.paths.push_back({t.diagonal, "#d1495b"});
        for (const auto& r : t.rho) s.highlighted = setUnion(s.highlighted, r);
        s.title = fmt::format("layers {}..{}", t.disc.first, t.disc.last);
        scenes.push_back(std::move(s));
    }
    return scenes;
}

int cmdEgeo(const Options& o) {
    const FlagComplex x = loadComplex(o);
    Metric m(x);
    const Simplex a = parseSimplex(x, o.from), b = parseSimplex(x, o.to);
    const EuclideanGeodesic eg = euclideanGeodesic(m, a, b);
    const CheckReport rep = verifyEucProperties(m, eg);
    if (!o.json) header("egeo", o);
    if (o.json) {
        nlohmann::ordered_json j;
        j["seed"] = o.seed;
        j["from"] = a.vertices();
        j["to"] = b.vertices();
        j["n"] = eg.n;
        nlohmann::ordered_json deltas = nlohmann::ordered_json::array();
        for (const Simplex& s : eg.deltas) deltas.push_back(s.vertices());
        j["deltas"] = deltas;
        j["thickness"] = eg.profile.thickness;
        nlohmann::ordered_json intervals = nlohmann::ordered_json::array();
        for (const auto& t : eg.intervals) intervals.push_back({t.disc.first, t.disc.last});
        j["thickIntervals"] = intervals;
        j["checks"] = rep.checks;
        j["failures"] = rep.failures;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << fmt::format("n {}\n", eg.n);
        for (int k = 0; k <= eg.n; ++k)
            std::cout << fmt::format("{} thickness {} delta {}\n", k, eg.profile.thickness[static_cast<std::size_t>(k)],
                                     eg.deltas[static_cast<std::size_t>(k)].str());
        for (const auto& t : eg.intervals)
            std::cout << fmt::format("thick interval {}..{} disc {}\n", t.disc.first, t.disc.last, t.disc.shapeKey());
        std::cout << fmt::format("checks {} failures {}\n", rep.checks, rep.failures.size());
        if (!rep.ok()) std::cout << "first failure: " << rep.failures.front() << "\n";
    }
    if (!o.svgPath.empty()) writeFile(o.svgPath, renderSvg(discScenes(eg)));
    return rep.ok() ? 0 : kExitFailure;
}

std::vector<VertexId> parsePath(const FlagComplex& x, const std::string& text) {
    std::vector<VertexId> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parseVertex(x, item));
    return out;
}

int cmdGood(const Options& o) {
    const FlagComplex x = loadComplex(o);
    Metric m(x);
    EucGeodesicCache cache(m);
    header("good", o);
    std::cout << fmt::format("C {}\n", o.c);
    if (!o.path.empty()) {
        const std::vector<VertexId> path = parsePath(x, o.path);
        if (!isGeodesic(m, path)) throw UsageError("--path is not a 1-skeleton geodesic");
        const GoodnessResult r = isGoodGeodesic(cache, path, o.c);
        if (!r.good) {
            std::cout << "not good: " << r.violation->str() << "\n";
            return kExitFailure;
        }
        std::cout << fmt::format("good, certificate max {}\n", r.good->maxValue);
        return 0;
    }
    const VertexId v = parseVertex(x, o.from), w = parseVertex(x, o.to);
    const GoodGeodesic g = makeGoodGeodesic(cache, v, w, o.c);
    std::cout << fmt::format("path {}\n", fmt::join(g.path.vertices, " "));
    std::cout << fmt::format("good, certificate max {} over {} entries\n", g.maxValue, g.certificate.size());
    return 0;
}

int cmdVerify(const Options& o) {
    SuiteConfig cfg;
    cfg.seed = o.seed;
    cfg.c = o.c;
    cfg.d = o.d.value_or(contractionConstant(o.c));
    cfg.dOverridden = o.d.has_value();
    cfg.geodesicCap = o.cap;
    std::vector<std::string> names;
    if (o.suite == "all")
        names = suiteNames();
    else
        names.push_back(o.suite);
    const std::vector<std::string> known = suiteNames();
    for (const auto& n : names)
        if (std::find(known.begin(), known.end(), n) == known.end())
            throw UsageError(fmt::format("unknown suite '{}'; expected one of: {}, all", n, fmt::join(known, ", ")));
    header("verify", o);
    bool ok = true;
    for (const auto& n : names) {
        const SuiteResult r = runSuite(n, cfg);
        std::cout << r.report(cfg);
        ok = ok && r.ok();
    }
    return ok ? 0 : kExitFailure;
}

int cmdAtlas(const Options& o) {
    const FlagComplex x = loadComplex(o);
    Metric m(x);
    EucGeodesicCache cache(m);
    const VertexId base = parseVertex(x, o.from);
    AtlasOptions opt;
    opt.c = o.c;
    opt.d = o.d.value_or(contractionConstant(o.c));
    opt.cap = o.cap;
    const BoundaryAtlas atlas = boundaryAtlas(cache, base, o.radius, opt);
    if (o.json) {
        std::cout << atlas.json();
    } else {
        header("atlas", o);
        if (o.d) std::cout << fmt::format("D override {} (3C+2 = {})\n", *o.d, contractionConstant(o.c));
        std::cout << atlas.text();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Systolic complexes: geodesics, characteristic discs and boundary checks"};
    app.require_subcommand(1);
    Options o;

    auto addComplex = [&](CLI::App* c) { c->add_option("--complex", o.complexPath, "complex file")->required(); };
    auto addEnds = [&](CLI::App* c) {
        c->add_option("--from", o.from, "vertex or comma-separated simplex")->required();
        c->add_option("--to", o.to, "vertex or comma-separated simplex")->required();
    };
    auto addSeed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "random seed"); };

    auto* gen = app.add_subcommand("gen", "write a generated complex");
    gen->add_option("--family", o.family, "hexagon | parallelogram | flat-random | disc | twins");
    gen->add_option("--size", o.size, "radius, rows, or rings");
    gen->add_option("--width", o.width, "row width for parallelogram and flat-random");
    gen->add_option("--p7", o.p7, "probability of degree 7 for disc and twins");
    gen->add_option("--twins", o.twins, "twin probability for twins");
    gen->add_option("-o,--output", o.output, "output file (default stdout)");
    addSeed(gen);

    auto* check = app.add_subcommand("check", "flagness, local 6-largeness, collapsibility");
    addComplex(check);
    addSeed(check);

    auto* dist = app.add_subcommand("dist", "distance between simplices");
    addComplex(dist);
    addEnds(dist);
    addSeed(dist);

    auto* dgeo = app.add_subcommand("dgeo", "directed geodesic");
    addComplex(dgeo);
    addEnds(dgeo);
    addSeed(dgeo);
    dgeo->add_flag("--json", o.json);

    auto* egeo = app.add_subcommand("egeo", "Euclidean geodesic");
    addComplex(egeo);
    addEnds(egeo);
    addSeed(egeo);
    egeo->add_option("--svg", o.svgPath, "write the characteristic discs as SVG");
    egeo->add_flag("--json", o.json);

    auto* good = app.add_subcommand("good", "make or verify a good geodesic");
    addComplex(good);
    good->add_option("--from", o.from, "start vertex");
    good->add_option("--to", o.to, "end vertex");
    good->add_option("--path", o.path, "comma-separated geodesic to verify instead");
    good->add_option("--C", o.c, "constant C");
    addSeed(good);

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", o.suite, "gauss-bonnet | layers | egeo | thm8.1 | thmB | thmC | prop99 | all");
    verify->add_option("--C", o.c, "constant C");
    verify->add_option("--D", o.d, "override D (default 3C+2)");
    verify->add_option("--cap", o.cap, "geodesic enumeration cap");
    addSeed(verify);

    auto* atlas = app.add_subcommand("atlas", "finite-radius boundary atlas");
    addComplex(atlas);
    atlas->add_option("--from", o.from, "basepoint")->required();
    atlas->add_option("--radius", o.radius, "ray length N");
    atlas->add_option("--C", o.c, "constant C");
    atlas->add_option("--D", o.d, "override D (default 3C+2)");
    atlas->add_option("--cap", o.cap, "ray cap");
    atlas->add_flag("--json", o.json);
    addSeed(atlas);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmdGen(o);
        if (check->parsed()) return cmdCheck(o);
        if (dist->parsed()) return cmdDist(o);
        if (dgeo->parsed()) return cmdDgeo(o);
        if (egeo->parsed()) return cmdEgeo(o);
        if (good->parsed()) {
            if (o.path.empty() && (o.from.empty() || o.to.empty())) throw UsageError("good needs --from/--to or --path");
            return cmdGood(o);
        }
        if (verify->parsed()) return cmdVerify(o);
        if (atlas->parsed()) return cmdAtlas(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TheoryViolation& e) {
        std::cerr << "assertion failed: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
