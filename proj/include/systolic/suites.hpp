#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "systolic/eucgeo.hpp"
#include "systolic/metric.hpp"
#include "systolic/rational.hpp"

namespace systolic {

struct SuiteConfig {
    std::uint64_t seed = 1;
    int c = kDefaultC;
    int d = contractionConstant(kDefaultC);
    bool dOverridden = false;
    /// Pairs sampled per complex family.
    std::size_t pairsPerFamily = 50;
    /// Triples per family for the contracting suite.
    std::size_t triplesPerFamily = 16;
    std::size_t geodesicCap = 2000;
};

/// A generated complex the suites draw instances from.
struct Family {
    std::string name;
    bool flat = false;
    std::shared_ptr<const FlagComplex> complex;
    std::shared_ptr<const Metric> metric;
};

/// Flat regions, random discs with degree-7 vertices, and discs with twinned
/// vertices (which carry 3-simplices and several characteristic surfaces).
std::vector<Family> suiteFamilies(std::uint64_t seed);

/// Simplices sigma, tau with sigma ⊂ S_n(tau), tau ⊂ S_n(sigma), n >= 2.
struct EndpointPair {
    std::string id;
    std::size_t family = 0;
    Simplex sigma, tau;
    bool thick = false;
};

/// Up to `count` pairs per family, about half of them with a thick layer
/// where the family has enough. Deterministic in the seed.
std::vector<EndpointPair> suitePairs(const std::vector<Family>& families, std::uint64_t seed, std::size_t count);

/// A measured maximum and the ceiling it must respect.
struct Observation {
    std::string quantity;
    Rational value{0};
    Rational bound{0};
    /// First instance (in instance order) attaining the value.
    std::string witness;
    bool within() const { return value <= bound; }
};

struct SuiteResult {
    std::string name;
    std::uint64_t seed = 0;
    std::size_t instances = 0;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    std::vector<Observation> observations;
    std::vector<std::string> notes;

    bool ok() const;
    std::string report(const SuiteConfig& cfg) const;
};

SuiteResult gaussBonnetSuite(const SuiteConfig& cfg, std::size_t discs = 100);
SuiteResult layersSuite(const SuiteConfig& cfg);
SuiteResult eucPropertiesSuite(const SuiteConfig& cfg);
SuiteResult weakSubsegmentSuite(const SuiteConfig& cfg);
SuiteResult strongSubsegmentSuite(const SuiteConfig& cfg);
SuiteResult contractingSuite(const SuiteConfig& cfg);
SuiteResult closenessSuite(const SuiteConfig& cfg);

/// Names accepted by runSuite: gauss-bonnet, layers, egeo, thm8.1, thmB,
/// thmC, prop99.
std::vector<std::string> suiteNames();
SuiteResult runSuite(const std::string& name, const SuiteConfig& cfg);

}  // namespace systolic
