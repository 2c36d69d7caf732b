#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bdk/io.hpp"
#include "bdk/lift.hpp"

namespace bdk {

struct SuiteConfig {
    int level = 40;
    int delta = 0;              // 0: level / 2
    double r_max = default_rmax;
    double tol = 1e-3;          // kernel-level tolerance
    double sigma_tol = 1e-2;    // Σ-level tolerance
    std::uint64_t seed = 0x5EED;
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    json report;
};

// kernel-identity, core-pullback, invariant-pullback, sandwich, zw, nevanlinna
const std::vector<std::string>& suite_names();
// "all" runs every suite; unknown names throw InvalidInput.
std::vector<SuiteResult> run_suite(const std::string& name, const SuiteConfig& cfg = {});

// Lift battery: M in {H², [z - w], [z]} against (θ, φ) in {(z², w²), (Möbius(1/2), w³)}.
struct BatteryCase {
    std::string source_name, symbol_name;
    LiftedSubmodule lifted;
};
std::vector<BatteryCase> lift_battery(int level);

// Degree uniform in 1..max_degree, zeros uniform in the disk of the given radius, gamma = 1.
BlaschkeProduct random_blaschke(std::mt19937_64& g, int max_degree, double radius = 0.9);

} // namespace bdk
