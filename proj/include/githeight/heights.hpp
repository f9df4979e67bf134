#pragma once

#include <string>
#include <vector>

#include "githeight/configuration.hpp"
#include "githeight/decompose.hpp"
#include "githeight/kempf_ness.hpp"
#include "githeight/nonarch.hpp"
#include "githeight/section.hpp"
#include "githeight/stability.hpp"

namespace githeight {

struct HeightOptions {
    long mc_samples = 1000000;
    unsigned long long seed = 0;
    double tol = 1e-8;
    int search_depth = 3;
};

/// Certified global height: componentwise sum of per-place intervals.
struct HeightEstimate {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<LocalHeightInterval> places; ///< archimedean entry first
    std::string config_digest;
    HeightOptions options;
    std::string section_note;

    const LocalHeightInterval& arch() const { return places.front(); }
};

/// Archimedean term plus finite terms over the bad primes; all other primes
/// contribute exactly 0 with Trivial certificates. Unstable input throws
/// UnstableError with the violating subspace.
HeightEstimate global_height(const Configuration& config, const HeightOptions& options = {});

/// Degree-weighted subadditivity of the per-degree heights:
///   (d1+d2) h(c1+c2) >= d1 h(c1) + d2 h(c2),
/// compared with interval bounds, plus the pointwise additivity identity of
/// the orbit functional at the combined scaling.
struct SubadditivityReport {
    bool pass = false;
    bool interval_ok = false;
    bool pointwise_ok = false;
    double weighted_sum_upper = 0.0;
    double weighted_parts_lower = 0.0;
    double pointwise_gap = 0.0;
    HeightEstimate sum, first, second;
};

SubadditivityReport subadditivity_check(const Configuration& c1, const Configuration& c2,
                                        const HeightOptions& options = {});

/// Declarative random family of configurations.
struct FamilySpec {
    int max_ambient = 2;
    int max_points = 5;
    long entry_range = 2;                  ///< entries drawn from [-range, range]
    std::vector<Rat> multiplicities;       ///< empty means all 1
    int count = 100;
    unsigned long long seed = 0;

    static FamilySpec default_family();
};

std::vector<Configuration> generate_family(const FamilySpec& spec);

/// One theorem-level verification across a family.
struct SuiteCheck {
    std::string name;
    int checked = 0;
    int failed = 0;
    std::vector<std::string> counterexamples;
    bool pass() const { return failed == 0; }
};

struct SuiteReport {
    std::vector<SuiteCheck> checks;
    int stable = 0, strictly_semistable = 0, unstable = 0;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass()) return false;
        return true;
    }
};

/// Runs the stability oracle, decomposition soundness, height
/// nonnegativity, stable witness mechanism and hyperplane positivity over
/// the declared family.
SuiteReport positivity_suite(const FamilySpec& family, const HeightOptions& options = {});

} // namespace githeight
