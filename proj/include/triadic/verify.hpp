#pragma once

// Seeded property suites for the characterization theorems, shared by the CLI and the
// acceptance tests.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace triadic {

struct VerifyBounds {
    unsigned max_theta = 4;            // 1..12
    std::size_t max_x = 2;             // >= 1
    std::size_t models = 200;          // random models per model-driven suite
    std::size_t losses = 10;           // loss draws per model (GFBST suite)
    unsigned thm1_exhaustive_k = 2;    // all 3^(2^k) single-observation tests; <= 3
    unsigned thm1_sample_k = 3;        // sampled tests live on this Theta
    std::size_t thm1_samples = 10000;
    std::size_t thm3_tests = 100;
    std::size_t thm4_losses = 50;
    std::size_t eq1_pairs = 500;
    std::size_t proper_instances = 500;
};

/// Throws Error(ValidationError) when a bound is outside the module guards.
void validate(const VerifyBounds& bounds);

struct SuiteResult {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::map<std::string, std::uint64_t> stats;
    std::vector<std::string> failure_samples;  // at most kMaxSamples

    static constexpr std::size_t kMaxSamples = 5;

    bool passed() const noexcept { return failures == 0; }
    void check(bool ok, const std::string& what);
};

struct VerifySummary {
    std::uint64_t seed = 0;
    VerifyBounds bounds;
    std::vector<SuiteResult> suites;

    bool passed() const noexcept;
};

/// Coherent single-observation tests are region based (exhaustive at small k, sampled above).
SuiteResult verify_thm1(const VerifyBounds& bounds, std::uint64_t seed);
/// Coherent EC-Bayes tests under a TEC loss are GFBSTs, with region hpd(posterior, alpha).
SuiteResult verify_thm2(const VerifyBounds& bounds, std::uint64_t seed);
/// Every coherent region test has a replaying TEC witness whose regions are HPDs.
SuiteResult verify_thm3(const VerifyBounds& bounds, std::uint64_t seed);
/// Every valid EC loss over k >= 3 points admits an incoherent Bayes test.
SuiteResult verify_thm4(const VerifyBounds& bounds, std::uint64_t seed);
/// Bayes tests against the GFBST loss are coherent GFBSTs.
SuiteResult verify_thm5(const VerifyBounds& bounds, std::uint64_t seed);
/// Threshold rule agrees with direct expected-loss minimization up to exact ties.
SuiteResult verify_thresholds(const VerifyBounds& bounds, std::uint64_t seed);
/// Valid EC losses are proper; proper singleton losses never prefer rejection over the
/// boundary once acceptance is competitive.
SuiteResult verify_properness(const VerifyBounds& bounds, std::uint64_t seed);

/// All suites in a fixed order; deterministic in (bounds, seed).
VerifySummary verify_theorems(const VerifyBounds& bounds, std::uint64_t seed);

}  // namespace triadic
