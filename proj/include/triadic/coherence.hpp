#pragma once

#include "triadic/decision.hpp"
#include "triadic/hypothesis.hpp"
#include "triadic/model.hpp"
#include "triadic/verdict.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace triadic {

enum class Axiom {
    Propriety,               // Accept(Theta)
    Monotonicity,            // H1 in H2: Accept(H1) => Accept(H2); Boundary(H1) => not Reject(H2)
    IntersectionConsonance,  // Accept(H1), Accept(H2) => Accept(H1 & H2)
    Invertibility,           // Accept(H) <=> Reject(H^c)
    UnionConsonance,         // Reject(H1), Reject(H2) => Reject(H1 | H2); informational
};

inline constexpr std::size_t kAxiomCount = 5;

std::string_view to_string(Axiom a) noexcept;
std::optional<Axiom> parse_axiom(std::string_view s) noexcept;

/// Union consonance is implied by the other four and does not enter `coherent`.
constexpr bool is_defining(Axiom a) noexcept { return a != Axiom::UnionConsonance; }

/// One offending instance. `verdicts` lists the verdicts of the hypotheses involved:
/// propriety {Theta}; monotonicity {H1, H2}; intersection {H1, H2, H1&H2};
/// invertibility {H, H^c}; union {H1, H2, H1|H2}.
struct Violation {
    Axiom axiom;
    std::size_t x;
    Mask h1;
    std::optional<Mask> h2;
    std::vector<Verdict> verdicts;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct CoherenceOptions {
    /// Exhaustive scans are O(4^k) per x; larger Theta raise TooLarge unless sampling is requested.
    unsigned max_k = 12;
    /// When set and k > max_k, check this many random (H1, H2) pairs per x instead.
    std::optional<std::uint64_t> sampled_pairs;
    std::uint64_t seed = 0;
    /// Recorded violations per axiom; all are counted.
    std::size_t max_recorded = 1000;
};

struct CoherenceReport {
    bool coherent = true;
    bool exhaustive = true;
    unsigned theta_size = 0;
    std::size_t x_size = 0;
    std::array<std::uint64_t, kAxiomCount> counts{};
    /// Sorted by (axiom, x, h1, h2).
    std::vector<Violation> violations;

    std::uint64_t count(Axiom a) const noexcept { return counts[static_cast<std::size_t>(a)]; }
    bool violates(Axiom a) const noexcept { return count(a) > 0; }
    bool has_violation(Axiom a, std::size_t x, Mask h1, std::optional<Mask> h2 = std::nullopt) const;
};

/// Scans all four coherence axioms plus union consonance. Throws Error(TooLarge).
CoherenceReport check_coherence(const SimultaneousTest& test, const CoherenceOptions& options = {});

/// Straightforward O(4^k) reference scan; same report as check_coherence on exhaustive input.
CoherenceReport check_coherence_serial(const SimultaneousTest& test,
                                       const CoherenceOptions& options = {});

/// R(x) = {theta : singleton verdict at x is not Reject}. Regions may be empty.
RegionEstimator extract_region(const SimultaneousTest& test);

struct RegionBasedResult {
    bool region_based = false;
    std::optional<RegionEstimator> witness;
    /// First disagreement between the test and region_test(extracted); absent when an
    /// extracted region is empty (then no region test exists).
    std::optional<Mismatch> mismatch;
    std::optional<std::size_t> empty_region_at;
};

/// Throws Error(TooLarge) when k > max_k.
RegionBasedResult is_region_based(const SimultaneousTest& test, unsigned max_k = 12);

/// True iff every extracted region is an HPD of the model's posterior.
/// Throws Error(NotRegionBased) or Error(DimensionMismatch).
bool certify_gfbst(const SimultaneousTest& test, const Model& model, unsigned max_k = 12);

}  // namespace triadic
