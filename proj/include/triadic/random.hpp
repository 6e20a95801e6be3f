#pragma once

// Seeded generators for randomized property checks. Reduction is by modulo so sequences
// depend only on std::mt19937_64, which the standard pins down exactly.

#include "triadic/hypothesis.hpp"
#include "triadic/losses.hpp"
#include "triadic/model.hpp"
#include "triadic/verdict.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace triadic::random {

using Rng = std::mt19937_64;

/// Uniform-ish integer in [0, n).
inline std::uint64_t below(Rng& rng, std::uint64_t n) { return rng() % n; }

/// Integer in [lo, hi].
inline std::uint64_t between(Rng& rng, std::uint64_t lo, std::uint64_t hi) { return lo + below(rng, hi - lo + 1); }

/// Probability vector from integer weights in [0, max_weight] (or [1, max_weight]); small weights
/// make exact ties common.
std::vector<Rational> distribution(Rng& rng, unsigned k, bool allow_zeros = true, unsigned max_weight = 9);

/// Prior + likelihood model with every marginal positive.
Model model(Rng& rng, unsigned k, std::size_t m);

/// Posterior-form model whose columns put most mass on one point.
Model peaked_model(Rng& rng, unsigned k, std::size_t m);

/// Constants satisfying all three EC validity constraints.
ECConstants valid_ec_constants(Rng& rng);

ECLoss tec(Rng& rng);

/// EC loss with `overrides` random hypotheses given their own valid constants.
ECLoss per_hypothesis_ec(Rng& rng, unsigned k, unsigned overrides);

/// 0 < v < b, c > 0.
GFBSTLoss gfbst_loss(Rng& rng);

RegionEstimator nonempty_regions(Rng& rng, unsigned k, std::size_t m);

/// Uniform verdict table over m * 2^k entries.
std::vector<Verdict> verdict_table(Rng& rng, unsigned k, std::size_t m);

/// Loss table satisfying the properness inequalities for h.
LossTable proper_table(Rng& rng, const Hypothesis& h);

}  // namespace triadic::random
