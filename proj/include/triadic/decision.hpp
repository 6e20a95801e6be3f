#pragma once

#include "triadic/hypothesis.hpp"
#include "triadic/losses.hpp"
#include "triadic/model.hpp"
#include "triadic/verdict.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace triadic {

enum class Provenance { Threshold, Region, Direct, External };
std::string_view to_string(Provenance p) noexcept;

/// Largest Theta for which verdict tables are materialized; above it verdicts are computed
/// on demand from the defining rule.
inline constexpr unsigned kMaterializeLimit = 12;

/// A verdict for every (sample index x, hypothesis H).
class SimultaneousTest {
public:
    using Rule = std::function<Verdict(std::size_t x, Mask h)>;

    /// table[x * 2^k + mask]; throws Error(DimensionMismatch) on a wrong size.
    static SimultaneousTest from_table(unsigned k, std::size_t m, std::vector<Verdict> table,
                                       Provenance provenance = Provenance::External);
    /// Materialized in parallel when k <= kMaterializeLimit, otherwise evaluated lazily.
    /// The rule must be safe to call concurrently.
    static SimultaneousTest from_rule(unsigned k, std::size_t m, Rule rule, Provenance provenance);

    unsigned theta_size() const noexcept { return k_; }
    std::size_t x_size() const noexcept { return m_; }
    Provenance provenance() const noexcept { return provenance_; }
    bool materialized() const noexcept { return rule_ == nullptr; }

    Verdict verdict(std::size_t x, Mask h) const;
    Verdict operator()(std::size_t x, const Hypothesis& h) const { return verdict(x, h.bits()); }

    /// Verdicts of all 2^k hypotheses at x; only for materialized tests.
    std::span<const Verdict> column(std::size_t x) const;

private:
    SimultaneousTest() = default;

    unsigned k_ = 0;
    std::size_t m_ = 0;
    Provenance provenance_ = Provenance::External;
    std::vector<Verdict> table_;
    std::shared_ptr<const Rule> rule_;
};

struct Mismatch {
    std::size_t x;
    Mask h;
    Verdict left;
    Verdict right;
};

/// First (x, H) in (x, mask) order where the tests disagree; nullopt when identical.
/// Throws Error(DimensionMismatch) if the shapes differ.
std::optional<Mismatch> first_difference(const SimultaneousTest& a, const SimultaneousTest& b);

struct ExpectedLosses {
    std::array<Rational, 3> by_verdict;
    const Rational& operator[](Verdict v) const { return by_verdict[index_of(v)]; }
};

ExpectedLosses expected_losses(const LossTable& loss, std::span<const Rational> dist);

/// Minimizer of the expected loss; ties go Boundary, then Accept, then Reject.
Verdict bayes_choice(const ExpectedLosses& e);

/// Verdict by the three-region threshold rule: accept iff p > beta, reject iff p < alpha.
Verdict threshold_verdict(const Rational& p, const Thresholds& t);

/// Expected-loss minimization for every (x, H).
SimultaneousTest bayes_test_direct(const Model& model, const LossFamily& loss);

/// Threshold rule with per-hypothesis thresholds; no validity check on where they came from.
SimultaneousTest threshold_test(const Model& model, std::function<Thresholds(Mask)> thresholds);

/// Threshold rule for a valid EC loss. Throws Error(InvalidLoss).
SimultaneousTest bayes_test_ec(const Model& model, const ECLoss& loss);

/// Accept iff R(x) is inside H, reject iff disjoint. Throws Error(EmptyRegion) if some R(x) is empty.
SimultaneousTest region_test(const RegionEstimator& regions);

/// Region test on x -> hpd(posterior(x), levels[x]). Throws Error(EmptyRegion) when a level
/// exceeds the largest posterior mass, Error(DimensionMismatch) on a wrong number of levels.
SimultaneousTest gfbst(const Model& model, std::span<const Rational> levels);
RegionEstimator hpd_regions(const Model& model, std::span<const Rational> levels);

/// Bayes test against the GFBST loss via its closed-form rule. Throws Error(InvalidLoss).
SimultaneousTest gfbst_bayes(const Model& model, const GFBSTLoss& loss);

/// R*(x) = {theta' : E[L_{theta'}(1/2)] <= E[L_{theta'}(1)]}. Throws Error(ImproperLoss) if a
/// singleton table is not proper.
RegionEstimator bayes_region(const Model& model, const LossFamily& loss);

}  // namespace triadic
