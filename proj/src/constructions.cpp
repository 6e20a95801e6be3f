#include "triadic/constructions.hpp"

#include "triadic/error.hpp"

#include <algorithm>
#include <string>

namespace triadic {

Model single_observation_model(std::vector<Rational> posterior) {
    RationalMatrix table(posterior.size(), 1);
    for (std::size_t t = 0; t < posterior.size(); ++t) table(t, 0) = std::move(posterior[t]);
    return Model::from_posterior(table, {Rational(1)});
}

TecWitness tec_witness(const SimultaneousTest& test, Eq3Variant variant, const CoherenceOptions& options) {
    const auto report = check_coherence(test, options);
    if (!report.coherent) throw Error(ErrorKind::NotCoherent, "tec_witness needs a logically coherent test");

    const unsigned k = test.theta_size();
    const std::size_t m = test.x_size();
    auto regions = extract_region(test);
    for (std::size_t x = 0; x < m; ++x)
        if (regions(x).is_empty()) throw Error(ErrorKind::NotCoherent, "every singleton is rejected at x = " + std::to_string(x));

    // P(theta | x) = 1/(2k) * 1/D + (2k-1)/(2k) * 1[theta in R(x)] / |R(x)|
    const Rational uniform_weight = ratio(1, 2 * k);
    const Rational region_weight = ratio(2 * k - 1, 2 * k);
    const Rational uniform_share = ratio(1, variant == Eq3Variant::Theta ? k : static_cast<unsigned long>(m));
    RationalMatrix posterior(k, m);
    for (std::size_t x = 0; x < m; ++x) {
        const Rational region_share = ratio(1, regions(x).size());
        for (unsigned theta = 0; theta < k; ++theta) {
            Rational p = uniform_weight * uniform_share;
            if (regions(x).contains(theta)) p += region_weight * region_share;
            posterior(theta, x) = p;
        }
    }

    const unsigned kappa = std::max(k, 3U);
    ECConstants constants{Rational(kappa), Rational(1), Rational(1), Rational(kappa)};
    TecWitness witness{Model::from_posterior(posterior, std::vector<Rational>(m, ratio(1, static_cast<unsigned long>(m)))),
                       ECLoss::tec(constants), kappa, thresholds_of(constants), std::move(regions)};

    const auto replay = bayes_test_ec(witness.model, witness.loss);
    if (const auto diff = first_difference(replay, test))
        throw Error(ErrorKind::ReplayFailed, "witness gives " + std::string(to_string(diff->left)) + " instead of " +
                                                 std::string(to_string(diff->right)) + " for " +
                                                 Hypothesis(k, diff->h).to_string() + " at x = " + std::to_string(diff->x));
    return witness;
}

namespace {

struct Candidate {
    std::vector<Rational> posterior;
    Axiom axiom;
    Hypothesis h1;
    std::optional<Hypothesis> h2;
    std::string recipe;
};

/// Places the given masses on two points and spreads the remainder evenly over the others.
std::vector<Rational> two_point_posterior(unsigned k, unsigned a, const Rational& mass_a, unsigned b, const Rational& mass_b) {
    std::vector<Rational> p(k, Rational(0));
    p[a] = mass_a;
    p[b] = mass_b;
    const Rational rest = (1 - mass_a - mass_b) / Rational(k - 2);
    for (unsigned t = 0; t < k; ++t)
        if (t != a && t != b) p[t] = rest;
    return p;
}

std::optional<Counterexample> replay(const ECLoss& loss, Candidate c) {
    if (!is_distribution(c.posterior)) return std::nullopt;
    const auto test = bayes_test_ec(single_observation_model(c.posterior), loss);
    auto report = check_coherence(test);
    if (report.coherent) return std::nullopt;
    const std::optional<Mask> h2 = c.h2 ? std::optional<Mask>(c.h2->bits()) : std::nullopt;
    if (!report.has_violation(c.axiom, 0, c.h1.bits(), h2)) return std::nullopt;
    return Counterexample{std::move(c.posterior), c.axiom, c.h1, c.h2, std::move(c.recipe), std::move(report)};
}

std::vector<Candidate> singleton_pair_candidates(const ECLoss& loss, unsigned k, unsigned a, unsigned b) {
    const auto single_a = Hypothesis::singleton(k, a);
    const auto single_b = Hypothesis::singleton(k, b);
    const auto both = single_a | single_b;
    const Rational alpha_a = thresholds_of(loss.constants(single_a.bits())).alpha;
    const Rational alpha_b = thresholds_of(loss.constants(single_b.bits())).alpha;
    const Rational alpha_both = thresholds_of(loss.constants(both.bits())).alpha;

    std::vector<Candidate> out;
    // Monotonicity: {a} and {a,b} carry the same mass, strictly between their rejection levels.
    if (alpha_a < alpha_both) {
        const Rational p = (alpha_a + alpha_both) / 2;
        out.push_back({two_point_posterior(k, a, p, b, Rational(0)), Axiom::Monotonicity, single_a, both,
                       "monotonicity: P({a}) = P({a,b}) = (alpha_a + alpha_ab)/2"});
    }
    if (alpha_b < alpha_both) {
        const Rational p = (alpha_b + alpha_both) / 2;
        out.push_back({two_point_posterior(k, b, p, a, Rational(0)), Axiom::Monotonicity, single_b, both,
                       "monotonicity: P({b}) = P({a,b}) = (alpha_b + alpha_ab)/2"});
    }
    const Rational total = alpha_a + alpha_b;
    if (total > alpha_both) {
        // Union consonance: both singletons just below their rejection level, union above its own.
        const Rational delta = total - alpha_both;
        const Rational shift = ratio(2, 5) * delta;
        const Rational pa = alpha_a - shift, pb = alpha_b - shift;
        if (sgn(pa) >= 0 && sgn(pb) >= 0 && pa + pb <= 1)
            out.push_back({two_point_posterior(k, a, pa, b, pb), Axiom::UnionConsonance, single_a, single_b,
                           "union consonance: P({a}) = alpha_a - 0.4 delta, P({b}) = alpha_b - 0.4 delta"});
        Rational t = (alpha_both / total + 1) / 2;
        if (t * total > 1) t = 1 / total;
        out.push_back({two_point_posterior(k, a, t * alpha_a, b, t * alpha_b), Axiom::UnionConsonance, single_a, single_b,
                       "union consonance: P({a}) = t alpha_a, P({b}) = t alpha_b"});
    }
    return out;
}

/// Advances counts (nonnegative, fixed sum, at least two parts) to the next composition;
/// false after (d, 0, ..., 0).
bool next_composition(std::vector<unsigned>& counts) {
    const std::size_t last = counts.size() - 1;
    if (counts[last] > 0) {
        --counts[last];
        ++counts[last - 1];
        return true;
    }
    std::size_t i = last - 1;
    while (i > 0 && counts[i] == 0) --i;
    if (i == 0) return false;
    const unsigned moved = counts[i];
    counts[i] = 0;
    ++counts[i - 1];
    counts[last] = moved - 1;
    return true;
}

void check_counterexample_input(const ECLoss& loss, unsigned k) {
    if (k < 3) throw Error(ErrorKind::SizeTooSmall, "incoherence counterexamples need |Theta| >= 3, got " + std::to_string(k));
    if (k > kMaterializeLimit) throw Error(ErrorKind::TooLarge, "counterexample search over |Theta| = " + std::to_string(k));
    if (const auto bad = validate_ec(loss); !bad.empty())
        throw Error(ErrorKind::InvalidLoss, "EC loss violates " + std::string(to_string(bad.front().constraint)));
    for (const auto& [h, c] : loss.overrides())
        if ((h & ~full_mask(k)) != 0) throw Error(ErrorKind::DimensionMismatch, "EC override for a hypothesis outside Theta");
}

}  // namespace

Counterexample ec_incoherence_counterexample(const ECLoss& loss, unsigned k) {
    check_counterexample_input(loss, k);

    if (loss.trivial()) {
        const Rational alpha = thresholds_of(loss.shared()).alpha;
        Rational s = ratio(9, 10) * alpha;
        if (2 * s > 1) s = (alpha + 1) / 4;
        if (auto found = replay(loss, {two_point_posterior(k, 0, s, 1, s), Axiom::UnionConsonance,
                                       Hypothesis::singleton(k, 0), Hypothesis::singleton(k, 1),
                                       "union consonance: two singletons with mass 9 alpha / 10"}))
            return *found;
    }
    for (unsigned a = 0; a < k; ++a)
        for (unsigned b = a + 1; b < k; ++b)
            for (auto& candidate : singleton_pair_candidates(loss, k, a, b))
                if (auto found = replay(loss, std::move(candidate))) return *found;

    if (auto found = grid_counterexample(loss, k)) return *found;
    throw Error(ErrorKind::ReplayFailed, "no incoherent posterior found for this EC loss");
}

std::optional<Counterexample> grid_counterexample(const ECLoss& loss, unsigned k, unsigned max_denominator) {
    check_counterexample_input(loss, k);
    CoherenceOptions options;
    options.max_recorded = 1;
    std::vector<unsigned> counts(k, 0);
    for (unsigned d = 2; d <= max_denominator; ++d) {
        // Every composition of d into k parts, starting from (0, ..., 0, d).
        std::fill(counts.begin(), counts.end(), 0U);
        counts[k - 1] = d;
        while (true) {
            std::vector<Rational> posterior(k);
            for (unsigned t = 0; t < k; ++t) posterior[t] = ratio(counts[t], d);
            const auto test = bayes_test_ec(single_observation_model(posterior), loss);
            auto report = check_coherence(test, options);
            if (!report.coherent) {
                const auto& v = *std::find_if(report.violations.begin(), report.violations.end(),
                                              [](const Violation& viol) { return is_defining(viol.axiom); });
                std::optional<Hypothesis> h2;
                if (v.h2) h2 = Hypothesis(k, *v.h2);
                return Counterexample{std::move(posterior), v.axiom, Hypothesis(k, v.h1), h2,
                                      "grid search, denominator " + std::to_string(d), std::move(report)};
            }
            if (!next_composition(counts)) break;
        }
    }
    return std::nullopt;
}

}  // namespace triadic
