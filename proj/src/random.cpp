#include "triadic/random.hpp"

namespace triadic::random {

std::vector<Rational> distribution(Rng& rng, unsigned k, bool allow_zeros, unsigned max_weight) {
    std::vector<std::uint64_t> weights(k);
    std::uint64_t total = 0;
    do {
        total = 0;
        for (auto& w : weights) {
            w = between(rng, allow_zeros ? 0 : 1, max_weight);
            total += w;
        }
    } while (total == 0);
    std::vector<Rational> out(k);
    for (unsigned i = 0; i < k; ++i) out[i] = ratio(weights[i], total);
    return out;
}

Model model(Rng& rng, unsigned k, std::size_t m) {
    while (true) {
        auto prior = distribution(rng, k);
        RationalMatrix likelihood(k, m);
        for (unsigned t = 0; t < k; ++t) {
            const auto row = distribution(rng, static_cast<unsigned>(m));
            for (std::size_t x = 0; x < m; ++x) likelihood(t, x) = row[x];
        }
        bool possible = true;
        for (std::size_t x = 0; x < m && possible; ++x) {
            Rational marginal(0);
            for (unsigned t = 0; t < k; ++t) marginal += prior[t] * likelihood(t, x);
            possible = sgn(marginal) > 0;
        }
        if (possible) return Model::from_likelihood(std::move(prior), likelihood);
    }
}

Model peaked_model(Rng& rng, unsigned k, std::size_t m) {
    RationalMatrix posterior(k, m);
    for (std::size_t x = 0; x < m; ++x) {
        const auto peak = static_cast<unsigned>(below(rng, k));
        std::vector<std::uint64_t> weights(k);
        std::uint64_t total = 0;
        for (unsigned t = 0; t < k; ++t) {
            weights[t] = t == peak ? between(rng, 40, 100) : below(rng, 3);
            total += weights[t];
        }
        for (unsigned t = 0; t < k; ++t) posterior(t, x) = ratio(weights[t], total);
    }
    return Model::from_posterior(posterior, distribution(rng, static_cast<unsigned>(m), false));
}

ECConstants valid_ec_constants(Rng& rng) {
    while (true) {
        ECConstants c;
        c.reject_in = Rational(static_cast<unsigned long>(between(rng, 1, 12)));
        c.boundary_in = c.reject_in * ratio(between(rng, 1, 9), 20);
        c.accept_out = Rational(static_cast<unsigned long>(between(rng, 1, 12)));
        c.boundary_out = c.accept_out * ratio(between(rng, 1, 9), 20);
        if (ec_constraint_violations(c).empty()) return c;
    }
}

ECLoss tec(Rng& rng) { return ECLoss::tec(valid_ec_constants(rng)); }

ECLoss per_hypothesis_ec(Rng& rng, unsigned k, unsigned overrides) {
    ECLoss loss(valid_ec_constants(rng));
    for (unsigned i = 0; i < overrides; ++i) loss.set(Hypothesis(k, rng() & full_mask(k)), valid_ec_constants(rng));
    return loss;
}

GFBSTLoss gfbst_loss(Rng& rng) {
    GFBSTLoss loss;
    loss.b = Rational(static_cast<unsigned long>(between(rng, 2, 10)));
    loss.v = loss.b * ratio(between(rng, 1, 9), 10);
    loss.c = ratio(between(rng, 1, 20), between(rng, 1, 4));
    return loss;
}

RegionEstimator nonempty_regions(Rng& rng, unsigned k, std::size_t m) {
    RegionEstimator r{k, {}};
    for (std::size_t x = 0; x < m; ++x) r.regions.emplace_back(k, between(rng, 1, full_mask(k)));
    return r;
}

std::vector<Verdict> verdict_table(Rng& rng, unsigned k, std::size_t m) {
    std::vector<Verdict> table((std::size_t{1} << k) * m);
    for (auto& v : table) v = static_cast<Verdict>(below(rng, 3));
    return table;
}

LossTable proper_table(Rng& rng, const Hypothesis& h) {
    LossTable t(h.ambient());
    for (unsigned theta = 0; theta < h.ambient(); ++theta) {
        const Rational low = ratio(below(rng, 10), between(rng, 1, 3));
        const Rational gap = ratio(between(rng, 1, 10), between(rng, 1, 3));
        // Middle strictly inside the lower half of [low, low + gap].
        const Rational middle = low + gap * ratio(between(rng, 1, 9), 20);
        const Rational high = low + gap;
        t.at(Verdict::Boundary, theta) = middle;
        t.at(Verdict::Accept, theta) = h.contains(theta) ? low : high;
        t.at(Verdict::Reject, theta) = h.contains(theta) ? high : low;
    }
    return t;
}

}  // namespace triadic::random
