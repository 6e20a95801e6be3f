#include "triadic/decision.hpp"

#include "triadic/error.hpp"
#include "triadic/kernels.hpp"

#include <memory>
#include <string>

namespace triadic {

std::string_view to_string(Provenance p) noexcept {
    switch (p) {
        case Provenance::Threshold: return "threshold";
        case Provenance::Region: return "region";
        case Provenance::Direct: return "direct";
        case Provenance::External: return "external";
    }
    return "?";
}

SimultaneousTest SimultaneousTest::from_table(unsigned k, std::size_t m, std::vector<Verdict> table,
                                              Provenance provenance) {
    if (k > kMaterializeLimit + 8) throw Error(ErrorKind::TooLarge, "verdict table over 2^" + std::to_string(k) + " hypotheses");
    if (table.size() != (std::size_t{1} << k) * m)
        throw Error(ErrorKind::DimensionMismatch, "verdict table has " + std::to_string(table.size()) + " entries, expected " +
                                                      std::to_string((std::size_t{1} << k) * m));
    SimultaneousTest t;
    t.k_ = k;
    t.m_ = m;
    t.provenance_ = provenance;
    t.table_ = std::move(table);
    return t;
}

SimultaneousTest SimultaneousTest::from_rule(unsigned k, std::size_t m, Rule rule, Provenance provenance) {
    if (k > kMaxTheta) throw Error(ErrorKind::TooLarge, "Theta size " + std::to_string(k) + " exceeds 63");
    if (k <= kMaterializeLimit) return from_table(k, m, kernels::materialize_parallel(k, m, rule), provenance);
    SimultaneousTest t;
    t.k_ = k;
    t.m_ = m;
    t.provenance_ = provenance;
    t.rule_ = std::make_shared<const Rule>(std::move(rule));
    return t;
}

Verdict SimultaneousTest::verdict(std::size_t x, Mask h) const {
    if (x >= m_) throw Error(ErrorKind::IndexOutOfRange, "x = " + std::to_string(x));
    if ((h & ~full_mask(k_)) != 0) throw Error(ErrorKind::IndexOutOfRange, "hypothesis outside Theta");
    if (rule_) return (*rule_)(x, h);
    return table_[(x << k_) + h];
}

std::span<const Verdict> SimultaneousTest::column(std::size_t x) const {
    if (!materialized()) throw Error(ErrorKind::TooLarge, "verdicts are computed on demand for this test");
    if (x >= m_) throw Error(ErrorKind::IndexOutOfRange, "x = " + std::to_string(x));
    const std::size_t per_x = std::size_t{1} << k_;
    return {table_.data() + x * per_x, per_x};
}

std::optional<Mismatch> first_difference(const SimultaneousTest& a, const SimultaneousTest& b) {
    if (a.theta_size() != b.theta_size() || a.x_size() != b.x_size())
        throw Error(ErrorKind::DimensionMismatch, "tests have different shapes");
    if (a.theta_size() > enumeration_limit())
        throw Error(ErrorKind::TooLarge, "comparing tests over 2^" + std::to_string(a.theta_size()) + " hypotheses");
    const Mask last = full_mask(a.theta_size());
    for (std::size_t x = 0; x < a.x_size(); ++x)
        for (Mask h = 0;; ++h) {
            const Verdict va = a.verdict(x, h);
            const Verdict vb = b.verdict(x, h);
            if (va != vb) return Mismatch{x, h, va, vb};
            if (h == last) break;
        }
    return std::nullopt;
}

ExpectedLosses expected_losses(const LossTable& loss, std::span<const Rational> dist) {
    if (loss.theta_size() != dist.size()) throw Error(ErrorKind::DimensionMismatch, "loss table and distribution sizes differ");
    ExpectedLosses e{{Rational(0), Rational(0), Rational(0)}};
    for (Verdict d : kAllVerdicts) {
        Rational& total = e.by_verdict[index_of(d)];
        for (std::size_t t = 0; t < dist.size(); ++t) {
            if (sgn(dist[t]) == 0) continue;
            total += dist[t] * loss.at(d, static_cast<unsigned>(t));
        }
    }
    return e;
}

Verdict bayes_choice(const ExpectedLosses& e) {
    Verdict best = Verdict::Boundary;
    for (Verdict d : {Verdict::Accept, Verdict::Reject})
        if (e[d] < e[best]) best = d;
    return best;
}

Verdict threshold_verdict(const Rational& p, const Thresholds& t) {
    if (p > t.beta) return Verdict::Accept;
    if (p < t.alpha) return Verdict::Reject;
    return Verdict::Boundary;
}

SimultaneousTest bayes_test_direct(const Model& model, const LossFamily& loss) {
    auto shared = std::make_shared<const Model>(model);
    const unsigned k = model.theta_size();
    auto rule = [shared, loss, k](std::size_t x, Mask h) {
        const auto dist = shared->posterior(x);
        return bayes_choice(expected_losses(loss(Hypothesis(k, h), dist), dist));
    };
    return SimultaneousTest::from_rule(k, model.x_size(), std::move(rule), Provenance::Direct);
}

SimultaneousTest threshold_test(const Model& model, std::function<Thresholds(Mask)> thresholds) {
    const unsigned k = model.theta_size();
    const std::size_t m = model.x_size();
    if (k <= kMaterializeLimit) {
        std::vector<std::vector<Rational>> masses(m);
        for (std::size_t x = 0; x < m; ++x) masses[x] = kernels::subset_masses_parallel(model.posterior(x));
        std::vector<Thresholds> per_h(std::size_t{1} << k);
        for (Mask h = 0; h < per_h.size(); ++h) per_h[h] = thresholds(h);
        auto rule = [&masses, &per_h](std::size_t x, Mask h) { return threshold_verdict(masses[x][h], per_h[h]); };
        return SimultaneousTest::from_rule(k, m, rule, Provenance::Threshold);
    }
    auto shared = std::make_shared<const Model>(model);
    auto rule = [shared, thresholds = std::move(thresholds), k](std::size_t x, Mask h) {
        return threshold_verdict(Hypothesis(k, h).mass(shared->posterior(x)), thresholds(h));
    };
    return SimultaneousTest::from_rule(k, m, std::move(rule), Provenance::Threshold);
}

SimultaneousTest bayes_test_ec(const Model& model, const ECLoss& loss) {
    if (const auto bad = validate_ec(loss); !bad.empty()) {
        const std::string where = bad.front().hypothesis ? Hypothesis(model.theta_size(), *bad.front().hypothesis).to_string()
                                                         : std::string("shared constants");
        throw Error(ErrorKind::InvalidLoss, where + " violate " + std::string(to_string(bad.front().constraint)));
    }
    for (const auto& [h, c] : loss.overrides())
        if ((h & ~full_mask(model.theta_size())) != 0)
            throw Error(ErrorKind::DimensionMismatch, "EC override for a hypothesis outside Theta");
    return threshold_test(model, [loss](Mask h) { return thresholds_of(loss.constants(h)); });
}

SimultaneousTest region_test(const RegionEstimator& regions) {
    for (std::size_t x = 0; x < regions.x_size(); ++x) {
        if (regions(x).is_empty()) throw Error(ErrorKind::EmptyRegion, "R(" + std::to_string(x) + ") is empty");
        if (regions(x).ambient() != regions.theta_size)
            throw Error(ErrorKind::DimensionMismatch, "R(" + std::to_string(x) + ") lives in a different Theta");
    }
    std::vector<Mask> bits(regions.x_size());
    for (std::size_t x = 0; x < bits.size(); ++x) bits[x] = regions(x).bits();
    auto rule = [bits = std::move(bits)](std::size_t x, Mask h) {
        const Mask r = bits[x];
        if ((r & ~h) == 0) return Verdict::Accept;
        if ((r & h) == 0) return Verdict::Reject;
        return Verdict::Boundary;
    };
    return SimultaneousTest::from_rule(regions.theta_size, regions.x_size(), std::move(rule), Provenance::Region);
}

RegionEstimator hpd_regions(const Model& model, std::span<const Rational> levels) {
    if (levels.size() != model.x_size())
        throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(model.x_size()) + " levels, got " +
                                                      std::to_string(levels.size()));
    RegionEstimator r{model.theta_size(), {}};
    for (std::size_t x = 0; x < model.x_size(); ++x) {
        if (sgn(levels[x]) <= 0) throw Error(ErrorKind::ValidationError, "HPD level at x = " + std::to_string(x) + " must be positive");
        r.regions.push_back(hpd(model.posterior(x), levels[x]));
    }
    return r;
}

SimultaneousTest gfbst(const Model& model, std::span<const Rational> levels) {
    return region_test(hpd_regions(model, levels));
}

SimultaneousTest gfbst_bayes(const Model& model, const GFBSTLoss& loss) {
    validate_gfbst(loss);
    auto shared = std::make_shared<const Model>(model);
    const unsigned k = model.theta_size();
    auto rule = [shared, threshold = gfbst_threshold(loss), k](std::size_t x, Mask h) {
        const auto dist = shared->posterior(x);
        const Hypothesis hyp(k, h);
        // P(theta not in T) = 1 - P(T)
        const Rational outside_complement_tangent = 1 - tangent_set(dist, hyp.complement()).mass(dist);
        if (outside_complement_tangent < threshold) return Verdict::Accept;
        const Rational outside_tangent = 1 - tangent_set(dist, hyp).mass(dist);
        if (outside_tangent < threshold) return Verdict::Reject;
        return Verdict::Boundary;
    };
    return SimultaneousTest::from_rule(k, model.x_size(), std::move(rule), Provenance::Threshold);
}

RegionEstimator bayes_region(const Model& model, const LossFamily& loss) {
    const unsigned k = model.theta_size();
    RegionEstimator r{k, {}};
    for (std::size_t x = 0; x < model.x_size(); ++x) {
        const auto dist = model.posterior(x);
        Mask bits = 0;
        for (unsigned theta = 0; theta < k; ++theta) {
            const auto single = Hypothesis::singleton(k, theta);
            const auto table = loss(single, dist);
            if (!is_proper(table, single))
                throw Error(ErrorKind::ImproperLoss, "loss for " + single.to_string() + " at x = " + std::to_string(x) + " is not proper");
            const auto e = expected_losses(table, dist);
            if (e[Verdict::Boundary] <= e[Verdict::Reject]) bits |= Mask{1} << theta;
        }
        r.regions.emplace_back(k, bits);
    }
    return r;
}

}  // namespace triadic
