#include "oracles.hpp"
#include "triadic/coherence.hpp"
#include "triadic/error.hpp"
#include "triadic/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace triadic;
using oracle::q;
using oracle::qs;

namespace {

using V = Verdict;

SimultaneousTest single(unsigned k, std::vector<Verdict> column) {
    return SimultaneousTest::from_table(k, 1, std::move(column));
}

Model point_model(std::vector<Rational> posterior) {
    std::vector<std::vector<Rational>> rows;
    for (auto& p : posterior) rows.push_back({p});
    return Model::from_posterior(RationalMatrix::from_rows(rows), qs({{1, 1}}));
}

/// Independent four-axiom check (both directions of invertibility), straight from the definitions.
bool coherent_oracle(const SimultaneousTest& t) {
    const unsigned k = t.theta_size();
    const Mask full = full_mask(k);
    for (std::size_t x = 0; x < t.x_size(); ++x) {
        if (t.verdict(x, full) != V::Accept) return false;
        for (Mask a = 0; a <= full; ++a) {
            if ((t.verdict(x, a) == V::Accept) != (t.verdict(x, full & ~a) == V::Reject)) return false;
            for (Mask b = 0; b <= full; ++b) {
                const V va = t.verdict(x, a), vb = t.verdict(x, b);
                if ((a & ~b) == 0 && va == V::Accept && vb != V::Accept) return false;
                if ((a & ~b) == 0 && va == V::Boundary && vb == V::Reject) return false;
                if (va == V::Accept && vb == V::Accept && t.verdict(x, a & b) != V::Accept) return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_SUITE("coherence") {

TEST_CASE("axiom names") {
    for (std::size_t i = 0; i < kAxiomCount; ++i) {
        const auto a = static_cast<Axiom>(i);
        CHECK(parse_axiom(to_string(a)) == a);
    }
    CHECK(to_string(Axiom::IntersectionConsonance) == "intersection_consonance");
    CHECK_FALSE(parse_axiom("nope"));
    CHECK_FALSE(is_defining(Axiom::UnionConsonance));
}

TEST_CASE("region tests are coherent and round trip") {
    random::Rng rng(40);
    for (int i = 0; i < 500; ++i) {
        const unsigned k = static_cast<unsigned>(random::between(rng, 1, 6));
        const std::size_t m = random::between(rng, 1, 4);
        const auto r = random::nonempty_regions(rng, k, m);
        const auto t = region_test(r);
        const auto report = check_coherence(t);
        CHECK(report.coherent);
        CHECK(report.violations.empty());
        CHECK(extract_region(t) == r);
        const auto rb = is_region_based(t);
        CHECK(rb.region_based);
        REQUIRE(rb.witness);
        CHECK(*rb.witness == r);
    }
}

TEST_CASE("monotonicity violation") {
    // k = 2, masks: {} {0} {1} {0,1}
    const auto t = single(2, {V::Reject, V::Accept, V::Reject, V::Boundary});
    const auto report = check_coherence(t);
    CHECK_FALSE(report.coherent);
    CHECK(report.has_violation(Axiom::Monotonicity, 0, 0b01, 0b11));
    CHECK(report.violates(Axiom::Propriety));
}

TEST_CASE("the alpha = 3/10 TEC instance is incoherent") {
    const auto model = point_model(qs({{27, 100}, {27, 100}, {46, 100}}));
    const auto t = bayes_test_ec(model, ECLoss::tec({10, 3, 3, 10}));
    CHECK(t(0, Hypothesis::of(3, {0})) == V::Reject);
    CHECK(t(0, Hypothesis::of(3, {1})) == V::Reject);
    CHECK(t(0, Hypothesis::of(3, {0, 1})) == V::Boundary);
    const auto report = check_coherence(t);
    CHECK_FALSE(report.coherent);
    CHECK(report.has_violation(Axiom::UnionConsonance, 0, 0b001, 0b010));
    const auto rb = is_region_based(t);
    CHECK_FALSE(rb.region_based);
    CHECK(rb.mismatch.has_value());
}

TEST_CASE("the per-hypothesis EC instance breaks monotonicity") {
    ECLoss loss(ECConstants{10, 3, 3, 10});
    loss.set(Hypothesis::of(3, {0}), {5, 1, 1, 5});      // alpha = 1/5
    loss.set(Hypothesis::of(3, {0, 1}), {5, 2, 2, 5});   // alpha = 2/5
    CHECK(ec_thresholds(loss, Hypothesis::of(3, {0})).alpha == q(1, 5));
    CHECK(ec_thresholds(loss, Hypothesis::of(3, {0, 1})).alpha == q(2, 5));
    const auto t = bayes_test_ec(point_model(qs({{3, 10}, {0, 1}, {7, 10}})), loss);
    CHECK(t(0, Hypothesis::of(3, {0})) != V::Reject);
    CHECK(t(0, Hypothesis::of(3, {0, 1})) == V::Reject);
    CHECK(check_coherence(t).has_violation(Axiom::Monotonicity, 0, 0b001, 0b011));
}

TEST_CASE("invertibility is checked in both directions") {
    // Rejects everything except Theta: passes the one-way clause, fails the converse.
    const auto t = single(2, {V::Reject, V::Reject, V::Reject, V::Accept});
    const auto report = check_coherence(t);
    CHECK_FALSE(report.coherent);
    CHECK(report.has_violation(Axiom::Invertibility, 0, 0b01));
    CHECK(report.has_violation(Axiom::UnionConsonance, 0, 0b01, 0b10));
    CHECK(extract_region(t)(0).is_empty());
    const auto rb = is_region_based(t);
    CHECK_FALSE(rb.region_based);
    CHECK(rb.empty_region_at == std::size_t{0});
}

TEST_CASE("extraction examples") {
    const RegionEstimator r{4, {Hypothesis::of(4, {0, 1}), Hypothesis::of(4, {2, 3})}};
    CHECK(extract_region(region_test(r))(0) == Hypothesis::of(4, {0, 1}));
    const auto one = region_test(RegionEstimator{3, {Hypothesis::of(3, {1})}});
    CHECK(one(0, Hypothesis::of(3, {1})) == V::Accept);
    CHECK(extract_region(one)(0) == Hypothesis::of(3, {1}));
}

TEST_CASE("parallel scan equals the serial reference and the oracle") {
    random::Rng rng(77);
    for (int i = 0; i < 300; ++i) {
        const unsigned k = static_cast<unsigned>(random::between(rng, 1, 5));
        const std::size_t m = random::between(rng, 1, 3);
        std::vector<Verdict> table;
        if (i % 2 == 0) {
            table = random::verdict_table(rng, k, m);
        } else {
            const auto t = region_test(random::nonempty_regions(rng, k, m));
            for (std::size_t x = 0; x < m; ++x) table.insert(table.end(), t.column(x).begin(), t.column(x).end());
            table[random::below(rng, table.size())] = static_cast<Verdict>(random::below(rng, 3));
        }
        const auto test = SimultaneousTest::from_table(k, m, table);
        const auto fast = check_coherence(test);
        const auto slow = check_coherence_serial(test);
        CHECK(fast.coherent == slow.coherent);
        CHECK(fast.counts == slow.counts);
        CHECK(fast.violations == slow.violations);
        CHECK(fast.coherent == coherent_oracle(test));
    }
}

TEST_CASE("violation cap keeps counting") {
    const auto t = single(4, std::vector<Verdict>(16, V::Accept));
    CoherenceOptions o;
    o.max_recorded = 2;
    const auto report = check_coherence(t, o);
    CHECK(report.count(Axiom::Invertibility) == 16);
    std::size_t recorded = 0;
    for (const auto& v : report.violations) recorded += v.axiom == Axiom::Invertibility;
    CHECK(recorded == 2);
}

TEST_CASE("coherent implies region based, exhaustively for one observation and k <= 3") {
    for (unsigned k = 1; k <= 3; ++k) {
        const std::size_t cells = std::size_t{1} << k;
        std::vector<Verdict> table(cells, V::Accept);
        std::size_t coherent = 0, total = 0;
        while (true) {
            const auto t = single(k, table);
            const auto report = check_coherence(t);
            ++total;
            if (report.coherent) {
                ++coherent;
                CHECK(is_region_based(t).region_based);
                CHECK_FALSE(report.violates(Axiom::UnionConsonance));
            }
            std::size_t i = 0;
            while (i < cells && table[i] == V::Reject) table[i++] = V::Accept;
            if (i == cells) break;
            table[i] = static_cast<Verdict>(index_of(table[i]) + 1);
        }
        // One coherent test per nonempty region.
        CHECK(coherent == cells - 1);
        CHECK(total == static_cast<std::size_t>(std::pow(3, cells)));
    }
}

TEST_CASE("certify gfbst") {
    const auto post = RationalMatrix::from_rows({qs({{4, 10}, {1, 10}}), qs({{4, 10}, {1, 10}}),
                                                 qs({{1, 10}, {4, 10}}), qs({{1, 10}, {4, 10}})});
    const auto model = Model::from_posterior(post, qs({{1, 2}, {1, 2}}));
    const RegionEstimator ex6{4, {Hypothesis::of(4, {0, 1}), Hypothesis::of(4, {2, 3})}};
    CHECK(certify_gfbst(region_test(ex6), model));
    const RegionEstimator off{4, {Hypothesis::of(4, {0, 2}), Hypothesis::of(4, {2, 3})}};
    CHECK_FALSE(certify_gfbst(region_test(off), model));
    const auto incoherent = SimultaneousTest::from_table(4, 2, std::vector<Verdict>(32, V::Boundary));
    CHECK_THROWS_AS(certify_gfbst(incoherent, model), Error);
    CHECK_THROWS_AS(certify_gfbst(single(4, std::vector<Verdict>(16, V::Boundary)), model), Error);

    random::Rng rng(90);
    for (int i = 0; i < 100; ++i) {
        const unsigned k = static_cast<unsigned>(random::between(rng, 1, 5));
        const auto m = random::model(rng, k, 2);
        CHECK(certify_gfbst(gfbst_bayes(m, random::gfbst_loss(rng)), m));
    }
}

TEST_CASE("size guards and sampled mode") {
    const auto lazy = SimultaneousTest::from_rule(
        14, 1, [](std::size_t, Mask h) { return h == full_mask(14) ? V::Accept : (h & 1 ? V::Boundary : V::Reject); },
        Provenance::External);
    CHECK_THROWS_AS(check_coherence(lazy), Error);
    CHECK_THROWS_AS(is_region_based(lazy), Error);
    CoherenceOptions o;
    o.sampled_pairs = 2000;
    o.seed = 3;
    const auto report = check_coherence(lazy, o);
    CHECK_FALSE(report.exhaustive);
    const auto again = check_coherence(lazy, o);
    CHECK(report.violations == again.violations);

    const auto region = SimultaneousTest::from_rule(
        14, 1, [](std::size_t, Mask h) { return oracle::region_verdict(0b101, h); }, Provenance::Region);
    CHECK(check_coherence(region, o).coherent);
}

}  // TEST_SUITE
