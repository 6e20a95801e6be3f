#include "oracles.hpp"
#include "triadic/error.hpp"
#include "triadic/losses.hpp"
#include "triadic/random.hpp"

#include <doctest.h>

using namespace triadic;
using oracle::q;
using oracle::qs;

namespace {

ECConstants consts(Rational pn, Rational bp, Rational bn, Rational np) { return {pn, bp, bn, np}; }

const std::vector<Rational> kEx6 = qs({{4, 10}, {4, 10}, {1, 10}, {1, 10}});

}  // namespace

TEST_SUITE("losses") {

TEST_CASE("EC validity") {
    CHECK(ec_constraint_violations(consts(4, 1, 1, 4)).empty());
    CHECK(ec_constraint_violations(consts(4, 2, 1, 4)) == std::vector{EcConstraint::BoundaryInRange});
    CHECK(ec_constraint_violations(consts(4, q(9, 10), 1, 1)) ==
          std::vector{EcConstraint::BoundaryInRange, EcConstraint::ThresholdOrder});
    CHECK(ec_constraint_violations(consts(4, q(9, 10), 1, 2)).empty());
    CHECK(ec_constraint_violations(consts(4, 1, 2, 4)) == std::vector{EcConstraint::BoundaryOutRange});
    CHECK(ec_constraint_violations(consts(4, 0, 1, 4)) == std::vector{EcConstraint::BoundaryInRange});

    ECLoss loss(consts(4, 1, 1, 4));
    CHECK(validate_ec(loss).empty());
    loss.set(Hypothesis::of(3, {0}), consts(4, 2, 1, 4));
    const auto v = validate_ec(loss);
    REQUIRE(v.size() == 1);
    CHECK(v[0].hypothesis == Mask{1});
    CHECK(v[0].constraint == EcConstraint::BoundaryInRange);
    CHECK_FALSE(loss.trivial());
}

TEST_CASE("thresholds") {
    const ECLoss table3 = ECLoss::tec(consts(4, 1, 1, 4));
    CHECK(ec_thresholds(table3, Hypothesis::of(4, {0})) == Thresholds{q(1, 4), q(3, 4)});
    for (long lam : {1L, 2L, 7L}) {
        const auto t = thresholds_of(consts(2 * lam, q(lam, 2), q(lam, 2), 2 * lam));
        CHECK(t.alpha == q(1, 4));
        CHECK(t.beta == q(3, 4));
    }
    CHECK(thresholds_of(consts(10, 3, 3, 10)) == Thresholds{q(3, 10), q(7, 10)});
    CHECK_THROWS_AS(ec_thresholds(ECLoss::tec(consts(4, 2, 1, 4)), Hypothesis::of(4, {0})), Error);
}

TEST_CASE("threshold ordering and range on random valid losses") {
    random::Rng rng(17);
    for (int i = 0; i < 500; ++i) {
        const auto c = random::valid_ec_constants(rng);
        const auto t = thresholds_of(c);
        CHECK(t.alpha > 0);
        CHECK(t.beta < 1);
        CHECK(t.alpha < t.beta);
    }
}

TEST_CASE("properness") {
    const auto h = Hypothesis::of(3, {0});
    CHECK(is_proper(ec_table(consts(4, 1, 1, 4), h), h));
    LossTable midpoint(3);
    for (unsigned t = 0; t < 3; ++t) {
        const bool in = h.contains(t);
        midpoint.at(Verdict::Accept, t) = in ? 0 : 2;
        midpoint.at(Verdict::Boundary, t) = 1;
        midpoint.at(Verdict::Reject, t) = in ? 2 : 0;
    }
    CHECK_FALSE(is_proper(midpoint, h));
    LossTable zero_one(3);
    for (unsigned t = 0; t < 3; ++t) {
        const bool in = h.contains(t);
        zero_one.at(Verdict::Accept, t) = in ? 0 : 1;
        zero_one.at(Verdict::Boundary, t) = in ? 0 : 1;
        zero_one.at(Verdict::Reject, t) = in ? 1 : 0;
    }
    CHECK_FALSE(is_proper(zero_one, h));

    random::Rng rng(2);
    for (int i = 0; i < 300; ++i) {
        const unsigned k = static_cast<unsigned>(random::between(rng, 1, 6));
        const Hypothesis g(k, rng() & full_mask(k));
        CHECK(is_proper(ec_table(random::valid_ec_constants(rng), g), g));
    }
}

TEST_CASE("ec table layout") {
    const auto t = ec_table(consts(10, 3, 2, 9), Hypothesis::of(2, {0}));
    CHECK(t.at(Verdict::Accept, 0) == 0);
    CHECK(t.at(Verdict::Accept, 1) == 10);
    CHECK(t.at(Verdict::Boundary, 0) == 3);
    CHECK(t.at(Verdict::Boundary, 1) == 2);
    CHECK(t.at(Verdict::Reject, 0) == 9);
    CHECK(t.at(Verdict::Reject, 1) == 0);
}

TEST_CASE("induced region loss") {
    const auto family = ec_family(ECLoss::tec(consts(4, 1, 1, 4)));
    const auto tables = singleton_tables(family, kEx6);
    CHECK(induced_region_loss(tables, Hypothesis::empty(4), 0) == 0);
    CHECK(induced_region_loss(tables, Hypothesis::of(4, {0, 1}), 0) == -2);
    CHECK(induced_region_loss(tables, Hypothesis::of(4, {0, 1}), 2) == 2);

    random::Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const auto c = random::valid_ec_constants(rng);
        const unsigned k = static_cast<unsigned>(random::between(rng, 1, 6));
        const auto ts = singleton_tables(ec_family(ECLoss::tec(c)), random::distribution(rng, k));
        const Hypothesis a(k, rng() & full_mask(k));
        for (unsigned t = 0; t < k; ++t) {
            const Rational expected = c.boundary_out * a.size() - ((c.boundary_out - c.boundary_in) + c.reject_in) * (a.contains(t) ? 1 : 0);
            CHECK(induced_region_loss(ts, a, t) == expected);
        }
    }
}

TEST_CASE("tangent sets") {
    CHECK(tangent_set(kEx6, Hypothesis::of(4, {2})) == Hypothesis::of(4, {0, 1}));
    CHECK(tangent_set(kEx6, Hypothesis::of(4, {0, 1, 3})) == Hypothesis::empty(4));
    CHECK(tangent_set(kEx6, Hypothesis::of(4, {1})) == Hypothesis::empty(4));
    CHECK(tangent_set(kEx6, Hypothesis::empty(4)) == Hypothesis::full(4));
}

TEST_CASE("tangent set structure, exhaustive over hypotheses") {
    random::Rng rng(21);
    for (int i = 0; i < 60; ++i) {
        const unsigned k = static_cast<unsigned>(random::between(rng, 1, 6));
        const auto dist = random::distribution(rng, k, true, 3);
        for (Mask h = 1; h < full_mask(k); ++h) {
            const Hypothesis H(k, h);
            const auto th = tangent_set(dist, H), thc = tangent_set(dist, H.complement());
            CHECK(th.bits() == oracle::tangent(dist, h));
            CHECK(th.subset_of(H.complement()));
            CHECK(thc.subset_of(H));
            CHECK((th.is_empty() || thc.is_empty()));
        }
    }
}

TEST_CASE("GFBST loss values") {
    const GFBSTLoss l{2, 1, 1};
    CHECK(gfbst_threshold(l) == q(2, 3));
    // theta = 0 is in T^{H^c} for H = {0,1}
    CHECK(gfbst_loss_value(l, Verdict::Accept, 0, Hypothesis::of(4, {0, 1}), kEx6) == 0);
    CHECK(gfbst_loss_value(l, Verdict::Boundary, 0, Hypothesis::of(4, {0}), kEx6) == 1);
    CHECK(gfbst_loss_value(l, Verdict::Reject, 0, Hypothesis::of(4, {2}), kEx6) == 0);
    CHECK(gfbst_loss_value(l, Verdict::Accept, 0, Hypothesis::of(4, {2}), kEx6) == 3);
    CHECK(gfbst_loss_value(l, Verdict::Boundary, 0, Hypothesis::of(4, {2}), kEx6) == 2);

    CHECK_NOTHROW(validate_gfbst(l));
    CHECK_THROWS_AS(validate_gfbst({2, 2, 1}), Error);
    CHECK_THROWS_AS(validate_gfbst({2, 0, 1}), Error);
    CHECK_THROWS_AS(validate_gfbst({2, 1, 0}), Error);
}

TEST_CASE("GFBST table expected losses against the table oracle") {
    random::Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const unsigned k = static_cast<unsigned>(random::between(rng, 1, 5));
        const auto dist = random::distribution(rng, k, true, 4);
        const auto l = random::gfbst_loss(rng);
        for (Mask h = 0; h <= full_mask(k); ++h) {
            const auto t = gfbst_table(l, Hypothesis(k, h), dist);
            const auto e = oracle::gfbst_expected(l, h, dist);
            for (Verdict d : kAllVerdicts) {
                Rational total(0);
                for (unsigned th = 0; th < k; ++th) total += dist[th] * t.at(d, th);
                CHECK(total == e[index_of(d)]);
            }
        }
    }
}

TEST_CASE("lemma proper on random proper singleton losses") {
    random::Rng rng(9);
    int premises = 0;
    for (int i = 0; i < 600; ++i) {
        const unsigned k = static_cast<unsigned>(random::between(rng, 1, 5));
        const auto h = Hypothesis::singleton(k, static_cast<unsigned>(random::below(rng, k)));
        const auto t = random::proper_table(rng, h);
        REQUIRE(is_proper(t, h));
        const auto dist = random::distribution(rng, k);
        std::array<Rational, 3> e;
        for (Verdict d : kAllVerdicts) {
            e[index_of(d)] = 0;
            for (unsigned th = 0; th < k; ++th) e[index_of(d)] += dist[th] * t.at(d, th);
        }
        if (std::min(e[0], e[1]) <= e[2]) {
            ++premises;
            CHECK(e[1] <= e[2]);
        }
    }
    CHECK(premises > 50);
}

TEST_CASE("table family lookups") {
    std::map<Mask, LossTable> tables;
    tables.emplace(1, ec_table(consts(4, 1, 1, 4), Hypothesis::of(2, {0})));
    const auto f = table_family(tables);
    CHECK_NOTHROW(f(Hypothesis::of(2, {0}), kEx6));
    CHECK_THROWS_AS(f(Hypothesis::of(2, {1}), kEx6), Error);
}

}  // TEST_SUITE
