#include "triadic/verify.hpp"

#include "triadic/coherence.hpp"
#include "triadic/constructions.hpp"
#include "triadic/decision.hpp"
#include "triadic/error.hpp"
#include "triadic/random.hpp"

#include <algorithm>
#include <sstream>

namespace triadic {

namespace {

std::uint64_t suite_seed(std::uint64_t seed, std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(salt)};
    std::uint64_t out = 0;
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    out = (std::uint64_t{words[0]} << 32) | words[1];
    return out;
}

std::string where(const char* what, std::size_t i) { return std::string(what) + " #" + std::to_string(i); }

/// Catches library errors as failures so one bad instance does not end the suite.
template <class F>
void guarded(SuiteResult& suite, const std::string& label, F&& body) {
    try {
        body();
    } catch (const Error& e) {
        suite.check(false, label + ": " + e.what());
    }
}

unsigned draw_k(random::Rng& rng, unsigned lo, unsigned hi) {
    return static_cast<unsigned>(random::between(rng, lo, std::max(lo, hi)));
}

std::size_t draw_m(random::Rng& rng, std::size_t max_x) { return random::between(rng, 1, max_x); }

bool expected_level_match(const SimultaneousTest& candidate, const Model& model, const LossFamily& family,
                          SuiteResult& suite, const std::string& label) {
    const unsigned k = model.theta_size();
    bool all = true;
    for (std::size_t x = 0; x < model.x_size(); ++x) {
        const auto post = model.posterior(x);
        for (Mask h = 0; h <= full_mask(k); ++h) {
            const auto e = expected_losses(family(Hypothesis(k, h), post), post);
            const Rational best = std::min({e[Verdict::Accept], e[Verdict::Boundary], e[Verdict::Reject]});
            const bool ok = e[candidate.verdict(x, h)] == best;
            if (!ok) all = false;
            suite.check(ok, label + ": non-minimal verdict at x = " + std::to_string(x) + ", H = " +
                                Hypothesis(k, h).to_string());
        }
    }
    return all;
}

/// Evaluates the targeted axiom instance directly on the verdicts at x = 0.
bool breaks(const SimultaneousTest& test, Axiom axiom, const Hypothesis& h1, const std::optional<Hypothesis>& h2) {
    auto v = [&](const Hypothesis& h) { return test(0, h); };
    switch (axiom) {
        case Axiom::Propriety: return v(Hypothesis::full(h1.ambient())) != Verdict::Accept;
        case Axiom::Invertibility: return (v(h1) == Verdict::Accept) != (v(h1.complement()) == Verdict::Reject);
        default: break;
    }
    if (!h2) return false;
    switch (axiom) {
        case Axiom::Monotonicity:
            return h1.subset_of(*h2) && ((v(h1) == Verdict::Accept && v(*h2) != Verdict::Accept) ||
                                         (v(h1) == Verdict::Boundary && v(*h2) == Verdict::Reject));
        case Axiom::IntersectionConsonance:
            return v(h1) == Verdict::Accept && v(*h2) == Verdict::Accept && v(h1 & *h2) != Verdict::Accept;
        case Axiom::UnionConsonance:
            return v(h1) == Verdict::Reject && v(*h2) == Verdict::Reject && v(h1 | *h2) != Verdict::Reject;
        default: return false;
    }
}

/// Posteriors putting mass exactly beta (even x) or alpha (odd x) on the first point, so the
/// threshold comparisons land on ties.
Model tie_model(const Thresholds& t, unsigned k, std::size_t m) {
    RationalMatrix posterior(k, m);
    for (std::size_t x = 0; x < m; ++x) {
        const Rational& p = x % 2 == 0 ? t.beta : t.alpha;
        posterior(0, x) = k == 1 ? Rational(1) : p;
        if (k > 1) posterior(1, x) = 1 - p;
    }
    return Model::from_posterior(posterior, std::vector<Rational>(m, ratio(1, m)));
}

}  // namespace

void SuiteResult::check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (failure_samples.size() < kMaxSamples) failure_samples.push_back(what);
}

bool VerifySummary::passed() const noexcept {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

void validate(const VerifyBounds& b) {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::ValidationError, msg); };
    if (b.max_theta == 0 || b.max_theta > kMaterializeLimit) fail("max_theta must be in 1..12");
    if (b.max_x == 0 || b.max_x > 64) fail("max_x must be in 1..64");
    if (b.thm1_exhaustive_k > 3) fail("thm1_exhaustive_k must be at most 3 (3^(2^k) tests)");
    if (b.thm1_sample_k == 0 || b.thm1_sample_k > kMaterializeLimit) fail("thm1_sample_k must be in 1..12");
    if (b.thm1_exhaustive_k > b.max_theta || b.thm1_sample_k > b.max_theta)
        fail("thm1 sizes must not exceed max_theta");
}

SuiteResult verify_thm1(const VerifyBounds& bounds, std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "thm1";
    std::uint64_t coherent = 0;

    auto examine = [&](const SimultaneousTest& test, const std::string& label) {
        guarded(suite, label, [&] {
            const auto report = check_coherence(test);
            if (!report.coherent) return;
            ++coherent;
            const auto rb = is_region_based(test);
            suite.check(rb.region_based, label + ": coherent but not region based");
        });
    };

    const unsigned ek = bounds.thm1_exhaustive_k;
    if (ek > 0) {
        const std::size_t cells = std::size_t{1} << ek;
        std::vector<Verdict> table(cells, Verdict::Accept);
        std::uint64_t enumerated = 0;
        while (true) {
            examine(SimultaneousTest::from_table(ek, 1, table), where("exhaustive", enumerated));
            ++enumerated;
            std::size_t i = 0;
            while (i < cells && table[i] == Verdict::Reject) table[i++] = Verdict::Accept;
            if (i == cells) break;
            table[i] = static_cast<Verdict>(index_of(table[i]) + 1);
        }
        suite.stats["exhaustive_tests"] = enumerated;
    }

    random::Rng rng(suite_seed(seed, 1));
    const unsigned sk = bounds.thm1_sample_k;
    for (std::size_t i = 0; i < bounds.thm1_samples; ++i) {
        const std::size_t m = 1;
        std::vector<Verdict> table;
        switch (i % 3) {
            case 0: table = random::verdict_table(rng, sk, m); break;
            case 1: {
                const auto rt = region_test(random::nonempty_regions(rng, sk, m));
                table.assign(rt.column(0).begin(), rt.column(0).end());
                break;
            }
            default: {
                const auto rt = region_test(random::nonempty_regions(rng, sk, m));
                table.assign(rt.column(0).begin(), rt.column(0).end());
                table[random::below(rng, table.size())] = static_cast<Verdict>(random::below(rng, 3));
            }
        }
        const auto test = SimultaneousTest::from_table(sk, m, std::move(table));
        if (i % 3 == 1) {
            guarded(suite, where("region", i), [&] {
                suite.check(check_coherence(test).coherent, where("region", i) + ": region test is incoherent");
            });
        }
        examine(test, where("sampled", i));
    }
    suite.stats["sampled_tests"] = bounds.thm1_samples;
    suite.stats["coherent_tests"] = coherent;
    return suite;
}

SuiteResult verify_thm2(const VerifyBounds& bounds, std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "thm2";
    random::Rng rng(suite_seed(seed, 2));
    std::uint64_t coherent = 0;

    auto examine = [&](const Model& model, const ECLoss& loss, const std::string& label, bool must_be_coherent) {
        guarded(suite, label, [&] {
            const auto test = bayes_test_ec(model, loss);
            const auto alpha = thresholds_of(loss.shared()).alpha;
            const auto extracted = extract_region(test);
            const auto rstar = bayes_region(model, ec_family(loss));
            suite.check(extracted == rstar, label + ": extracted region differs from R*");
            for (std::size_t x = 0; x < model.x_size(); ++x)
                suite.check(rstar(x) == hpd(model.posterior(x), alpha), label + ": R* is not hpd(alpha) at x = " + std::to_string(x));
            const auto report = check_coherence(test);
            if (must_be_coherent) suite.check(report.coherent, label + ": witness test is incoherent");
            if (!report.coherent) return;
            ++coherent;
            suite.check(certify_gfbst(test, model), label + ": coherent TEC-Bayes test is not a GFBST");
        });
    };

    for (std::size_t i = 0; i < bounds.models; ++i) {
        const unsigned k = draw_k(rng, 1, bounds.max_theta);
        const std::size_t m = draw_m(rng, bounds.max_x);
        const auto model = i % 2 == 0 ? random::model(rng, k, m) : random::peaked_model(rng, k, m);
        examine(model, random::tec(rng), where("model", i), false);
    }
    for (std::size_t i = 0; i < std::max<std::size_t>(bounds.models / 10, 1); ++i) {
        const unsigned k = draw_k(rng, 1, std::min(bounds.max_theta, 5U));
        const std::size_t m = draw_m(rng, bounds.max_x);
        guarded(suite, where("witness", i), [&] {
            const auto w = tec_witness(region_test(random::nonempty_regions(rng, k, m)));
            examine(w.model, w.loss, where("witness", i), true);
        });
    }
    suite.stats["coherent_tests"] = coherent;
    return suite;
}

SuiteResult verify_thm3(const VerifyBounds& bounds, std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "thm3";
    random::Rng rng(suite_seed(seed, 3));
    for (std::size_t i = 0; i < bounds.thm3_tests; ++i) {
        const unsigned k = draw_k(rng, 1, std::min(bounds.max_theta, 5U));
        const std::size_t m = draw_m(rng, std::min<std::size_t>(bounds.max_x, 3));
        const auto label = where("test", i);
        guarded(suite, label, [&] {
            const auto regions = random::nonempty_regions(rng, k, m);
            const auto test = region_test(regions);
            const auto w = tec_witness(test);
            const auto replay = bayes_test_ec(w.model, w.loss);
            suite.check(!first_difference(replay, test).has_value(), label + ": witness does not replay");
            suite.check(w.regions == regions, label + ": extracted regions differ from the generating regions");
            for (std::size_t x = 0; x < m; ++x) {
                const auto post = w.model.posterior(x);
                suite.check(is_hpd(w.regions(x), post), label + ": witness region is not an HPD at x = " + std::to_string(x));
                bool bounded = true;
                for (Mask h = 0; h <= full_mask(k); ++h) {
                    const auto p = Hypothesis(k, h).mass(post);
                    switch (test.verdict(x, h)) {
                        case Verdict::Reject: bounded &= p < w.thresholds.alpha; break;
                        case Verdict::Accept: bounded &= p > w.thresholds.beta; break;
                        case Verdict::Boundary: bounded &= w.thresholds.alpha <= p && p <= w.thresholds.beta; break;
                    }
                }
                suite.check(bounded, label + ": case bounds fail at x = " + std::to_string(x));
            }
        });
    }
    return suite;
}

SuiteResult verify_thm4(const VerifyBounds& bounds, std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "thm4";
    random::Rng rng(suite_seed(seed, 4));
    const unsigned k_hi = std::max(3U, bounds.max_theta);

    auto examine = [&](const ECLoss& loss, unsigned k, const std::string& label) {
        guarded(suite, label, [&] {
            const auto c = ec_incoherence_counterexample(loss, k);
            suite.check(is_distribution(c.posterior), label + ": posterior is not a distribution");
            const auto test = bayes_test_ec(single_observation_model(c.posterior), loss);
            const auto report = check_coherence(test);
            suite.check(!report.coherent, label + ": replayed test is coherent");
            suite.check(report.violates(c.violated) && breaks(test, c.violated, c.h1, c.h2),
                        label + ": recorded axiom not violated on replay");
            ++suite.stats[std::string("violated_") + std::string(to_string(c.violated))];
        });
    };

    examine(ECLoss::tec({10, 3, 3, 10}), 3, "tec alpha=3/10");
    for (std::size_t i = 0; i < bounds.thm4_losses; ++i) {
        const unsigned k = draw_k(rng, 3, k_hi);
        examine(random::tec(rng), k, where("tec", i));
    }
    for (std::size_t i = 0; i < bounds.thm4_losses / 5; ++i) {
        const unsigned k = draw_k(rng, 3, k_hi);
        examine(random::per_hypothesis_ec(rng, k, static_cast<unsigned>(random::between(rng, 1, 6))), k, where("ec", i));
    }
    return suite;
}

SuiteResult verify_thm5(const VerifyBounds& bounds, std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "thm5";
    random::Rng rng(suite_seed(seed, 5));
    std::vector<GFBSTLoss> losses;
    for (std::size_t j = 0; j < bounds.losses; ++j) losses.push_back(random::gfbst_loss(rng));
    for (std::size_t i = 0; i < bounds.models; ++i) {
        const unsigned k = draw_k(rng, 1, bounds.max_theta);
        const std::size_t m = draw_m(rng, bounds.max_x);
        const auto model = i % 2 == 0 ? random::model(rng, k, m) : random::peaked_model(rng, k, m);
        for (std::size_t j = 0; j < losses.size(); ++j) {
            const auto label = where("model", i) + " " + where("loss", j);
            guarded(suite, label, [&] {
                const auto test = gfbst_bayes(model, losses[j]);
                expected_level_match(test, model, gfbst_family(losses[j]), suite, label);
                suite.check(check_coherence(test).coherent, label + ": incoherent");
                const auto regions = extract_region(test);
                for (std::size_t x = 0; x < m; ++x)
                    suite.check(is_hpd(regions(x), model.posterior(x)), label + ": region not HPD at x = " + std::to_string(x));
                suite.check(regions.all_nonempty() && !first_difference(region_test(regions), test),
                            label + ": not the region test of its extracted region");
            });
        }
    }
    return suite;
}

SuiteResult verify_thresholds(const VerifyBounds& bounds, std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "eq1";
    random::Rng rng(suite_seed(seed, 6));
    std::uint64_t ties = 0;
    for (std::size_t i = 0; i < bounds.eq1_pairs; ++i) {
        const unsigned k = draw_k(rng, 1, bounds.max_theta);
        const std::size_t m = draw_m(rng, bounds.max_x);
        const auto loss = i % 2 == 0 ? random::tec(rng)
                                     : random::per_hypothesis_ec(rng, k, static_cast<unsigned>(random::between(rng, 1, 4)));
        const auto model = i % 4 == 3 ? tie_model(thresholds_of(loss.shared()), k, m) : random::model(rng, k, m);
        const auto label = where("pair", i);
        guarded(suite, label, [&] {
            const auto family = ec_family(loss);
            const auto by_threshold = bayes_test_ec(model, loss);
            const auto direct = bayes_test_direct(model, family);
            for (std::size_t x = 0; x < m; ++x) {
                const auto post = model.posterior(x);
                for (Mask h = 0; h <= full_mask(k); ++h) {
                    const Verdict a = by_threshold.verdict(x, h), b = direct.verdict(x, h);
                    const auto e = expected_losses(family(Hypothesis(k, h), post), post);
                    const Rational best = std::min({e[Verdict::Accept], e[Verdict::Boundary], e[Verdict::Reject]});
                    const auto attaining = std::count_if(kAllVerdicts.begin(), kAllVerdicts.end(),
                                                         [&](Verdict d) { return e[d] == best; });
                    if (attaining > 1) ++ties;
                    suite.check(e[a] == best && (a == b || e[a] == e[b]),
                                label + ": threshold verdict is not a Bayes choice at x = " + std::to_string(x) +
                                    ", H = " + Hypothesis(k, h).to_string());
                }
            }
        });
    }
    suite.stats["ties"] = ties;
    return suite;
}

SuiteResult verify_properness(const VerifyBounds& bounds, std::uint64_t seed) {
    SuiteResult suite;
    suite.name = "proper";
    random::Rng rng(suite_seed(seed, 7));
    std::uint64_t premises = 0;
    for (std::size_t i = 0; i < bounds.proper_instances; ++i) {
        const unsigned k = draw_k(rng, 1, bounds.max_theta);
        const auto c = random::valid_ec_constants(rng);
        const Hypothesis h(k, rng() & full_mask(k));
        suite.check(is_proper(ec_table(c, h), h), where("ec", i) + ": valid EC loss is not proper");
    }
    for (std::size_t i = 0; i < bounds.proper_instances; ++i) {
        const unsigned k = draw_k(rng, 1, bounds.max_theta);
        const auto h = Hypothesis::singleton(k, static_cast<unsigned>(random::below(rng, k)));
        const auto table = random::proper_table(rng, h);
        const auto dist = random::distribution(rng, k);
        suite.check(is_proper(table, h), where("lemma", i) + ": generated table is not proper");
        const auto e = expected_losses(table, dist);
        if (std::min(e[Verdict::Boundary], e[Verdict::Accept]) <= e[Verdict::Reject]) {
            ++premises;
            suite.check(e[Verdict::Boundary] <= e[Verdict::Reject], where("lemma", i) + ": implication fails");
        }
    }
    suite.stats["lemma_premises"] = premises;
    return suite;
}

VerifySummary verify_theorems(const VerifyBounds& bounds, std::uint64_t seed) {
    validate(bounds);
    VerifySummary summary{seed, bounds, {}};
    summary.suites.push_back(verify_thm1(bounds, seed));
    summary.suites.push_back(verify_thm2(bounds, seed));
    summary.suites.push_back(verify_thm3(bounds, seed));
    summary.suites.push_back(verify_thm4(bounds, seed));
    summary.suites.push_back(verify_thm5(bounds, seed));
    summary.suites.push_back(verify_thresholds(bounds, seed));
    summary.suites.push_back(verify_properness(bounds, seed));
    return summary;
}

}  // namespace triadic
