#include "triadic/coherence.hpp"

#include "triadic/error.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace triadic {

std::string_view to_string(Axiom a) noexcept {
    switch (a) {
        case Axiom::Propriety: return "propriety";
        case Axiom::Monotonicity: return "monotonicity";
        case Axiom::IntersectionConsonance: return "intersection_consonance";
        case Axiom::Invertibility: return "invertibility";
        case Axiom::UnionConsonance: return "union_consonance";
    }
    return "?";
}

std::optional<Axiom> parse_axiom(std::string_view s) noexcept {
    for (std::size_t i = 0; i < kAxiomCount; ++i)
        if (to_string(static_cast<Axiom>(i)) == s) return static_cast<Axiom>(i);
    return std::nullopt;
}

bool CoherenceReport::has_violation(Axiom a, std::size_t x, Mask h1, std::optional<Mask> h2) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) {
        return v.axiom == a && v.x == x && v.h1 == h1 && (!h2 || v.h2 == h2);
    });
}

namespace {

std::size_t axiom_index(Axiom a) { return static_cast<std::size_t>(a); }

auto sort_key(const Violation& v) { return std::make_tuple(axiom_index(v.axiom), v.x, v.h1, v.h2.value_or(0)); }

/// Violations and counts of one scan, kept per axiom.
struct Tally {
    std::array<std::uint64_t, kAxiomCount> counts{};
    std::array<std::vector<Violation>, kAxiomCount> recorded;
    std::size_t cap = 0;

    void add(Violation v) {
        const auto i = axiom_index(v.axiom);
        ++counts[i];
        if (recorded[i].size() < cap) recorded[i].push_back(std::move(v));
    }

    /// Appends other's records; callers merge in ascending key order.
    void absorb(Tally& other) {
        for (std::size_t i = 0; i < kAxiomCount; ++i) {
            counts[i] += other.counts[i];
            for (auto& v : other.recorded[i]) {
                if (recorded[i].size() >= cap) break;
                recorded[i].push_back(std::move(v));
            }
        }
    }
};

std::vector<Verdict> verdict_column(const SimultaneousTest& test, std::size_t x) {
    if (test.materialized()) {
        const auto col = test.column(x);
        return {col.begin(), col.end()};
    }
    std::vector<Verdict> col(std::size_t{1} << test.theta_size());
    for (Mask h = 0; h < col.size(); ++h) col[h] = test.verdict(x, h);
    return col;
}

void check_guard(const SimultaneousTest& test, const CoherenceOptions& options) {
    if (test.theta_size() > options.max_k && !options.sampled_pairs)
        throw Error(ErrorKind::TooLarge, "exhaustive coherence scan over 2^" + std::to_string(test.theta_size()) +
                                             " hypotheses exceeds max_k = " + std::to_string(options.max_k));
}

CoherenceReport finish(const SimultaneousTest& test, Tally& tally, bool exhaustive) {
    CoherenceReport report;
    report.theta_size = test.theta_size();
    report.x_size = test.x_size();
    report.exhaustive = exhaustive;
    report.counts = tally.counts;
    for (std::size_t i = 0; i < kAxiomCount; ++i) {
        if (is_defining(static_cast<Axiom>(i)) && tally.counts[i] > 0) report.coherent = false;
        for (auto& v : tally.recorded[i]) report.violations.push_back(std::move(v));
    }
    if (exhaustive && report.coherent && report.violates(Axiom::UnionConsonance))
        throw std::logic_error("union consonance failed on a test satisfying the four coherence axioms");
    return report;
}

// Checks at one hypothesis h1 that only need supersets of h1 or its complement.
void scan_from(std::size_t x, Mask h1, Mask full, std::span<const Verdict> col, Tally& tally) {
    const Verdict v1 = col[h1];
    if (h1 == full && v1 != Verdict::Accept) tally.add({Axiom::Propriety, x, h1, std::nullopt, {v1}});
    if (v1 != Verdict::Reject) {
        const Mask rest = full & ~h1;
        for (Mask sub = 0;; sub = (sub - rest) & rest) {
            const Mask h2 = h1 | sub;
            const Verdict v2 = col[h2];
            if ((v1 == Verdict::Accept && v2 != Verdict::Accept) || (v1 == Verdict::Boundary && v2 == Verdict::Reject))
                tally.add({Axiom::Monotonicity, x, h1, h2, {v1, v2}});
            if (sub == rest) break;
        }
    }
    if ((v1 == Verdict::Accept) != (col[full & ~h1] == Verdict::Reject))
        tally.add({Axiom::Invertibility, x, h1, std::nullopt, {v1, col[full & ~h1]}});
}

// Pair checks among hypotheses sharing one verdict: intersections of accepted sets must be
// accepted, unions of rejected sets must be rejected.
void scan_pairs(std::size_t x, std::size_t i, std::span<const Mask> members, std::span<const Verdict> col, Axiom axiom,
                Tally& tally) {
    const Mask h1 = members[i];
    for (std::size_t j = i + 1; j < members.size(); ++j) {
        const Mask h2 = members[j];
        const Mask combined = axiom == Axiom::IntersectionConsonance ? (h1 & h2) : (h1 | h2);
        const Verdict required = axiom == Axiom::IntersectionConsonance ? Verdict::Accept : Verdict::Reject;
        if (col[combined] != required) tally.add({axiom, x, h1, h2, {col[h1], col[h2], col[combined]}});
    }
}

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

int thread_id() {
#ifdef _OPENMP
    return omp_get_thread_num();
#else
    return 0;
#endif
}

// Runs body(i, tally) for i in [0, n) over contiguous per-thread ranges and merges the
// thread-local tallies in range order, which keeps records sorted and capping deterministic.
template <class Body>
void parallel_scan(std::int64_t n, Tally& into, Body body) {
    std::vector<Tally> locals(static_cast<std::size_t>(thread_count()));
    for (auto& t : locals) t.cap = into.cap;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i), locals[static_cast<std::size_t>(thread_id())]);
    for (auto& t : locals) into.absorb(t);
}

CoherenceReport sampled_scan(const SimultaneousTest& test, const CoherenceOptions& options) {
    const unsigned k = test.theta_size();
    const Mask full = full_mask(k);
    std::mt19937_64 rng(options.seed);
    std::vector<Violation> found;
    std::array<std::uint64_t, kAxiomCount> counts{};
    auto v = [&](std::size_t x, Mask h) { return test.verdict(x, h); };
    auto add = [&](Violation viol) {
        if (std::find(found.begin(), found.end(), viol) != found.end()) return;
        ++counts[axiom_index(viol.axiom)];
        found.push_back(std::move(viol));
    };
    auto monotone = [&](std::size_t x, Mask small, Mask big) {
        const Verdict a = v(x, small), b = v(x, big);
        if ((a == Verdict::Accept && b != Verdict::Accept) || (a == Verdict::Boundary && b == Verdict::Reject))
            add({Axiom::Monotonicity, x, small, big, {a, b}});
    };
    for (std::size_t x = 0; x < test.x_size(); ++x) {
        if (v(x, full) != Verdict::Accept) add({Axiom::Propriety, x, full, std::nullopt, {v(x, full)}});
        for (std::uint64_t s = 0; s < *options.sampled_pairs; ++s) {
            Mask h1 = rng() & full, h2 = rng() & full;
            if (h1 > h2) std::swap(h1, h2);
            const Verdict v1 = v(x, h1), v2 = v(x, h2);
            for (Mask h : {h1, h2})
                if ((v(x, h) == Verdict::Accept) != (v(x, full & ~h) == Verdict::Reject))
                    add({Axiom::Invertibility, x, h, std::nullopt, {v(x, h), v(x, full & ~h)}});
            monotone(x, h1 & h2, h1);
            monotone(x, h1 & h2, h2);
            monotone(x, h1, h1 | h2);
            monotone(x, h2, h1 | h2);
            if (h1 != h2 && v1 == Verdict::Accept && v2 == Verdict::Accept && v(x, h1 & h2) != Verdict::Accept)
                add({Axiom::IntersectionConsonance, x, h1, h2, {v1, v2, v(x, h1 & h2)}});
            if (h1 != h2 && v1 == Verdict::Reject && v2 == Verdict::Reject && v(x, h1 | h2) != Verdict::Reject)
                add({Axiom::UnionConsonance, x, h1, h2, {v1, v2, v(x, h1 | h2)}});
        }
    }
    std::sort(found.begin(), found.end(), [](const Violation& a, const Violation& b) { return sort_key(a) < sort_key(b); });
    Tally tally;
    tally.cap = options.max_recorded;
    tally.counts = counts;
    for (auto& viol : found)
        if (tally.recorded[axiom_index(viol.axiom)].size() < tally.cap) tally.recorded[axiom_index(viol.axiom)].push_back(std::move(viol));
    return finish(test, tally, false);
}

}  // namespace

CoherenceReport check_coherence(const SimultaneousTest& test, const CoherenceOptions& options) {
    check_guard(test, options);
    if (test.theta_size() > options.max_k) return sampled_scan(test, options);

    const Mask full = full_mask(test.theta_size());
    const auto count = static_cast<std::int64_t>(full) + 1;
    Tally tally;
    tally.cap = options.max_recorded;

    for (std::size_t x = 0; x < test.x_size(); ++x) {
        const auto col = verdict_column(test, x);
        std::vector<Mask> accepted, rejected;
        for (Mask h = 0; h < col.size(); ++h) {
            if (col[h] == Verdict::Accept) accepted.push_back(h);
            if (col[h] == Verdict::Reject) rejected.push_back(h);
        }
        Tally singles;
        singles.cap = options.max_recorded;
        parallel_scan(count, singles, [&](std::size_t h1, Tally& t) { scan_from(x, h1, full, col, t); });
        Tally intersections;
        intersections.cap = options.max_recorded;
        parallel_scan(static_cast<std::int64_t>(accepted.size()), intersections, [&](std::size_t i, Tally& t) {
            scan_pairs(x, i, accepted, col, Axiom::IntersectionConsonance, t);
        });
        Tally unions;
        unions.cap = options.max_recorded;
        parallel_scan(static_cast<std::int64_t>(rejected.size()), unions, [&](std::size_t i, Tally& t) {
            scan_pairs(x, i, rejected, col, Axiom::UnionConsonance, t);
        });
        for (Tally* t : {&singles, &intersections, &unions}) tally.absorb(*t);
    }
    return finish(test, tally, true);
}

CoherenceReport check_coherence_serial(const SimultaneousTest& test, const CoherenceOptions& options) {
    check_guard(test, options);
    if (test.theta_size() > options.max_k) return sampled_scan(test, options);

    const Mask full = full_mask(test.theta_size());
    std::vector<Violation> found;
    for (std::size_t x = 0; x < test.x_size(); ++x) {
        auto v = [&](Mask h) { return test.verdict(x, h); };
        if (v(full) != Verdict::Accept) found.push_back({Axiom::Propriety, x, full, std::nullopt, {v(full)}});
        for (Mask h1 = 0; h1 <= full; ++h1) {
            if ((v(h1) == Verdict::Accept) != (v(full & ~h1) == Verdict::Reject))
                found.push_back({Axiom::Invertibility, x, h1, std::nullopt, {v(h1), v(full & ~h1)}});
            for (Mask h2 = 0; h2 <= full; ++h2) {
                const Verdict a = v(h1), b = v(h2);
                if ((h1 & ~h2) == 0 && ((a == Verdict::Accept && b != Verdict::Accept) ||
                                        (a == Verdict::Boundary && b == Verdict::Reject)))
                    found.push_back({Axiom::Monotonicity, x, h1, h2, {a, b}});
                if (h1 < h2 && a == Verdict::Accept && b == Verdict::Accept && v(h1 & h2) != Verdict::Accept)
                    found.push_back({Axiom::IntersectionConsonance, x, h1, h2, {a, b, v(h1 & h2)}});
                if (h1 < h2 && a == Verdict::Reject && b == Verdict::Reject && v(h1 | h2) != Verdict::Reject)
                    found.push_back({Axiom::UnionConsonance, x, h1, h2, {a, b, v(h1 | h2)}});
            }
        }
    }
    std::stable_sort(found.begin(), found.end(), [](const Violation& a, const Violation& b) { return sort_key(a) < sort_key(b); });
    Tally tally;
    tally.cap = options.max_recorded;
    for (auto& viol : found) tally.add(std::move(viol));
    return finish(test, tally, true);
}

RegionEstimator extract_region(const SimultaneousTest& test) {
    const unsigned k = test.theta_size();
    RegionEstimator r{k, {}};
    for (std::size_t x = 0; x < test.x_size(); ++x) {
        Mask bits = 0;
        for (unsigned theta = 0; theta < k; ++theta)
            if (test.verdict(x, Mask{1} << theta) != Verdict::Reject) bits |= Mask{1} << theta;
        r.regions.emplace_back(k, bits);
    }
    return r;
}

RegionBasedResult is_region_based(const SimultaneousTest& test, unsigned max_k) {
    if (test.theta_size() > max_k)
        throw Error(ErrorKind::TooLarge, "region-based check over 2^" + std::to_string(test.theta_size()) +
                                             " hypotheses exceeds max_k = " + std::to_string(max_k));
    RegionBasedResult result;
    auto regions = extract_region(test);
    for (std::size_t x = 0; x < regions.x_size(); ++x)
        if (regions(x).is_empty()) {
            result.empty_region_at = x;
            return result;
        }
    const auto rebuilt = region_test(regions);
    const Mask full = full_mask(test.theta_size());
    for (std::size_t x = 0; x < test.x_size() && !result.mismatch; ++x)
        for (Mask h = 0;; ++h) {
            const Verdict a = test.verdict(x, h), b = rebuilt.verdict(x, h);
            if (a != b) {
                result.mismatch = Mismatch{x, h, a, b};
                break;
            }
            if (h == full) break;
        }
    if (!result.mismatch) {
        result.region_based = true;
        result.witness = std::move(regions);
    }
    return result;
}

bool certify_gfbst(const SimultaneousTest& test, const Model& model, unsigned max_k) {
    if (test.theta_size() != model.theta_size() || test.x_size() != model.x_size())
        throw Error(ErrorKind::DimensionMismatch, "test and model have different shapes");
    const auto rb = is_region_based(test, max_k);
    if (!rb.region_based) throw Error(ErrorKind::NotRegionBased, "test is not generated by a region estimator");
    for (std::size_t x = 0; x < model.x_size(); ++x)
        if (!is_hpd((*rb.witness)(x), model.posterior(x))) return false;
    return true;
}

}  // namespace triadic
