#include "triadic/hypothesis.hpp"

#include "triadic/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

namespace triadic {

Hypothesis::Hypothesis(unsigned k, Mask bits) : k_(k), bits_(bits) {
    if (k > kMaxTheta) throw Error(ErrorKind::TooLarge, "Theta size " + std::to_string(k) + " exceeds 63");
    if ((bits & ~full_mask(k)) != 0) throw Error(ErrorKind::IndexOutOfRange, "hypothesis has members outside Theta");
}

Hypothesis Hypothesis::singleton(unsigned k, unsigned theta) {
    if (theta >= k) throw Error(ErrorKind::IndexOutOfRange, "theta " + std::to_string(theta) + " >= " + std::to_string(k));
    return {k, Mask{1} << theta};
}

Hypothesis Hypothesis::of(unsigned k, std::initializer_list<unsigned> members) {
    return from_indices(k, std::span<const unsigned>(members.begin(), members.size()));
}

Hypothesis Hypothesis::from_indices(unsigned k, std::span<const unsigned> members) {
    Mask bits = 0;
    for (unsigned i : members) {
        if (i >= k) throw Error(ErrorKind::IndexOutOfRange, "theta " + std::to_string(i) + " >= " + std::to_string(k));
        bits |= Mask{1} << i;
    }
    return {k, bits};
}

unsigned Hypothesis::size() const noexcept { return static_cast<unsigned>(std::popcount(bits_)); }

std::vector<unsigned> Hypothesis::indices() const {
    std::vector<unsigned> out;
    out.reserve(size());
    for (Mask b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<unsigned>(std::countr_zero(b)));
    return out;
}

std::string Hypothesis::to_string() const {
    std::string s = "{";
    bool first = true;
    for (unsigned i : indices()) {
        if (!first) s += ',';
        s += std::to_string(i);
        first = false;
    }
    return s + "}";
}

Rational Hypothesis::mass(std::span<const Rational> dist) const {
    Rational total(0);
    for (Mask b = bits_; b != 0; b &= b - 1) total += dist[static_cast<std::size_t>(std::countr_zero(b))];
    return total;
}

Hypothesis operator&(const Hypothesis& a, const Hypothesis& b) {
    if (a.k_ != b.k_) throw Error(ErrorKind::DimensionMismatch, "hypotheses over different Theta");
    return {a.k_, a.bits_ & b.bits_, Hypothesis::Unchecked{}};
}

Hypothesis operator|(const Hypothesis& a, const Hypothesis& b) {
    if (a.k_ != b.k_) throw Error(ErrorKind::DimensionMismatch, "hypotheses over different Theta");
    return {a.k_, a.bits_ | b.bits_, Hypothesis::Unchecked{}};
}

unsigned enumeration_limit() {
    if (const char* env = std::getenv("TRIADIC_MAX_K"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) return static_cast<unsigned>(std::min<unsigned long>(v, kMaxTheta));
    }
    return 20;
}

std::vector<Hypothesis> enumerate_hypotheses(unsigned k) {
    if (k > enumeration_limit())
        throw Error(ErrorKind::TooLarge, "enumerating 2^" + std::to_string(k) + " hypotheses exceeds the limit of 2^" +
                                             std::to_string(enumeration_limit()));
    std::vector<Hypothesis> out;
    out.reserve(std::size_t{1} << k);
    for (Mask h = 0; h <= full_mask(k); ++h) out.emplace_back(k, h);
    return out;
}

Hypothesis hpd(std::span<const Rational> dist, const Rational& level) {
    const auto k = static_cast<unsigned>(dist.size());
    Mask bits = 0;
    for (unsigned i = 0; i < k; ++i)
        if (dist[i] >= level) bits |= Mask{1} << i;
    return {k, bits};
}

bool is_hpd(const Hypothesis& region, std::span<const Rational> dist) {
    if (region.ambient() != dist.size()) throw Error(ErrorKind::DimensionMismatch, "region and distribution sizes differ");
    if (region.is_empty()) return true;

    // The only candidate level is the smallest density inside the region.
    const auto members = region.indices();
    const Rational* level = &dist[members.front()];
    for (unsigned i : members)
        if (dist[i] < *level) level = &dist[i];
    if (sgn(*level) <= 0) return false;
    return hpd(dist, *level) == region;
}

bool RegionEstimator::all_nonempty() const noexcept {
    return std::none_of(regions.begin(), regions.end(), [](const Hypothesis& r) { return r.is_empty(); });
}

}  // namespace triadic
