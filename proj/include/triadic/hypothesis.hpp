#pragma once

#include "triadic/rational.hpp"

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace triadic {

/// Bit i set <=> theta_i is a member.
using Mask = std::uint64_t;

inline constexpr unsigned kMaxTheta = 63;

constexpr Mask full_mask(unsigned k) noexcept {
    return k >= 64 ? ~Mask{0} : (Mask{1} << k) - 1;
}

/// A subset of Theta = {0, ..., k-1}. Value type; all set operations stay inside Theta.
class Hypothesis {
public:
    Hypothesis() = default;
    /// Throws Error(TooLarge) if k > kMaxTheta, Error(IndexOutOfRange) if bits leave Theta.
    Hypothesis(unsigned k, Mask bits);

    static Hypothesis empty(unsigned k) { return {k, 0}; }
    static Hypothesis full(unsigned k) { return {k, full_mask(k)}; }
    static Hypothesis singleton(unsigned k, unsigned theta);
    static Hypothesis of(unsigned k, std::initializer_list<unsigned> members);
    static Hypothesis from_indices(unsigned k, std::span<const unsigned> members);

    unsigned ambient() const noexcept { return k_; }
    Mask bits() const noexcept { return bits_; }
    unsigned size() const noexcept;
    bool is_empty() const noexcept { return bits_ == 0; }
    bool is_full() const noexcept { return bits_ == full_mask(k_); }
    bool contains(unsigned theta) const noexcept { return theta < k_ && ((bits_ >> theta) & 1U); }

    Hypothesis complement() const noexcept { return {k_, ~bits_ & full_mask(k_), Unchecked{}}; }
    bool subset_of(const Hypothesis& other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    bool intersects(const Hypothesis& other) const noexcept { return (bits_ & other.bits_) != 0; }

    /// Sorted member indices.
    std::vector<unsigned> indices() const;
    /// "{0,1,3}"
    std::string to_string() const;

    /// Sum of dist over the members.
    Rational mass(std::span<const Rational> dist) const;

    friend Hypothesis operator&(const Hypothesis& a, const Hypothesis& b);
    friend Hypothesis operator|(const Hypothesis& a, const Hypothesis& b);
    friend bool operator==(const Hypothesis& a, const Hypothesis& b) noexcept = default;
    friend auto operator<=>(const Hypothesis& a, const Hypothesis& b) noexcept = default;

private:
    struct Unchecked {};
    Hypothesis(unsigned k, Mask bits, Unchecked) noexcept : k_(k), bits_(bits) {}

    unsigned k_ = 0;
    Mask bits_ = 0;
};

/// Guard for power-set enumeration: 20, or the TRIADIC_MAX_K environment variable.
unsigned enumeration_limit();

/// All 2^k subsets in increasing mask order. Throws Error(TooLarge) above enumeration_limit().
std::vector<Hypothesis> enumerate_hypotheses(unsigned k);

/// {theta : dist(theta) >= level}.
Hypothesis hpd(std::span<const Rational> dist, const Rational& level);

/// True iff some level > 0 gives region == {theta : dist(theta) >= level}.
/// The empty region qualifies (any level above the maximum).
bool is_hpd(const Hypothesis& region, std::span<const Rational> dist);

/// One region per sample index.
struct RegionEstimator {
    unsigned theta_size = 0;
    std::vector<Hypothesis> regions;

    std::size_t x_size() const noexcept { return regions.size(); }
    const Hypothesis& operator()(std::size_t x) const { return regions.at(x); }
    bool all_nonempty() const noexcept;

    friend bool operator==(const RegionEstimator&, const RegionEstimator&) = default;
};

}  // namespace triadic
