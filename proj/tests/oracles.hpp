#pragma once

// Independent reference computations used by the tests. Nothing here calls the library's
// decision or loss code.

#include "triadic/hypothesis.hpp"
#include "triadic/losses.hpp"
#include "triadic/model.hpp"
#include "triadic/verdict.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using triadic::Mask;
using triadic::Rational;
using triadic::Verdict;

inline Rational q(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::vector<Rational> qs(std::initializer_list<std::pair<long, long>> values) {
    std::vector<Rational> out;
    for (auto [n, d] : values) out.push_back(q(n, d));
    return out;
}

inline std::uint64_t choose(unsigned n, unsigned r) {
    if (r > n) return 0;
    std::uint64_t out = 1;
    for (unsigned i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

inline Rational mass(const std::vector<Rational>& dist, Mask h) {
    Rational total(0);
    for (unsigned i = 0; i < dist.size(); ++i)
        if ((h >> i) & 1U) total += dist[i];
    return total;
}

/// Bayes' rule, column x.
inline std::vector<Rational> bayes(const std::vector<Rational>& prior, const std::vector<std::vector<Rational>>& lik,
                                   std::size_t x) {
    std::vector<Rational> joint(prior.size());
    Rational marginal(0);
    for (std::size_t t = 0; t < prior.size(); ++t) {
        joint[t] = prior[t] * lik[t][x];
        marginal += joint[t];
    }
    for (auto& j : joint) j /= marginal;
    return joint;
}

/// Is there a positive level l with region == {t : dist[t] >= l}? Tries every distinct positive
/// density and one level above the maximum.
inline bool is_hpd(Mask region, const std::vector<Rational>& dist) {
    std::set<Rational> levels;
    Rational top(0);
    for (const auto& d : dist) {
        if (d > 0) levels.insert(d);
        top = std::max(top, d);
    }
    levels.insert(top + 1);
    for (const auto& l : levels) {
        Mask h = 0;
        for (unsigned i = 0; i < dist.size(); ++i)
            if (dist[i] >= l) h |= Mask{1} << i;
        if (h == region) return true;
    }
    return false;
}

inline Mask tangent(const std::vector<Rational>& dist, Mask h) {
    const unsigned k = static_cast<unsigned>(dist.size());
    Mask out = 0;
    for (unsigned t = 0; t < k; ++t) {
        bool above = true;
        for (unsigned s = 0; s < k; ++s)
            if (((h >> s) & 1U) && !(dist[t] > dist[s])) above = false;
        if (above) out |= Mask{1} << t;
    }
    return out;
}

/// Expected losses (accept, boundary, reject) of the EC loss with constants c for hypothesis h.
inline std::array<Rational, 3> ec_expected(const triadic::ECConstants& c, Mask h, const std::vector<Rational>& dist) {
    const Rational p = mass(dist, h);
    const Rational out = 1 - p;
    return {c.accept_out * out, c.boundary_in * p + c.boundary_out * out, c.reject_in * p};
}

/// Expected losses under the GFBST loss table, written from the table's three columns.
inline std::array<Rational, 3> gfbst_expected(const triadic::GFBSTLoss& l, Mask h, const std::vector<Rational>& dist) {
    const unsigned k = static_cast<unsigned>(dist.size());
    const Mask full = (Mask{1} << k) - 1;
    const Mask th = tangent(dist, h), thc = tangent(dist, full & ~h);
    std::array<Rational, 3> e{Rational(0), Rational(0), Rational(0)};
    for (unsigned t = 0; t < k; ++t) {
        const bool in_th = (th >> t) & 1U, in_thc = (thc >> t) & 1U;
        // columns: theta in T^H | neither | theta in T^{H^c}
        const int col = in_th ? 0 : (in_thc ? 2 : 1);
        const std::array<std::array<Rational, 3>, 3> table{{
            {l.b + l.c, l.b, Rational(0)},
            {l.v + l.c, l.v, l.v + l.c},
            {Rational(0), l.b, l.b + l.c},
        }};
        for (int d = 0; d < 3; ++d) e[d] += dist[t] * table[d][col];
    }
    return e;
}

inline Rational min3(const std::array<Rational, 3>& e) { return std::min({e[0], e[1], e[2]}); }

inline Verdict region_verdict(Mask region, Mask h) {
    if ((region & ~h) == 0) return Verdict::Accept;
    if ((region & h) == 0) return Verdict::Reject;
    return Verdict::Boundary;
}

}  // namespace oracle
