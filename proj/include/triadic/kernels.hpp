#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version used by the library and a
// serial reference used by the tests and the benchmark.

#include "triadic/hypothesis.hpp"
#include "triadic/rational.hpp"
#include "triadic/verdict.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace triadic::kernels {

/// masses[h] = sum of dist over the members of h, for every h < 2^k.
/// Serial: lowest-bit recurrence. Parallel: independent per-mask sums.
std::vector<Rational> subset_masses_serial(std::span<const Rational> dist);
std::vector<Rational> subset_masses_parallel(std::span<const Rational> dist);

using VerdictRule = std::function<Verdict(std::size_t x, Mask h)>;

/// table[x * 2^k + h] = rule(x, h).
std::vector<Verdict> materialize_serial(unsigned k, std::size_t m, const VerdictRule& rule);
std::vector<Verdict> materialize_parallel(unsigned k, std::size_t m, const VerdictRule& rule);

/// Number of worker threads OpenMP would use (1 without OpenMP).
int max_threads() noexcept;

}  // namespace triadic::kernels
