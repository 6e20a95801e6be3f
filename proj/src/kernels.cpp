#include "triadic/kernels.hpp"

#include "triadic/error.hpp"

#include <bit>
#include <cstdint>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace triadic::kernels {

namespace {

void check_size(std::size_t k) {
    if (k > 30) throw Error(ErrorKind::TooLarge, "2^" + std::to_string(k) + " subset masses");
}

}  // namespace

std::vector<Rational> subset_masses_serial(std::span<const Rational> dist) {
    check_size(dist.size());
    const std::size_t count = std::size_t{1} << dist.size();
    std::vector<Rational> masses(count, Rational(0));
    for (std::size_t h = 1; h < count; ++h) {
        const auto low = static_cast<std::size_t>(std::countr_zero(h));
        masses[h] = masses[h & (h - 1)] + dist[low];
    }
    return masses;
}

std::vector<Rational> subset_masses_parallel(std::span<const Rational> dist) {
    check_size(dist.size());
    const auto count = static_cast<std::int64_t>(std::size_t{1} << dist.size());
    std::vector<Rational> masses(static_cast<std::size_t>(count), Rational(0));
#pragma omp parallel for schedule(static)
    for (std::int64_t h = 1; h < count; ++h) {
        Rational total(0);
        for (auto b = static_cast<std::uint64_t>(h); b != 0; b &= b - 1) total += dist[static_cast<std::size_t>(std::countr_zero(b))];
        masses[static_cast<std::size_t>(h)] = std::move(total);
    }
    return masses;
}

std::vector<Verdict> materialize_serial(unsigned k, std::size_t m, const VerdictRule& rule) {
    check_size(k);
    const std::size_t per_x = std::size_t{1} << k;
    std::vector<Verdict> table(per_x * m);
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t h = 0; h < per_x; ++h) table[x * per_x + h] = rule(x, h);
    return table;
}

std::vector<Verdict> materialize_parallel(unsigned k, std::size_t m, const VerdictRule& rule) {
    check_size(k);
    const std::size_t per_x = std::size_t{1} << k;
    const auto total = static_cast<std::int64_t>(per_x * m);
    std::vector<Verdict> table(static_cast<std::size_t>(total));
    // Exceptions cannot cross the parallel region; keep the lowest-index one and rethrow.
    std::exception_ptr failure;
    std::int64_t failed_at = total;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
        try {
            const auto idx = static_cast<std::size_t>(i);
            table[idx] = rule(idx / per_x, idx % per_x);
        } catch (...) {
#pragma omp critical(triadic_materialize_failure)
            if (i < failed_at) {
                failed_at = i;
                failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return table;
}

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace triadic::kernels
