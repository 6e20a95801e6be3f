#include "oracles.hpp"
#include "triadic/error.hpp"
#include "triadic/kernels.hpp"
#include "triadic/random.hpp"

#include <doctest.h>

using namespace triadic;

TEST_SUITE("kernels") {

TEST_CASE("subset masses: serial, parallel and direct sums agree") {
    random::Rng rng(100);
    for (int i = 0; i < 40; ++i) {
        const unsigned k = static_cast<unsigned>(random::between(rng, 0, 10));
        const auto dist = k == 0 ? std::vector<Rational>{} : random::distribution(rng, k);
        const auto serial = kernels::subset_masses_serial(dist);
        const auto parallel = kernels::subset_masses_parallel(dist);
        REQUIRE(serial.size() == (std::size_t{1} << k));
        CHECK(serial == parallel);
        for (Mask h = 0; h < serial.size(); ++h) CHECK(serial[h] == oracle::mass(dist, h));
    }
}

TEST_CASE("materialization is order independent") {
    random::Rng rng(101);
    for (int i = 0; i < 20; ++i) {
        const unsigned k = static_cast<unsigned>(random::between(rng, 1, 10));
        const std::size_t m = random::between(rng, 1, 4);
        const auto salt = rng();
        const kernels::VerdictRule rule = [salt](std::size_t x, Mask h) {
            return static_cast<Verdict>(((h * 2654435761ULL) ^ (x * 40503ULL) ^ salt) % 3);
        };
        CHECK(kernels::materialize_serial(k, m, rule) == kernels::materialize_parallel(k, m, rule));
    }
}

TEST_CASE("parallel materialization reports the first failing cell") {
    const kernels::VerdictRule rule = [](std::size_t x, Mask h) -> Verdict {
        if (x == 1 && h >= 3) throw Error(ErrorKind::ValidationError, "cell " + std::to_string(h));
        return Verdict::Boundary;
    };
    try {
        kernels::materialize_parallel(4, 2, rule);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("cell 3") != std::string::npos);
    }
}

TEST_CASE("size guard") {
    CHECK_THROWS_AS(kernels::subset_masses_parallel(std::vector<Rational>(31, Rational(0))), Error);
    CHECK(kernels::max_threads() >= 1);
}

}  // TEST_SUITE
