#include "oracles.hpp"
#include "triadic/error.hpp"
#include "triadic/io.hpp"
#include "triadic/random.hpp"

#include <doctest.h>

#include <sstream>

using namespace triadic;
using io::Json;
using oracle::q;
using oracle::qs;

TEST_SUITE("io") {

TEST_CASE("rationals") {
    CHECK(io::rational_to_json(q(3, 10)) == "3/10");
    CHECK(io::rational_from_json(Json("6/20")) == q(3, 10));
    CHECK(io::rational_from_json(Json(4)) == q(4));
    CHECK_THROWS_AS(io::rational_from_json(Json(0.5)), Error);
    CHECK_THROWS_AS(io::rational_from_json(Json("1/0")), Error);
}

TEST_CASE("hypotheses") {
    CHECK(io::hypothesis_to_json(Hypothesis::of(4, {2, 0})) == Json::parse("[0,2]"));
    CHECK(io::hypothesis_from_json(4, Json::parse("[2,0]")) == Hypothesis::of(4, {0, 2}));
    CHECK(io::hypothesis_from_json(4, Json::array()) == Hypothesis::empty(4));
    CHECK_THROWS_AS(io::hypothesis_from_json(4, Json::parse("[4]")), Error);
    CHECK_THROWS_AS(io::hypothesis_from_json(4, Json::parse("[-1]")), Error);
    CHECK_THROWS_AS(io::hypothesis_from_json(4, Json::parse("\"0\"")), Error);
}

TEST_CASE("models round trip bit exactly") {
    random::Rng rng(200);
    for (int i = 0; i < 60; ++i) {
        const unsigned k = static_cast<unsigned>(random::between(rng, 1, 6));
        const std::size_t m = random::between(rng, 1, 4);
        const auto model = i % 2 ? random::model(rng, k, m) : random::peaked_model(rng, k, m);
        const auto j = io::model_to_json(model);
        const auto back = io::model_from_json(Json::parse(j.dump()));
        CHECK(back == model);
        CHECK(io::model_to_json(back).dump() == j.dump());
    }
    const auto hg = hypergeometric_model(5, 2);
    CHECK(io::model_from_json(io::model_to_json(hg)) == hg);
}

TEST_CASE("model validation") {
    const auto ok = Json::parse(R"({"theta_size":2,"x_size":1,"prior":["1/2","1/2"],"likelihood":[["1"],[1]]})");
    CHECK(io::model_from_json(ok).theta_size() == 2);
    auto bad = ok;
    bad["posterior"] = Json::array();
    CHECK_THROWS_AS(io::model_from_json(bad), Error);
    bad = ok;
    bad["prior"] = Json::parse(R"(["1/2"])");
    CHECK_THROWS_AS(io::model_from_json(bad), Error);
    bad = ok;
    bad.erase("x_size");
    CHECK_THROWS_AS(io::model_from_json(bad), Error);
    bad = ok;
    bad["likelihood"] = Json::parse(R"([["1","0"],["1"]])");
    CHECK_THROWS_AS(io::model_from_json(bad), Error);
}

TEST_CASE("losses round trip") {
    random::Rng rng(201);
    for (int i = 0; i < 40; ++i) {
        const auto loss = i % 2 ? random::tec(rng) : random::per_hypothesis_ec(rng, 4, 3);
        const auto back = io::ec_loss_from_json(4, Json::parse(io::ec_loss_to_json(loss).dump()));
        CHECK(back.shared() == loss.shared());
        CHECK(back.overrides() == loss.overrides());
        const auto g = random::gfbst_loss(rng);
        const auto gb = io::gfbst_loss_from_json(io::gfbst_loss_to_json(g));
        CHECK(gb.b == g.b);
        CHECK(gb.v == g.v);
        CHECK(gb.c == g.c);
    }
    const auto tec = Json::parse(R"({"type":"tec","lambda":{"pn":"10","bp":"3","bn":"3","np":"10"},
                                     "per_hypothesis":[{"hypothesis":[0],"lambda":{"pn":"1","bp":"1","bn":"1","np":"1"}}]})");
    CHECK_THROWS_AS(io::ec_loss_from_json(3, tec), Error);

    std::map<Mask, LossTable> tables;
    tables.emplace(1, ec_table({4, 1, 1, 4}, Hypothesis::of(2, {0})));
    const auto tj = io::loss_tables_to_json(2, tables);
    const auto tb = io::loss_tables_from_json(2, tj);
    REQUIRE(tb.size() == 1);
    CHECK(tb.at(1).values == tables.at(1).values);
}

TEST_CASE("verdict tables round trip and csv") {
    const RegionEstimator r{2, {Hypothesis::of(2, {0})}};
    const auto t = region_test(r);
    const auto j = io::verdicts_to_json(t);
    CHECK(j.size() == 4);
    CHECK(j[1] == Json::parse(R"({"x":0,"hypothesis":[0],"verdict":"accept"})"));
    const auto back = io::test_from_json(2, 1, j);
    CHECK_FALSE(first_difference(back, t));
    CHECK(back.provenance() == Provenance::External);
    std::ostringstream csv;
    io::write_csv(csv, t);
    CHECK(csv.str() == "x,hypothesis,verdict\n0,,reject\n0,0,accept\n0,1,reject\n0,0;1,accept\n");

    auto missing = j;
    missing.erase(0);
    CHECK_THROWS_AS(io::test_from_json(2, 1, missing), Error);
    auto dup = j;
    dup.push_back(j[0]);
    CHECK_THROWS_AS(io::test_from_json(2, 1, dup), Error);
}

TEST_CASE("coherence report json") {
    const auto t = SimultaneousTest::from_table(1, 1, {Verdict::Reject, Verdict::Boundary});
    const auto j = io::coherence_to_json(check_coherence(t));
    CHECK(j["coherent"] == false);
    CHECK(j["counts"]["propriety"] == 1);
    CHECK(j["violations"][0]["axiom"] == "propriety");
    CHECK(j["violations"][0]["h1"] == Json::parse("[0]"));
    CHECK(j["violations"][0]["verdicts"] == Json::parse(R"(["boundary"])"));
}

}  // TEST_SUITE
