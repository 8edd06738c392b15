#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entromat/catalog.hpp"
#include "entromat/errors.hpp"
#include "entromat/json_io.hpp"

#include <random>

using namespace entromat;

TEST_CASE("matroid round trip") {
    const RankTable fano = catalog("fano").matroid;
    CHECK(matroid_from_json(matroid_to_json(fano)) == fano);
}

TEST_CASE("matroid from circuits") {
    nlohmann::json j;
    j["m"] = 3;
    j["circuits"] = {{0, 1, 2}};
    CHECK(matroid_from_json(j) == uniform_matroid(2, 3));
}

TEST_CASE("malformed matroid JSON") {
    CHECK_THROWS_AS(matroid_from_json(nlohmann::json::parse("{\"m\": 2}")), FormatError);
    CHECK_THROWS_AS(matroid_from_json(nlohmann::json::parse("{\"m\": 2, \"rank\": [0,1]}")), FormatError);
    CHECK_THROWS_AS(matroid_from_json(nlohmann::json::parse("[1,2]")), FormatError);
    // Ranks that violate the axioms parse but are rejected.
    CHECK_THROWS_AS(matroid_from_json(nlohmann::json::parse("{\"m\": 1, \"rank\": [0, 2]}")),
                    std::invalid_argument);
}

TEST_CASE("distribution round trip") {
    std::mt19937 rng(0);
    for (int trial = 0; trial < 50; ++trial) {
        std::map<std::uint64_t, Rational> atoms;
        std::uniform_int_distribution<int> weight(1, 9);
        const int a = weight(rng), b = weight(rng), c = weight(rng);
        const int total = a + b + c;
        atoms[0] = Rational(a, total);
        atoms[4] = Rational(b, total);
        atoms[8] = Rational(c, total);
        const FiniteDistribution mu = make_distribution(3, 2, std::move(atoms));
        const FiniteDistribution back = distribution_from_json(distribution_to_json(mu));
        CHECK(back.q == mu.q);
        CHECK(back.m == mu.m);
        CHECK(back.atoms == mu.atoms);
    }
}

TEST_CASE("code round trip") {
    const AffineCode c = simonis_ashikhmin_code();
    const AffineCode back = code_from_json(code_to_json(c));
    CHECK(back.s == c.s);
    CHECK(back.words == c.words);
}

TEST_CASE("representation round trip") {
    const Representation r = representation_from_matrix(*catalog("fano").representation);
    const Representation back = representation_from_json(representation_to_json(r));
    CHECK(back.p == r.p);
    CHECK(back.d == r.d);
    CHECK(back.columns == r.columns);
}

TEST_CASE("distribution JSON validation") {
    CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(
                        "{\"q\":2,\"m\":1,\"atoms\":[{\"word\":[0],\"num\":1,\"den\":2}]}")),
                    std::invalid_argument);  // mass 1/2 != 1
    CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse("{\"q\":2,\"m\":1}")), FormatError);
    CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(
                        "{\"q\":2,\"m\":2,\"atoms\":[{\"word\":[0],\"num\":1,\"den\":1}]}")),
                    FormatError);  // word length mismatch
}
