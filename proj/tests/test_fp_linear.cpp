#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entromat/catalog.hpp"
#include "entromat/distribution.hpp"
#include "entromat/errors.hpp"
#include "entromat/fp_linear.hpp"

#include <random>

using namespace entromat;

TEST_CASE("fp_rank basics") {
    CHECK(fp_rank(make_fp_matrix(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
    CHECK(fp_rank(make_fp_matrix(2, {{0, 0}, {0, 0}})) == 0);
    CHECK(fp_rank(*catalog("fano").representation) == 3);
    CHECK(fp_rank(*catalog("fano_dual").representation) == 4);
    CHECK(fp_rank(make_fp_matrix(5, {{1, 2}, {2, 4}})) == 1);
    CHECK(is_prime(2));
    CHECK(is_prime(999983));
    CHECK(!is_prime(1));
    CHECK(!is_prime(91));
}

TEST_CASE("verify_representation against the paper matrices") {
    const CatalogEntry fano = catalog("fano");
    CHECK(verify_representation(fano.matroid, representation_from_matrix(*fano.representation)).ok);
    const CatalogEntry fd = catalog("fano_dual");
    CHECK(verify_representation(fd.matroid, representation_from_matrix(*fd.representation)).ok);

    // U_{2,4} cannot be represented with binary vectors: there are only
    // three nonzero directions in F_2^2.
    const Representation bogus{2, 2, {{0, 1}, {1, 0}, {1, 1}, {0, 1}}};
    const RepresentationCheck chk = verify_representation(uniform_matroid(2, 4), bogus);
    CHECK(!chk.ok);
    CHECK(popcount(chk.witness) == 2);
}

TEST_CASE("find_representation on lines") {
    const auto found = find_representation(uniform_matroid(2, 4), 3);
    REQUIRE(found.representation.has_value());
    CHECK(verify_representation(uniform_matroid(2, 4), *found.representation).ok);

    const auto none = find_representation(uniform_matroid(2, 4), 2);
    CHECK(!none.representation.has_value());
    CHECK(none.nodes > 0);
}

TEST_CASE("find_representation matches Fano facts") {
    const RankTable fano = catalog("fano").matroid;
    CHECK(find_representation(fano, 2).representation.has_value());
    CHECK(!find_representation(fano, 3).representation.has_value());
    const RankTable fd = catalog("fano_dual").matroid;
    CHECK(find_representation(fd, 2).representation.has_value());
    CHECK(!find_representation(fd, 3).representation.has_value());
}

TEST_CASE("representability duality on small catalog entries") {
    for (const std::string& name : {std::string("u23"), std::string("u24"), std::string("u25"),
                                    std::string("u35"), std::string("fano"), std::string("fano_dual")}) {
        const RankTable M = catalog(name).matroid;
        if (M.m > 7) continue;
        for (const std::int64_t p : {2, 3}) {
            const bool primal = find_representation(M, p).representation.has_value();
            const bool dualr = find_representation(dual(M), p).representation.has_value();
            CHECK(primal == dualr);
        }
    }
}

TEST_CASE("representation to distribution recovers the matroid") {
    const CatalogEntry fano = catalog("fano");
    const Representation rep = representation_from_matrix(*fano.representation);
    const FiniteDistribution mu = representation_to_distribution(rep);
    CHECK(mu.atoms.size() == 8);
    for (const auto& [k, w] : mu.atoms) CHECK(w == Rational(1, 8));
    const auto em = as_entropic_matroid(mu);
    REQUIRE(em.matroid.has_value());
    CHECK(*em.matroid == fano.matroid);

    // Identity representation of the free matroid: product of uniforms.
    const Representation id = representation_from_matrix(make_fp_matrix(3, {{1, 0}, {0, 1}}));
    const FiniteDistribution prod = representation_to_distribution(id);
    CHECK(prod.atoms.size() == 9);
    const auto em2 = as_entropic_matroid(prod);
    REQUIRE(em2.matroid.has_value());
    CHECK(*em2.matroid == free_matroid(2));

    // U_{2,4} over F_3: nine atoms, rank min(|S|,2).
    const auto found = find_representation(uniform_matroid(2, 4), 3);
    REQUIRE(found.representation.has_value());
    const FiniteDistribution u24mu = representation_to_distribution(*found.representation);
    CHECK(u24mu.atoms.size() == 9);
    const auto em3 = as_entropic_matroid(u24mu);
    REQUIRE(em3.matroid.has_value());
    CHECK(*em3.matroid == uniform_matroid(2, 4));
}

TEST_CASE("found representations re-derive the matroid through the distribution") {
    for (const std::string& name : catalog_names()) {
        const RankTable M = catalog(name).matroid;
        if (M.m > 7) continue;
        for (const std::int64_t p : {2, 3}) {
            const auto res = find_representation(M, p);
            if (!res.representation) continue;
            const auto em = as_entropic_matroid(representation_to_distribution(*res.representation));
            REQUIRE(em.matroid.has_value());
            CHECK(*em.matroid == M);
        }
    }
}

TEST_CASE("parallel element reduction preserves representability") {
    // Rank-2 matroid on 4 elements where elements 2 and 3 are parallel:
    // columns (0,1),(1,0),(1,1),(1,1) over F_2.
    const FpMatrix A = make_fp_matrix(2, {{0, 1, 1, 1}, {1, 0, 1, 1}});
    const RankTable M = column_matroid(A);
    CHECK(M.r(0b1100) == 1);  // the parallel pair
    for (const std::int64_t p : {2, 3}) {
        const auto with = find_representation(M, p);
        const auto without = find_representation(restriction(M, 0b0111), p);
        CHECK(with.representation.has_value() == without.representation.has_value());
        if (without.representation) {
            // Extend per the construction g(X) = f(Y) and verify directly.
            Representation g = *without.representation;
            g.columns.push_back(g.columns[2]);
            CHECK(verify_representation(M, g).ok);
        }
    }
}

TEST_CASE("loops are assigned the zero vector") {
    // Matroid with a loop: column matroid of [0 1].
    const RankTable M = column_matroid(make_fp_matrix(2, {{0, 1}}));
    const auto found = find_representation(M, 2);
    REQUIRE(found.representation.has_value());
    CHECK(found.representation->columns[0] == std::vector<int>{0});
}

TEST_CASE("catalog representations exist for the line family") {
    for (const char* name : {"u23", "u24", "u26"}) {
        const CatalogEntry e = catalog(name);
        REQUIRE(e.representation.has_value());
        CHECK(verify_representation(e.matroid, representation_from_matrix(*e.representation)).ok);
    }
}
