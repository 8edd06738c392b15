#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entromat/catalog.hpp"
#include "entromat/errors.hpp"
#include "entromat/fp_linear.hpp"
#include "entromat/rank_table.hpp"

#include <algorithm>
#include <random>

using namespace entromat;

namespace {

// Independent brute-force check of r(A u B) + r(A n B) <= r(A) + r(B) over
// all pairs, used as the oracle for the axiom checker.
bool brute_force_submodular(const RankTable& M) {
    const SubsetMask full = M.ground();
    for (SubsetMask a = 0;; ++a) {
        for (SubsetMask b = 0;; ++b) {
            if (M.r(a | b) + M.r(a & b) > M.r(a) + M.r(b)) return false;
            if (b == full) break;
        }
        if (a == full) break;
    }
    return true;
}

RankTable random_binary_matroid(int m, std::mt19937& rng) {
    std::uniform_int_distribution<int> dim(1, m);
    const int d = dim(rng);
    std::uniform_int_distribution<int> bit(0, 1);
    std::vector<std::vector<int>> rows(d, std::vector<int>(m));
    for (auto& row : rows)
        for (int& v : row) v = bit(rng);
    return column_matroid(make_fp_matrix(2, rows));
}

}  // namespace

TEST_CASE("axiom checker accepts uniform matroids") {
    const AxiomReport rep = check_axioms(uniform_matroid(2, 4));
    CHECK(rep.valid);
}

TEST_CASE("axiom checker catches a normalization violation") {
    // r({1}) = 2 on a two-element ground set.
    const AxiomReport rep = check_axioms(2, {0, 1, 2, 2});
    CHECK(!rep.valid);
    CHECK(rep.violated == Axiom::normalization);
    CHECK(rep.witness_a == 0b10);
}

TEST_CASE("axiom checker catches the perturbed U24 table") {
    std::vector<int> table;
    const RankTable u24 = uniform_matroid(2, 4);
    for (auto v : u24.rank) table.push_back(v);
    table[0b1111] = 3;  // raise r(E)
    const AxiomReport rep = check_axioms(4, table);
    CHECK(!rep.valid);
    CHECK((rep.violated == Axiom::monotonicity || rep.violated == Axiom::submodularity));
    // The reported witness pair must actually violate the inequality.
    if (rep.violated == Axiom::submodularity) {
        const SubsetMask a = rep.witness_a, b = rep.witness_b;
        CHECK(table[a | b] + table[a & b] > table[a] + table[b]);
    }
    // And brute force agrees that the table is not submodular.
    RankTable bad;
    bad.m = 4;
    bad.rank.assign(table.begin(), table.end());
    CHECK(!brute_force_submodular(bad));
}

TEST_CASE("axiom checker rejects malformed tables") {
    const AxiomReport rep = check_axioms(2, {0, 1, 1});
    CHECK(!rep.valid);
    CHECK(rep.violated == Axiom::format);
    CHECK_THROWS_AS(make_matroid(2, {0, 1, 1}), FormatError);
}

TEST_CASE("bases of U24 are the six pairs") {
    const auto b = bases(uniform_matroid(2, 4));
    REQUIRE(b.size() == 6);
    for (SubsetMask s : b) CHECK(popcount(s) == 2);
    // Independent sets: empty, four singletons, six pairs, sorted by size.
    const auto ind = independent_sets(uniform_matroid(2, 4));
    REQUIRE(ind.size() == 11);
    CHECK(ind.front() == 0);
    CHECK(popcount(ind.back()) == 2);
}

TEST_CASE("free matroid has no circuits") {
    CHECK(circuits(free_matroid(3)).empty());
}

TEST_CASE("Fano has exactly seven 3-element circuits") {
    const RankTable fano = catalog("fano").matroid;
    const auto circ = circuits(fano);
    std::size_t lines = 0;
    for (SubsetMask s : circ)
        if (popcount(s) == 3) ++lines;
    CHECK(lines == 7);
    // Oracle: rank over F_2 of each 3-column subset of the defining matrix.
    const FpMatrix A = *catalog("fano").representation;
    std::size_t oracle = 0;
    for (SubsetMask s = 0; s < (SubsetMask{1} << 7); ++s) {
        if (popcount(s) != 3) continue;
        std::vector<std::vector<int>> rows(3);
        for (int r = 0; r < 3; ++r)
            for (int e : mask_elements(s)) rows[r].push_back(A.at(r, e));
        if (fp_rank(make_fp_matrix(2, rows)) == 2) ++oracle;
    }
    CHECK(oracle == lines);
}

TEST_CASE("restriction examples") {
    const RankTable u24 = uniform_matroid(2, 4);
    CHECK(restriction(u24, 0b0111) == uniform_matroid(2, 3));
    CHECK(restriction(u24, u24.ground()) == u24);
    // Restricting Fano to a line gives a rank-2 three-element matroid with
    // one circuit.
    const RankTable fano = catalog("fano").matroid;
    SubsetMask line = 0;
    for (SubsetMask s = 0;; ++s) {
        if (popcount(s) == 3 && fano.r(s) == 2) {
            line = s;
            break;
        }
        if (s == fano.ground()) break;
    }
    const RankTable restricted = restriction(fano, line);
    CHECK(restricted.rank_of_ground() == 2);
    CHECK(circuits(restricted).size() == 1);
}

TEST_CASE("contraction examples") {
    CHECK(contraction(uniform_matroid(2, 4), 0b0001) == uniform_matroid(1, 3));
    CHECK(contraction(uniform_matroid(2, 4), 0) == uniform_matroid(2, 4));
    CHECK(contraction(free_matroid(3), 0b001) == free_matroid(2));
    // Contracting a dependent set is a precondition error.
    RankTable loop = make_matroid(1, {0, 0});
    CHECK_THROWS_AS(contraction(loop, 0b1), std::invalid_argument);
}

TEST_CASE("dual examples") {
    CHECK(dual(uniform_matroid(2, 4)) == uniform_matroid(2, 4));
    CHECK(dual(free_matroid(3)) == uniform_matroid(0, 3));
    const RankTable fano = catalog("fano").matroid;
    const RankTable fano_dual = catalog("fano_dual").matroid;
    CHECK(dual(fano) == fano_dual);
    // Circuits of the dual are complements of the Fano lines.
    const auto lines = circuits(fano);
    const auto dual_circ = circuits(fano_dual);
    for (SubsetMask c : lines) {
        if (popcount(c) != 3) continue;
        const SubsetMask comp = fano.ground() & ~c;
        CHECK(std::find(dual_circ.begin(), dual_circ.end(), comp) != dual_circ.end());
    }
}

TEST_CASE("dual is an involution on the catalog") {
    for (const std::string& name : catalog_names()) {
        const RankTable M = catalog(name).matroid;
        CHECK(dual(dual(M)) == M);
        CHECK(check_axioms(dual(M)).valid);
        // Axiom closure under single-element minors.
        for (int e = 0; e < M.m; ++e) {
            const SubsetMask bit = SubsetMask{1} << e;
            CHECK(check_axioms(restriction(M, M.ground() & ~bit)).valid);
            if (M.r(bit) == 1) CHECK(check_axioms(contraction(M, bit)).valid);
        }
    }
}

TEST_CASE("basis complement duality on the catalog") {
    for (const std::string& name : catalog_names()) {
        const RankTable M = catalog(name).matroid;
        const RankTable Md = dual(M);
        const auto bm = bases(M);
        std::vector<SubsetMask> complements;
        for (SubsetMask b : bm) complements.push_back(M.ground() & ~b);
        std::sort(complements.begin(), complements.end());
        auto bd = bases(Md);
        std::sort(bd.begin(), bd.end());
        CHECK(complements == bd);
    }
}

TEST_CASE("minor search examples") {
    const RankTable u24 = uniform_matroid(2, 4);
    const RankTable u25 = uniform_matroid(2, 5);
    const auto w = has_minor(u25, u24);
    REQUIRE(w.has_value());
    CHECK(popcount(w->restrict_set) == 4);

    // Tutte: Fano is binary, so it has no U24 minor.
    CHECK(!has_minor(catalog("fano").matroid, u24).has_value());

    const auto self = has_minor(u24, u24);
    REQUIRE(self.has_value());
    CHECK(self->contract_set == 0);
}

TEST_CASE("minor search finds planted minors") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const RankTable M = random_binary_matroid(6, rng);
        // Plant a minor by a random contraction and deletion.
        std::uniform_int_distribution<int> pick(0, 5);
        const int c = pick(rng);
        int d = pick(rng);
        while (d == c) d = pick(rng);
        RankTable N = M;
        SubsetMask cbit = SubsetMask{1} << c;
        if (M.r(cbit) == 1) N = contraction(M, cbit);
        else N = restriction(M, M.ground() & ~cbit);
        const SubsetMask dbit_in_n = SubsetMask{1} << (d > c ? d - 1 : d);
        N = restriction(N, full_mask(N.m) & ~dbit_in_n);
        const auto witness = has_minor(M, N);
        REQUIRE(witness.has_value());
        // Re-derive the witness minor and check the claimed isomorphism.
        const RankTable minor = restriction(contraction(M, witness->contract_set),
                                            [&] {
                                                SubsetMask keep_reindexed = 0;
                                                const auto survivors = mask_elements(M.ground() & ~witness->contract_set);
                                                for (std::size_t i = 0; i < survivors.size(); ++i)
                                                    if (witness->restrict_set & (SubsetMask{1} << survivors[i]))
                                                        keep_reindexed |= SubsetMask{1} << i;
                                                return keep_reindexed;
                                            }());
        for (SubsetMask s = 0; s <= full_mask(N.m); ++s) {
            SubsetMask img = 0;
            for (int e : mask_elements(s)) img |= SubsetMask{1} << witness->element_map[e];
            CHECK(minor.r(img) == N.r(s));
        }
    }
}

TEST_CASE("restrict/contract commute on random binary matroids") {
    std::mt19937 rng(0);
    for (int trial = 0; trial < 50; ++trial) {
        const RankTable M = random_binary_matroid(6, rng);
        CHECK(check_axioms(M).valid);
        // Pick a single independent element i and a disjoint element j: both
        // orders of contracting i and deleting j agree after re-indexing.
        int i = -1;
        for (int e = 0; e < 6; ++e)
            if (M.r(SubsetMask{1} << e) == 1) {
                i = e;
                break;
            }
        if (i < 0) continue;
        const int j = (i + 1) % 6;
        const SubsetMask keep = M.ground() & ~(SubsetMask{1} << j);
        // contract then delete
        const RankTable a = contraction(M, SubsetMask{1} << i);
        const SubsetMask j_in_a = SubsetMask{1} << index_in_mask(M.ground() & ~(SubsetMask{1} << i), j);
        const RankTable ad = restriction(a, full_mask(a.m) & ~j_in_a);
        // delete then contract
        const RankTable b = restriction(M, keep);
        const SubsetMask i_in_b = SubsetMask{1} << index_in_mask(keep, i);
        const RankTable bc = contraction(b, i_in_b);
        CHECK(ad == bc);
    }
}

TEST_CASE("axiom closure under minors and duals on random matroids") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        const RankTable M = random_binary_matroid(5, rng);
        CHECK(check_axioms(dual(M)).valid);
        for (SubsetMask a = 0; a <= M.ground(); ++a) {
            CHECK(check_axioms(restriction(M, a)).valid);
            if (M.r(a) == popcount(a)) CHECK(check_axioms(contraction(M, a)).valid);
        }
    }
}

TEST_CASE("circuit expansion matches the uniform table") {
    // U_{2,3} has the single circuit {0,1,2}.
    CHECK(matroid_from_circuits(3, {{0, 1, 2}}) == uniform_matroid(2, 3));
    // Vamos: rank 4, five dependent pair-unions.
    const RankTable vamos = catalog("vamos").matroid;
    CHECK(vamos.rank_of_ground() == 4);
    int dependent_quads = 0;
    for (SubsetMask s = 0;; ++s) {
        if (popcount(s) == 4 && vamos.r(s) == 3) ++dependent_quads;
        if (s == vamos.ground()) break;
    }
    CHECK(dependent_quads == 5);
}

TEST_CASE("catalog sanity") {
    CHECK(catalog("u24").matroid == uniform_matroid(2, 4));
    CHECK(catalog("fano").matroid.rank_of_ground() == 3);
    CHECK(catalog("nonpappus").matroid.rank_of_ground() == 3);
    CHECK(catalog("nonpappus").matroid.m == 9);
    CHECK(nonpappus_lines().size() == 8);
    CHECK(catalog("u_3_6").matroid == uniform_matroid(3, 6));
    CHECK_THROWS_AS(catalog("nope"), std::invalid_argument);
    for (const std::string& name : catalog_names()) CHECK(check_axioms(catalog(name).matroid).valid);
}
