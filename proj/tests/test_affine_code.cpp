#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entromat/affine_code.hpp"
#include "entromat/catalog.hpp"
#include "entromat/errors.hpp"

#include <random>
#include <set>

using namespace entromat;

namespace {

AffineCode full_space(int s, int m) {
    std::vector<std::uint64_t> words;
    std::uint64_t count = 1;
    for (int e = 0; e < m; ++e) count *= s;
    for (std::uint64_t w = 0; w < count; ++w) words.push_back(w);
    return make_code_packed(s, m, std::move(words));
}

SecretSharingMatrix rows_of(const AffineCode& c) {
    std::vector<std::vector<int>> rows;
    for (std::size_t i = 0; i < c.words.size(); ++i) rows.push_back(c.word(i));
    return make_secret_sharing_matrix(c.s, rows);
}

AffineCode random_affine_code(std::mt19937& rng, int s, int m) {
    std::uniform_int_distribution<int> pick_d(0, m);
    std::uniform_int_distribution<int> sym(0, s - 1);
    const int d = pick_d(rng);
    std::vector<std::vector<int>> gen(d, std::vector<int>(m));
    for (auto& row : gen)
        for (int& v : row) v = sym(rng);
    std::vector<int> shift(m);
    for (int& v : shift) v = sym(rng);
    std::set<std::uint64_t> words;
    std::vector<int> y(d, 0);
    for (;;) {
        std::vector<int> w = shift;
        for (int i = 0; i < d; ++i)
            for (int e = 0; e < m; ++e) w[e] = (w[e] + y[i] * gen[i][e]) % s;
        words.insert(pack_word(w, s));
        int i = d - 1;
        while (i >= 0 && y[i] == s - 1) y[i--] = 0;
        if (i < 0) break;
        ++y[i];
    }
    return make_code_packed(s, m, {words.begin(), words.end()});
}

}  // namespace

TEST_CASE("projection counts") {
    CHECK(projection_count(full_space(2, 3), 0b011) == 4);
    const AffineCode rep = make_code(2, 3, {{0, 0, 0}, {1, 1, 1}});
    CHECK(projection_count(rep, 0b101) == 2);
    const AffineCode sa = simonis_ashikhmin_code();
    for (int e = 0; e < 9; ++e) CHECK(projection_count(sa, SubsetMask{1} << e) == 9);
}

TEST_CASE("almost affine detection") {
    // F_2 row space of [1 0 1; 0 1 1]: induces U_{2,3}.
    const AffineCode rs = make_code(2, 3, {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 0}});
    const auto res = is_almost_affine(rs);
    REQUIRE(res.matroid.has_value());
    CHECK(*res.matroid == uniform_matroid(2, 3));

    const AffineCode bad = make_code(2, 2, {{0, 0}, {0, 1}, {1, 0}});
    const auto r2 = is_almost_affine(bad);
    CHECK(!r2.matroid.has_value());
    REQUIRE(r2.witness.has_value());
    CHECK(*r2.witness == 0b11);  // count 3 is not a power of 2
}

TEST_CASE("simonis-ashikhmin code induces the non-Pappus matroid") {
    const AffineCode sa = simonis_ashikhmin_code();
    CHECK(sa.words.size() == 729);
    CHECK(sa.words.front() == 0);  // row space contains the zero word
    const auto res = is_almost_affine(sa);
    REQUIRE(res.matroid.has_value());
    CHECK(*res.matroid == catalog("nonpappus").matroid);
    int lines = 0;
    for (SubsetMask s = 0;; ++s) {
        const int expect = std::min(popcount(s), 3);
        if (res.matroid->r(s) != expect) {
            CHECK(popcount(s) == 3);
            CHECK(res.matroid->r(s) == 2);
            ++lines;
        }
        if (s == res.matroid->ground()) break;
    }
    CHECK(lines == 8);
}

TEST_CASE("secret sharing dichotomy") {
    CHECK(is_secret_sharing(rows_of(full_space(2, 2))).ok);

    const SecretSharingMatrix bad = make_secret_sharing_matrix(2, {{0, 0}, {0, 1}, {1, 0}});
    const auto res = is_secret_sharing(bad);
    CHECK(!res.ok);
    // First conflict in scan order: secret position e = 0, knowing Y = {1}.
    // Value 0 there leaves both symbols possible (rows 00 and 10) while
    // value 1 pins the symbol (row 01).
    CHECK(res.e == 0);
    CHECK(res.y == 0b10);
    CHECK(res.row_multi == 0);
    CHECK(res.row_singleton == 1);
    // The witness really conflicts: recompute the two n-sets by hand.
    CHECK(bad.rows[res.row_multi][1] != bad.rows[res.row_singleton][1]);

    CHECK(is_secret_sharing(rows_of(simonis_ashikhmin_code())).ok);
}

TEST_CASE("code/distribution round trips") {
    const AffineCode pair = make_code(2, 3, {{0, 0, 0}, {1, 1, 1}});
    const FiniteDistribution mu = code_to_distribution(pair);
    const auto em = as_entropic_matroid(mu);
    REQUIRE(em.matroid.has_value());
    CHECK(em.matroid->r(0b001) == 1);
    CHECK(em.matroid->r(0b011) == 1);
    CHECK(em.matroid->r(0b111) == 1);
    const AffineCode back = distribution_to_code(mu);
    CHECK(back.words == pair.words);

    CHECK_THROWS_AS(code_to_distribution(make_code(2, 2, {{0, 0}, {0, 1}, {1, 0}})), std::invalid_argument);

    std::map<std::uint64_t, Rational> atoms;
    atoms[0] = Rational(3, 4);
    atoms[1] = Rational(1, 4);
    CHECK_THROWS_AS(distribution_to_code(make_distribution(2, 1, std::move(atoms))), std::invalid_argument);
}

TEST_CASE("random affine codes: round trip and lemma agreement") {
    std::mt19937 rng(0);
    for (int trial = 0; trial < 200; ++trial) {
        const int s = 2 + (trial % 2);
        const int m = 1 + (trial % 5);
        const AffineCode c = random_affine_code(rng, s, m);
        const auto res = is_almost_affine(c);
        REQUIRE(res.matroid.has_value());
        const AffineCode back = distribution_to_code(code_to_distribution(c));
        CHECK(back.words == c.words);
        CHECK(is_secret_sharing(rows_of(c)).ok);

        // Equal fiber sizes over every projection.
        for (SubsetMask y = 0; y <= full_mask(m); ++y) {
            const std::uint64_t distinct = projection_count(c, y);
            CHECK(c.words.size() % distinct == 0);
        }
    }
}

TEST_CASE("almost affine iff secret sharing on random codes") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 300; ++trial) {
        const int s = 2 + (trial % 2);
        const int m = 1 + (trial % 5);
        // Random duplicate-free code of random size: agreement must hold on
        // both positive and negative instances.
        std::uint64_t space = 1;
        for (int e = 0; e < m; ++e) space *= s;
        std::uniform_int_distribution<std::uint64_t> word(0, space - 1);
        std::set<std::uint64_t> words;
        const std::size_t target = 1 + word(rng) % space;
        while (words.size() < target) words.insert(word(rng));
        const AffineCode c = make_code_packed(s, m, {words.begin(), words.end()});
        const bool affine = is_almost_affine(c).matroid.has_value();
        const bool sharing = is_secret_sharing(rows_of(c)).ok;
        CHECK(affine == sharing);
    }
}

TEST_CASE("code text dump is sorted and stable") {
    const AffineCode c = make_code(3, 2, {{2, 1}, {0, 0}, {1, 2}});
    CHECK(code_text_dump(c) == "0 0\n1 2\n2 1\n");
}

TEST_CASE("duplicate rows are normalized away before induction") {
    const SecretSharingMatrix A = make_secret_sharing_matrix(2, {{0, 0}, {1, 1}, {0, 0}, {1, 1}});
    const AffineCode c = code_from_matrix(A);
    CHECK(c.words.size() == 2);
    CHECK(is_almost_affine(c).matroid.has_value());
}

TEST_CASE("code validation") {
    CHECK_THROWS_AS(make_code(2, 2, {{0, 0}, {0, 0}}), FormatError);
    CHECK_THROWS_AS(make_code(2, 2, {{0, 2}}), FormatError);
    CHECK_THROWS_AS(make_code(2, 2, std::vector<std::vector<int>>{}), FormatError);
}
