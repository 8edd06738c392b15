#pragma once

// Almost affine codes and secret-sharing matrices, their induced matroids,
// and the conversions between codes and entropic-matroid distributions.

#include "entromat/distribution.hpp"
#include "entromat/rank_table.hpp"
#include "entromat/subset.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace entromat {

// Duplicate-free set of words in [s]^m, kept sorted by packed key.
struct AffineCode {
    int s = 2;
    int m = 0;
    std::vector<std::uint64_t> words;  // packed base-s, ascending

    std::vector<int> word(std::size_t i) const { return unpack_word(words[i], s, m); }
};

AffineCode make_code(int s, int m, const std::vector<std::vector<int>>& words);
AffineCode make_code_packed(int s, int m, std::vector<std::uint64_t> words);

// Lexicographically sorted text dump, one word per line, for diffing.
std::string code_text_dump(const AffineCode& c);

// Number of distinct projections of the code onto Y.
std::uint64_t projection_count(const AffineCode& c, SubsetMask y);

struct AlmostAffineResult {
    std::optional<RankTable> matroid;     // log_s of every projection count
    std::optional<SubsetMask> witness;    // first Y whose count is not a power of s
    std::optional<AxiomReport> axiom_failure;
};

AlmostAffineResult is_almost_affine(const AffineCode& c);

// Rows may repeat; rectangular.
struct SecretSharingMatrix {
    int s = 2;
    int m = 0;
    std::vector<std::vector<int>> rows;
};

SecretSharingMatrix make_secret_sharing_matrix(int s, const std::vector<std::vector<int>>& rows);

struct SecretSharingCheck {
    bool ok = false;
    // On failure, the first (e, Y) pair in scan order where the consistency
    // sets n(i,e,Y) are neither all of S nor all singletons, plus the first
    // row whose n-set has >= 2 symbols and (if the conflict is full-vs-
    // singleton) the first row with a singleton n-set.
    int e = -1;
    SubsetMask y = 0;
    int row_multi = -1;
    int row_singleton = -1;
};

// Exhaustive dichotomy check over all e, Y subset of E\{e}, rows.
SecretSharingCheck is_secret_sharing(const SecretSharingMatrix& A);

// Rows deduplicated into a code; duplicates never affect the induced
// matroid, so this is the normalization used before matroid induction.
AffineCode code_from_matrix(const SecretSharingMatrix& A);

// Uniform distribution on the codewords; requires |C| to be a power of s.
FiniteDistribution code_to_distribution(const AffineCode& c);

// Support of an entropic (integral-rank) distribution as a code; throws
// std::invalid_argument when the entropic rank is not integral.
AffineCode distribution_to_code(const FiniteDistribution& mu);

// The 729-word row-space code over F_3^2 with coordinate pairs (a,b) packed
// as 3a+b in [9]; induces the non-Pappus matroid.
AffineCode simonis_ashikhmin_code();

}  // namespace entromat
