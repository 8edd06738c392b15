#pragma once

// Linear algebra over prime fields F_p: exact rank, representation
// verification, and exhaustive search for representations of small matroids.

#include "entromat/rank_table.hpp"
#include "entromat/subset.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace entromat {

struct FiniteDistribution;  // distribution.hpp

bool is_prime(std::int64_t p);  // trial division, p <= 10^6

struct FpMatrix {
    std::int64_t p = 2;
    int rows = 0;
    int cols = 0;
    std::vector<int> a;  // row-major, entries in [0,p)

    int& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    int at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

FpMatrix make_fp_matrix(std::int64_t p, const std::vector<std::vector<int>>& rows);

// Rank by Gaussian elimination over F_p; exact.
int fp_rank(const FpMatrix& A);

// One column vector in F_p^d per matroid element.
struct Representation {
    std::int64_t p = 2;
    int d = 0;
    std::vector<std::vector<int>> columns;
};

// Column matroid of A: r(S) = rank of the columns indexed by S.
RankTable column_matroid(const FpMatrix& A);

Representation representation_from_matrix(const FpMatrix& A);
FpMatrix representation_matrix(const Representation& R);

struct RepresentationCheck {
    bool ok = false;
    SubsetMask witness = 0;  // first subset whose column rank mismatches r_M
};

RepresentationCheck verify_representation(const RankTable& M, const Representation& R);

struct RepresentationSearchResult {
    std::optional<Representation> representation;  // verified when present
    std::uint64_t nodes = 0;                       // candidate vector placements tried
};

// Backtracking search for an F_p-representation of M in ambient dimension
// r_M(E).  An M-basis is pinned to the standard basis; the remaining elements
// range over projective representatives (first nonzero coordinate 1), loops
// over the zero vector.  Exhaustion (nodes reported) proves non-existence.
// Caps: m <= 9, p in {2,3,5,7}.
RepresentationSearchResult find_representation(const RankTable& M, std::int64_t p);

// Lemma-style construction: X = A * Y with Y uniform on F_p^d gives a
// distribution whose entropic rank is the column matroid of A.
FiniteDistribution representation_to_distribution(const Representation& R);

}  // namespace entromat
