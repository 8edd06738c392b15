#pragma once

// Matroids on ground sets of size <= 20 as dense rank tables: entry at
// bitmask S is r(S).  All operations are pure; inputs are never mutated.

#include "entromat/subset.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace entromat {

struct RankTable {
    int m = 0;                        // ground set size
    std::vector<std::uint8_t> rank;   // 2^m entries, rank[S] = r(S)

    int r(SubsetMask s) const { return rank[s]; }
    SubsetMask ground() const { return full_mask(m); }
    int rank_of_ground() const { return rank[ground()]; }

    bool operator==(const RankTable& o) const = default;
};

enum class Axiom { none, format, normalization, monotonicity, submodularity };

struct AxiomReport {
    bool valid = false;
    Axiom violated = Axiom::none;
    SubsetMask witness_a = 0;   // for submodularity the pair (A, B); for the
    SubsetMask witness_b = 0;   // unary axioms witness_a is the offending set
    std::string message;
};

const char* axiom_name(Axiom a);

// Checks the three rank axioms on a candidate table.  Monotonicity is checked
// over covers S < S+e and submodularity over pairs (S+e, S+f), which implies
// the general forms; witnesses are reported in those shapes.
AxiomReport check_axioms(int m, const std::vector<int>& table);
AxiomReport check_axioms(const RankTable& M);

// Builds a RankTable after validating shape and axioms; throws FormatError on
// a malformed table and std::invalid_argument on an axiom violation.
RankTable make_matroid(int m, const std::vector<int>& table);

// Subsets S with r(S) = |S|, sorted by (popcount, numeric value).
std::vector<SubsetMask> independent_sets(const RankTable& M);
// Maximal independent sets, same order.
std::vector<SubsetMask> bases(const RankTable& M);
// Minimal dependent sets, same order.
std::vector<SubsetMask> circuits(const RankTable& M);

// M restricted to A; ground set re-indexed to the elements of A in order.
RankTable restriction(const RankTable& M, SubsetMask a);

// M contracted by an independent set A; throws std::invalid_argument if A is
// dependent.  Ground set is E \ A re-indexed in order.
RankTable contraction(const RankTable& M, SubsetMask a);

// r*(A) = r(E\A) + |A| - r(E).
RankTable dual(const RankTable& M);

// Rank table of the matroid with the given circuits (subsets are dependent
// iff they contain a circuit).  Validates axioms on the result.
RankTable matroid_from_circuits(int m, const std::vector<std::vector<int>>& circuits);

RankTable uniform_matroid(int k, int n);
RankTable free_matroid(int n);

// perm[i] = image of element i; returns a permutation with
// B.rank[S] == A.rank[perm(S)] for all S, if one exists.
std::optional<std::vector<int>> find_isomorphism(const RankTable& A, const RankTable& B);

struct MinorWitness {
    SubsetMask contract_set = 0;          // independent set contracted first
    SubsetMask restrict_set = 0;          // kept elements (subset of E \ contract_set)
    std::vector<int> element_map;         // element i of N -> element of the re-indexed minor
};

// Exhaustive search for an N-minor of M (|E(M)| <= 9).  Throws
// CapabilityError beyond the cap.
std::optional<MinorWitness> has_minor(const RankTable& M, const RankTable& N);

}  // namespace entromat
