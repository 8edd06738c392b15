#pragma once

// The central decision procedure: is a matroid p-entropic?  Searches for a
// duplicate-free code C in [p]^m with |C| = p^{r(E)} whose projection counts
// are p^{r(Y)} for every Y; such a code exists iff M is p-entropic.

#include "entromat/affine_code.hpp"
#include "entromat/rank_table.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace entromat {

struct SearchOptions {
    std::uint64_t node_budget = 1'000'000'000;  // digit placements tried
    int threads = 1;                            // subtree splitting after the third word
    bool frontier_pruning = true;               // disable only to cross-check verdicts
};

enum class Verdict { entropic, not_entropic, timeout };

struct SearchReport {
    Verdict verdict = Verdict::timeout;
    std::optional<AffineCode> certificate;  // present iff entropic; re-verified
    std::uint64_t nodes = 0;
    int max_words = 0;  // deepest partial code reached
    std::string symmetry_trace;
};

const char* verdict_name(Verdict v);

// Exhaustive depth-first search over codewords in lexicographic order.
// Symmetry breaking: per-coordinate symbols are canonicalized to first appear
// in increasing order over the sorted code (this forces the first codeword to
// be all-zeros).  Pruning per partial code: |C_Y| <= p^{r(Y)} for every Y,
// every fiber of a projection stays within p^{r(E)-r(Y)}, fibers the
// lexicographic frontier has passed must be empty or exactly full, and the
// distinct counts still reachable must cover p^{r(Y)}.
//
// Caps: p >= 2 (not necessarily prime), m <= 12, p^{r(E)} <= 2^16, and the
// projection count table (p+1)^m must fit in memory.
SearchReport is_p_entropic(const RankTable& M, int p, const SearchOptions& opts = {});

// True iff the induced matroid of C equals M exactly (independent recount
// through the almost-affine path).
bool verify_entropic_certificate(const RankTable& M, const AffineCode& c);

struct MinorCertificate {
    int element = -1;
    bool contraction = false;  // false: single-element deletion
    bool ok = false;
    std::string detail;
};

struct MinorClosureReport {
    bool all_ok = false;
    std::vector<MinorCertificate> items;
};

// Given a code certifying M as p-entropic, derives certificates for every
// single-element deletion (marginal) and every rank-1 element contraction
// (conditioning on the element's value in the first codeword) and verifies
// each against the corresponding minor.
MinorClosureReport minor_closure_check(const RankTable& M, int p, const AffineCode& c);

}  // namespace entromat
