#pragma once

// Finite probability distributions on [q]^m with exact rational atom weights,
// Shannon entropy in base q, and the distribution-level minor operations
// (marginals and conditioning).
//
// Words are packed into 64-bit keys with variable e as the base-q digit of
// weight q^e (element 0 least significant).

#include "entromat/rank_table.hpp"
#include "entromat/rational.hpp"
#include "entromat/subset.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace entromat {

inline constexpr double kIntegralityTol = 1e-9;

struct FiniteDistribution {
    int q = 2;  // alphabet size >= 2
    int m = 0;  // variable count
    std::map<std::uint64_t, Rational> atoms;  // positive weights summing to 1
};

std::uint64_t pack_word(const std::vector<int>& word, int q);
std::vector<int> unpack_word(std::uint64_t key, int q, int m);

// Validates symbols, positivity and total mass; throws FormatError /
// std::invalid_argument.
FiniteDistribution make_distribution(int q, int m, std::map<std::uint64_t, Rational> atoms);

FiniteDistribution uniform_on_words(int q, int m, const std::vector<std::uint64_t>& support);
FiniteDistribution product_of_uniform(int q, int m);

struct EntropyValue {
    double value = 0.0;
    bool integral = false;  // within kIntegralityTol of an integer (exact for
                            // uniform-on-support distributions)
};

// Marginal on S, re-indexed to [|S|] in element order.
FiniteDistribution marginal(const FiniteDistribution& mu, SubsetMask s);

// Base-q entropy of mu.  When all atoms carry equal weight the integrality
// decision is exact: the support size is tested for being a power of q.
EntropyValue entropy(const FiniteDistribution& mu);

// H(S|T) = H(S u T) - H(T); S and T must be disjoint.
EntropyValue conditional_entropy(const FiniteDistribution& mu, SubsetMask s, SubsetMask t);

// H(mu_S) for every S; always a polymatroid up to tolerance.
std::vector<EntropyValue> entropic_rank(const FiniteDistribution& mu);

struct EntropicMatroidResult {
    std::optional<RankTable> matroid;
    std::optional<SubsetMask> non_integral_subset;  // first witness in mask order
    std::optional<AxiomReport> axiom_failure;       // rounded table failed axioms
};

EntropicMatroidResult as_entropic_matroid(const FiniteDistribution& mu, double tol = kIntegralityTol);

// Conditions on {X_i = x} and drops coordinate i; requires P(X_i = x) > 0.
FiniteDistribution condition_on_element(const FiniteDistribution& mu, int i, int x);

int hamming_distance(const std::vector<int>& x, const std::vector<int>& y);

// |B_r| = sum_{k<=r} C(n,k)(q-1)^k; exact, throws std::overflow_error if the
// count does not fit in 64 bits.
std::uint64_t hamming_ball_size(int q, int n, int radius);

}  // namespace entromat
