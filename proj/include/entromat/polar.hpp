#pragma once

// Exact desk-scale polarization: the Kronecker-power transform over F_2,
// conditional-entropy profiles H(Y_i[S]|Y^{i-1}) of i.i.d. column sources,
// and a store-a-basis compression codec with exactly computable block error.

#include "entromat/distribution.hpp"
#include "entromat/rational.hpp"
#include "entromat/subset.hpp"

#include <cstdint>
#include <vector>

namespace entromat {

// i.i.d. columns with distribution mu on [2]^m.
struct SourceModel {
    int m = 1;
    FiniteDistribution mu;
};

SourceModel make_source(FiniteDistribution mu);

// m rows ("variables") by n columns ("time"); bit c of rows[r] is entry
// (r, c).  n <= 32.
struct BitMatrix {
    int m = 0;
    int n = 0;
    std::vector<std::uint32_t> rows;

    int get(int r, int c) const { return (rows[r] >> c) & 1; }
    bool operator==(const BitMatrix& o) const = default;
};

// Y = X * G_n over F_2 with G_n the log2(n)-fold Kronecker power of
// [[1,0],[1,1]]; n must be a power of 2.  The transform is an involution.
BitMatrix kron_transform(const BitMatrix& x);

struct PolarProfile {
    int m = 0;
    int n = 0;
    std::vector<double> h;  // h[i * 2^m + S] = H(Y_i[S] | Y^{i-1}) in base 2

    double at(int i, SubsetMask s) const { return h[(static_cast<std::size_t>(i) << m) + s]; }
    // Distance of H(Y_i[S]|Y^{i-1}) to the nearest integer.
    double integral_distance(int i, SubsetMask s) const;
    // Largest such distance over the subsets at index i.
    double index_distance(int i) const;
};

// Exact joint law by enumerating all 2^{mn} inputs; cap m*n <= 20.
PolarProfile exact_profile(const SourceModel& src, int n);

struct PolarSummary {
    int non_polarized = 0;       // indices with some S farther than eps from every integer
    double mean_distance = 0.0;  // mean distance-to-nearest-integer over (i, S != {})
};

PolarSummary polarization_summary(const PolarProfile& profile, double eps);

struct CodecPlan {
    int m = 0;
    int n = 0;
    double delta = 0.0;
    std::vector<SubsetMask> stored;  // B_i per index
    double rate = 0.0;               // sum |B_i| / (n*m)
};

// Greedy per index: add component j to B_i when H(Y_i[{j}] | Y^{i-1},
// Y_i[B_i]) > delta; everything else is declared recoverable.
CodecPlan build_codec_plan(const PolarProfile& profile, double delta);

// Deterministic encoder/decoder for a fixed source and plan.  Decoding is
// exact maximum-a-posteriori per index given the decoded past and the stored
// components, ties broken toward 0.
class PolarCodec {
public:
    PolarCodec(const SourceModel& src, int n, CodecPlan plan);

    const CodecPlan& plan() const { return plan_; }

    std::vector<std::uint8_t> encode(const BitMatrix& x) const;  // stored bits Y_i[B_i]
    BitMatrix decode(const std::vector<std::uint8_t>& stored) const;

    // P(decode(encode(X)) != X), exactly, by enumerating every input.
    Rational exact_block_error() const;

private:
    int m_;
    int n_;
    CodecPlan plan_;
    BigInt denom_;
    std::vector<std::vector<BigInt>> prefix_;  // prefix_[i]: law of Y^{i} (first i columns), i = 0..n
    std::vector<BigInt> column_num_;           // source column numerators over denom column base

    std::uint32_t map_fill(int i, std::uint64_t past_key, std::uint32_t stored_bits) const;
};

}  // namespace entromat
