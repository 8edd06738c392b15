#include "entromat/polar.hpp"

#include "entromat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entromat {

SourceModel make_source(FiniteDistribution mu) {
    if (mu.q != 2) throw std::invalid_argument("polar sources are binary (q = 2)");
    SourceModel src;
    src.m = mu.m;
    src.mu = std::move(mu);
    return src;
}

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::uint32_t transform_row(std::uint32_t row, int n) {
    if (n == 1) return row;
    const int half = n / 2;
    const std::uint32_t mask = (std::uint32_t{1} << half) - 1;
    const std::uint32_t a = row & mask;
    const std::uint32_t b = row >> half;
    return transform_row(a ^ b, half) | (transform_row(b, half) << half);
}

struct JointLaw {
    int m = 0;
    int n = 0;
    BigInt denom;                           // common denominator of the joint law
    std::vector<std::vector<BigInt>> prefix;  // prefix[i]: numerators of the law of Y^{i}

    const std::vector<BigInt>& joint() const { return prefix.back(); }
};

JointLaw build_joint(const SourceModel& src, int n) {
    if (!is_pow2(n)) throw std::invalid_argument("block length must be a power of 2");
    const int m = src.m;
    if (m * n > 20) throw CapabilityError("exact enumeration requires m*n <= 20");

    // Column law with a single common denominator.
    BigInt col_denom = 1;
    for (const auto& [key, w] : src.mu.atoms) col_denom = lcm(col_denom, BigInt(denominator(w)));
    std::vector<BigInt> col_num(std::size_t{1} << m, 0);
    for (const auto& [key, w] : src.mu.atoms)
        col_num[static_cast<std::size_t>(key)] = BigInt(numerator(w)) * (col_denom / BigInt(denominator(w)));

    JointLaw law;
    law.m = m;
    law.n = n;
    law.denom = int_pow(col_denom, static_cast<unsigned>(n));
    std::vector<BigInt> joint(std::size_t{1} << (m * n), 0);

    // Depth-first over columns, visiting only positive-probability columns.
    std::vector<std::size_t> col_support;
    for (std::size_t v = 0; v < col_num.size(); ++v)
        if (col_num[v] != 0) col_support.push_back(v);

    std::vector<std::size_t> stack_val(n);
    std::vector<BigInt> stack_w(n + 1);
    stack_w[0] = 1;
    std::vector<std::size_t> pos(n, 0);
    int depth = 0;
    while (depth >= 0) {
        if (depth == n) {
            // Complete x matrix: transform rows and deposit at the y key.
            std::uint64_t ykey = 0;
            for (int r = 0; r < m; ++r) {
                std::uint32_t row = 0;
                for (int c = 0; c < n; ++c) row |= static_cast<std::uint32_t>((stack_val[c] >> r) & 1) << c;
                const std::uint32_t yrow = transform_row(row, n);
                for (int c = 0; c < n; ++c) ykey |= static_cast<std::uint64_t>((yrow >> c) & 1) << (c * m + r);
            }
            joint[ykey] += stack_w[depth];
            --depth;
            continue;
        }
        if (pos[depth] == col_support.size()) {
            pos[depth] = 0;
            --depth;
            continue;
        }
        const std::size_t v = col_support[pos[depth]++];
        stack_val[depth] = v;
        stack_w[depth + 1] = stack_w[depth] * col_num[v];
        ++depth;
    }

    law.prefix.resize(n + 1);
    law.prefix[n] = std::move(joint);
    for (int i = n - 1; i >= 0; --i) {
        std::vector<BigInt> folded(std::size_t{1} << (m * i), 0);
        const auto& src_tab = law.prefix[i + 1];
        const std::size_t lowmask = (std::size_t{1} << (m * i)) - 1;
        for (std::size_t kk = 0; kk < src_tab.size(); ++kk)
            if (src_tab[kk] != 0) folded[kk & lowmask] += src_tab[kk];
        law.prefix[i] = std::move(folded);
    }
    return law;
}

// Base-2 entropy of a numerator table with common denominator.
double entropy_bits(const std::vector<BigInt>& num, const BigInt& denom) {
    const double d = to_double(denom);
    double acc = 0.0;
    for (const auto& v : num) {
        if (v == 0) continue;
        const double x = to_double(v);
        acc += x * std::log2(x);
    }
    double h = std::log2(d) - acc / d;
    if (h < 0 && h > -1e-12) h = 0;
    return h;
}

// Iterating the depth-first column walk is also how the codec enumerates all
// positive-probability inputs exactly.
struct ColumnWalk {
    std::vector<std::size_t> support;
    std::vector<BigInt> col_num;
    BigInt col_denom = 1;

    explicit ColumnWalk(const SourceModel& src) {
        for (const auto& [key, w] : src.mu.atoms) col_denom = lcm(col_denom, BigInt(denominator(w)));
        col_num.assign(std::size_t{1} << src.m, 0);
        for (const auto& [key, w] : src.mu.atoms)
            col_num[static_cast<std::size_t>(key)] = BigInt(numerator(w)) * (col_denom / BigInt(denominator(w)));
        for (std::size_t v = 0; v < col_num.size(); ++v)
            if (col_num[v] != 0) support.push_back(v);
    }
};

}  // namespace

double PolarProfile::integral_distance(int i, SubsetMask s) const {
    const double v = at(i, s);
    return std::abs(v - std::round(v));
}

double PolarProfile::index_distance(int i) const {
    double worst = 0.0;
    for (SubsetMask s = 1; s < (SubsetMask{1} << m); ++s) worst = std::max(worst, integral_distance(i, s));
    return worst;
}

BitMatrix kron_transform(const BitMatrix& x) {
    if (!is_pow2(x.n) || x.n > 32) throw std::invalid_argument("block length must be a power of 2 (<= 32)");
    BitMatrix y = x;
    for (int r = 0; r < x.m; ++r) y.rows[r] = transform_row(x.rows[r], x.n);
    return y;
}

PolarProfile exact_profile(const SourceModel& src, int n) {
    const JointLaw law = build_joint(src, n);
    const int m = src.m;
    PolarProfile prof;
    prof.m = m;
    prof.n = n;
    prof.h.assign(static_cast<std::size_t>(n) << m, 0.0);
    for (int i = 0; i < n; ++i) {
        const double h_past = entropy_bits(law.prefix[i], law.denom);
        const auto& tab = law.prefix[i + 1];
        const std::size_t pastbits = static_cast<std::size_t>(m) * i;
        const std::size_t pastmask = (std::size_t{1} << pastbits) - 1;
        for (SubsetMask s = 0; s < (SubsetMask{1} << m); ++s) {
            double h;
            if (s == 0) {
                h = 0.0;
            } else {
                std::vector<BigInt> folded(std::size_t{1} << (pastbits + popcount(s)), 0);
                for (std::size_t kk = 0; kk < tab.size(); ++kk) {
                    if (tab[kk] == 0) continue;
                    const std::uint32_t col = static_cast<std::uint32_t>(kk >> pastbits);
                    std::size_t packed = 0;
                    int outbit = 0;
                    for (int j = 0; j < m; ++j) {
                        if (!(s & (SubsetMask{1} << j))) continue;
                        packed |= static_cast<std::size_t>((col >> j) & 1) << outbit;
                        ++outbit;
                    }
                    folded[(packed << pastbits) | (kk & pastmask)] += tab[kk];
                }
                h = entropy_bits(folded, law.denom) - h_past;
                if (h < 0 && h > -1e-12) h = 0;
            }
            prof.h[(static_cast<std::size_t>(i) << m) + s] = h;
        }
    }
    return prof;
}

PolarSummary polarization_summary(const PolarProfile& profile, double eps) {
    PolarSummary out;
    std::size_t pairs = 0;
    for (int i = 0; i < profile.n; ++i) {
        for (SubsetMask s = 1; s < (SubsetMask{1} << profile.m); ++s) {
            out.mean_distance += profile.integral_distance(i, s);
            ++pairs;
        }
        if (profile.index_distance(i) > eps) ++out.non_polarized;
    }
    if (pairs) out.mean_distance /= static_cast<double>(pairs);
    return out;
}

CodecPlan build_codec_plan(const PolarProfile& profile, double delta) {
    CodecPlan plan;
    plan.m = profile.m;
    plan.n = profile.n;
    plan.delta = delta;
    plan.stored.resize(profile.n, 0);
    std::size_t bits = 0;
    for (int i = 0; i < profile.n; ++i) {
        SubsetMask b = 0;
        for (int j = 0; j < profile.m; ++j) {
            const double gain = profile.at(i, b | (SubsetMask{1} << j)) - profile.at(i, b);
            if (gain > delta) b |= SubsetMask{1} << j;
        }
        plan.stored[i] = b;
        bits += popcount(b);
    }
    plan.rate = static_cast<double>(bits) / (static_cast<double>(profile.n) * profile.m);
    return plan;
}

PolarCodec::PolarCodec(const SourceModel& src, int n, CodecPlan plan)
    : m_(src.m), n_(n), plan_(std::move(plan)) {
    if (plan_.m != m_ || plan_.n != n_) throw std::invalid_argument("plan does not match source/block length");
    JointLaw law = build_joint(src, n);
    denom_ = law.denom;
    prefix_ = std::move(law.prefix);
    const ColumnWalk walk(src);
    column_num_ = walk.col_num;
}

std::vector<std::uint8_t> PolarCodec::encode(const BitMatrix& x) const {
    if (x.m != m_ || x.n != n_) throw std::invalid_argument("input block has the wrong shape");
    const BitMatrix y = kron_transform(x);
    std::vector<std::uint8_t> bits;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < m_; ++j)
            if (plan_.stored[i] & (SubsetMask{1} << j)) bits.push_back(static_cast<std::uint8_t>(y.get(j, i)));
    return bits;
}

std::uint32_t PolarCodec::map_fill(int i, std::uint64_t past_key, std::uint32_t stored_bits) const {
    const SubsetMask b = plan_.stored[i];
    std::uint32_t base = 0;
    {
        int in = 0;
        for (int j = 0; j < m_; ++j)
            if (b & (SubsetMask{1} << j)) base |= ((stored_bits >> in++) & 1u) << j;
    }
    std::vector<int> free;
    for (int j = 0; j < m_; ++j)
        if (!(b & (SubsetMask{1} << j))) free.push_back(j);
    const auto& tab = prefix_[i + 1];
    const std::size_t pastbits = static_cast<std::size_t>(m_) * i;
    std::uint32_t best_col = base;
    const BigInt* best = nullptr;
    for (std::uint32_t u = 0; u < (std::uint32_t{1} << free.size()); ++u) {
        std::uint32_t col = base;
        for (std::size_t t = 0; t < free.size(); ++t) col |= ((u >> t) & 1u) << free[t];
        const BigInt& v = tab[(static_cast<std::size_t>(col) << pastbits) | past_key];
        if (best == nullptr || v > *best) {  // strict: ties keep the earlier (toward-0) fill
            best = &v;
            best_col = col;
        }
    }
    return best_col;
}

BitMatrix PolarCodec::decode(const std::vector<std::uint8_t>& stored) const {
    BitMatrix y;
    y.m = m_;
    y.n = n_;
    y.rows.assign(m_, 0);
    std::size_t cursor = 0;
    std::uint64_t past_key = 0;
    for (int i = 0; i < n_; ++i) {
        std::uint32_t stored_bits = 0;
        const int nb = popcount(plan_.stored[i]);
        for (int t = 0; t < nb; ++t) {
            if (cursor >= stored.size()) throw std::invalid_argument("stored bit stream too short");
            stored_bits |= static_cast<std::uint32_t>(stored[cursor++] & 1) << t;
        }
        const std::uint32_t col = map_fill(i, past_key, stored_bits);
        for (int j = 0; j < m_; ++j)
            if ((col >> j) & 1) y.rows[j] |= std::uint32_t{1} << i;
        past_key |= static_cast<std::uint64_t>(col) << (static_cast<std::size_t>(m_) * i);
    }
    return kron_transform(y);  // involution
}

Rational PolarCodec::exact_block_error() const {
    // Walk every positive-probability input exactly once.
    std::vector<std::size_t> support;
    for (std::size_t v = 0; v < column_num_.size(); ++v)
        if (column_num_[v] != 0) support.push_back(v);

    BigInt bad = 0;
    std::vector<std::size_t> stack_val(n_);
    std::vector<BigInt> stack_w(n_ + 1);
    stack_w[0] = 1;
    std::vector<std::size_t> pos(n_, 0);
    int depth = 0;
    while (depth >= 0) {
        if (depth == n_) {
            BitMatrix x;
            x.m = m_;
            x.n = n_;
            x.rows.assign(m_, 0);
            for (int c = 0; c < n_; ++c)
                for (int r = 0; r < m_; ++r)
                    if ((stack_val[c] >> r) & 1) x.rows[r] |= std::uint32_t{1} << c;
            if (!(decode(encode(x)) == x)) bad += stack_w[depth];
            --depth;
            continue;
        }
        if (pos[depth] == support.size()) {
            pos[depth] = 0;
            --depth;
            continue;
        }
        stack_val[depth] = support[pos[depth]++];
        stack_w[depth + 1] = stack_w[depth] * column_num_[stack_val[depth]];
        ++depth;
    }
    return Rational(bad, denom_);
}

}  // namespace entromat
