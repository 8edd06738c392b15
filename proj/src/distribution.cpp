#include "entromat/distribution.hpp"

#include "entromat/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace entromat {

std::uint64_t pack_word(const std::vector<int>& word, int q) {
    std::uint64_t key = 0;
    for (std::size_t e = word.size(); e-- > 0;) {
        if (word[e] < 0 || word[e] >= q) throw FormatError("symbol out of [0,q)");
        key = key * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(word[e]);
    }
    return key;
}

std::vector<int> unpack_word(std::uint64_t key, int q, int m) {
    std::vector<int> word(m);
    for (int e = 0; e < m; ++e) {
        word[e] = static_cast<int>(key % static_cast<std::uint64_t>(q));
        key /= static_cast<std::uint64_t>(q);
    }
    return word;
}

FiniteDistribution make_distribution(int q, int m, std::map<std::uint64_t, Rational> atoms) {
    if (q < 2) throw FormatError("alphabet size must be >= 2");
    if (m < 0 || m > kMaxGroundSet) throw FormatError("variable count out of range [0,20]");
    // q^m may overflow 64 bits for large q,m; bound keys digit-wise instead.
    Rational total = 0;
    for (const auto& [key, w] : atoms) {
        if (w <= 0) throw std::invalid_argument("atom weights must be positive");
        std::uint64_t k = key;
        for (int e = 0; e < m; ++e) k /= static_cast<std::uint64_t>(q);
        if (k != 0) throw FormatError("atom word has a symbol out of range");
        total += w;
    }
    if (total != 1) throw std::invalid_argument("atom weights must sum to exactly 1");
    FiniteDistribution mu;
    mu.q = q;
    mu.m = m;
    mu.atoms = std::move(atoms);
    return mu;
}

FiniteDistribution uniform_on_words(int q, int m, const std::vector<std::uint64_t>& support) {
    if (support.empty()) throw std::invalid_argument("empty support");
    std::map<std::uint64_t, Rational> atoms;
    const Rational w(1, BigInt(support.size()));
    for (std::uint64_t key : support) {
        if (atoms.count(key)) throw std::invalid_argument("duplicate word in support");
        atoms[key] = w;
    }
    return make_distribution(q, m, std::move(atoms));
}

FiniteDistribution product_of_uniform(int q, int m) {
    std::vector<std::uint64_t> all;
    std::uint64_t count = 1;
    for (int e = 0; e < m; ++e) count *= static_cast<std::uint64_t>(q);
    all.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) all.push_back(k);
    return uniform_on_words(q, m, all);
}

namespace {

// Projects a packed word onto mask s, re-packing the kept digits densely.
std::uint64_t project_key(std::uint64_t key, int q, int m, SubsetMask s) {
    std::uint64_t out = 0;
    std::uint64_t weight = 1;
    for (int e = 0; e < m; ++e) {
        const std::uint64_t digit = key % static_cast<std::uint64_t>(q);
        key /= static_cast<std::uint64_t>(q);
        if (s & (SubsetMask{1} << e)) {
            out += digit * weight;
            weight *= static_cast<std::uint64_t>(q);
        }
    }
    return out;
}

std::map<std::uint64_t, Rational> project_atoms(const FiniteDistribution& mu, SubsetMask s) {
    std::map<std::uint64_t, Rational> out;
    for (const auto& [key, w] : mu.atoms) out[project_key(key, mu.q, mu.m, s)] += w;
    return out;
}

EntropyValue entropy_of_atoms(const std::map<std::uint64_t, Rational>& atoms, int q) {
    EntropyValue out;
    bool all_equal = true;
    const Rational& first = atoms.begin()->second;
    for (const auto& [key, w] : atoms)
        if (w != first) {
            all_equal = false;
            break;
        }
    if (all_equal) {
        const int k = exact_log(atoms.size(), static_cast<std::uint64_t>(q));
        if (k >= 0) {
            out.value = k;
            out.integral = true;
            return out;
        }
    }
    const double logq = std::log(static_cast<double>(q));
    double h = 0.0;
    for (const auto& [key, w] : atoms) {
        const double p = to_double(w);
        h -= p * std::log(p);
    }
    out.value = h / logq;
    if (out.value < 0 && out.value > -1e-12) out.value = 0;  // clamp -0 noise
    out.integral = std::abs(out.value - std::round(out.value)) < kIntegralityTol;
    return out;
}

}  // namespace

FiniteDistribution marginal(const FiniteDistribution& mu, SubsetMask s) {
    if (!is_subset(s, full_mask(mu.m))) throw std::invalid_argument("marginal set outside [m]");
    FiniteDistribution out;
    out.q = mu.q;
    out.m = popcount(s);
    out.atoms = project_atoms(mu, s);
    return out;
}

EntropyValue entropy(const FiniteDistribution& mu) { return entropy_of_atoms(mu.atoms, mu.q); }

EntropyValue conditional_entropy(const FiniteDistribution& mu, SubsetMask s, SubsetMask t) {
    if (s & t) throw std::invalid_argument("conditional entropy requires disjoint subsets");
    const EntropyValue joint = entropy_of_atoms(project_atoms(mu, s | t), mu.q);
    if (t == 0) return joint;
    const EntropyValue ht = entropy_of_atoms(project_atoms(mu, t), mu.q);
    EntropyValue out;
    out.value = joint.value - ht.value;
    if (out.value < 0 && out.value > -1e-12) out.value = 0;
    out.integral = std::abs(out.value - std::round(out.value)) < kIntegralityTol;
    return out;
}

std::vector<EntropyValue> entropic_rank(const FiniteDistribution& mu) {
    std::vector<EntropyValue> out(std::size_t{1} << mu.m);
    const SubsetMask full = full_mask(mu.m);
    for (SubsetMask s = 0;; ++s) {
        out[s] = entropy_of_atoms(project_atoms(mu, s), mu.q);
        if (s == full) break;
    }
    return out;
}

EntropicMatroidResult as_entropic_matroid(const FiniteDistribution& mu, double tol) {
    EntropicMatroidResult res;
    std::vector<int> table(std::size_t{1} << mu.m, 0);
    const SubsetMask full = full_mask(mu.m);
    for (SubsetMask s = 0;; ++s) {
        const auto atoms = project_atoms(mu, s);
        const EntropyValue h = entropy_of_atoms(atoms, mu.q);
        const bool ok = h.integral || std::abs(h.value - std::round(h.value)) < tol;
        if (!ok) {
            res.non_integral_subset = s;
            return res;
        }
        table[s] = static_cast<int>(std::llround(h.value));
        if (s == full) break;
    }
    AxiomReport rep = check_axioms(mu.m, table);
    if (!rep.valid) {
        res.axiom_failure = rep;
        return res;
    }
    RankTable M;
    M.m = mu.m;
    M.rank.assign(table.begin(), table.end());
    res.matroid = std::move(M);
    return res;
}

FiniteDistribution condition_on_element(const FiniteDistribution& mu, int i, int x) {
    if (i < 0 || i >= mu.m) throw std::invalid_argument("element out of range");
    if (x < 0 || x >= mu.q) throw std::invalid_argument("symbol out of range");
    std::uint64_t low = 1;
    for (int e = 0; e < i; ++e) low *= static_cast<std::uint64_t>(mu.q);
    std::map<std::uint64_t, Rational> kept;
    Rational mass = 0;
    for (const auto& [key, w] : mu.atoms) {
        if ((key / low) % static_cast<std::uint64_t>(mu.q) != static_cast<std::uint64_t>(x)) continue;
        // Drop digit i: keep lower digits, shift the rest down one place.
        const std::uint64_t lower = key % low;
        const std::uint64_t upper = key / (low * static_cast<std::uint64_t>(mu.q));
        kept[lower + upper * low] += w;
        mass += w;
    }
    if (mass == 0) throw std::invalid_argument("conditioning event has probability zero");
    for (auto& [key, w] : kept) w /= mass;
    FiniteDistribution out;
    out.q = mu.q;
    out.m = mu.m - 1;
    out.atoms = std::move(kept);
    return out;
}

int hamming_distance(const std::vector<int>& x, const std::vector<int>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != y[i];
    return d;
}

std::uint64_t hamming_ball_size(int q, int n, int radius) {
    if (q < 2 || n < 0 || radius < 0 || radius > n) throw std::invalid_argument("bad Hamming ball parameters");
    BigInt total = 0;
    BigInt binom = 1;  // C(n,0)
    BigInt pow_q1 = 1;
    for (int k = 0; k <= radius; ++k) {
        total += binom * pow_q1;
        binom = binom * (n - k) / (k + 1);
        pow_q1 *= q - 1;
    }
    if (total > BigInt(std::numeric_limits<std::uint64_t>::max())) throw std::overflow_error("ball size exceeds 64 bits");
    return total.convert_to<std::uint64_t>();
}

}  // namespace entromat
