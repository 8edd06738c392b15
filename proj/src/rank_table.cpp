#include "entromat/rank_table.hpp"

#include "entromat/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace entromat {

const char* axiom_name(Axiom a) {
    switch (a) {
        case Axiom::none: return "none";
        case Axiom::format: return "format";
        case Axiom::normalization: return "normalization";
        case Axiom::monotonicity: return "monotonicity";
        case Axiom::submodularity: return "submodularity";
    }
    return "?";
}

static std::string mask_str(SubsetMask s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int e : mask_elements(s)) {
        if (!first) os << ',';
        os << e;
        first = false;
    }
    os << '}';
    return os.str();
}

AxiomReport check_axioms(int m, const std::vector<int>& table) {
    AxiomReport rep;
    if (m < 0 || m > kMaxGroundSet) {
        rep.violated = Axiom::format;
        rep.message = "ground set size out of range [0,20]";
        return rep;
    }
    const std::size_t want = std::size_t{1} << m;
    if (table.size() != want) {
        rep.violated = Axiom::format;
        rep.message = "table has " + std::to_string(table.size()) + " entries, expected 2^m = " +
                      std::to_string(want);
        return rep;
    }
    for (std::size_t s = 0; s < want; ++s) {
        if (table[s] < 0) {
            rep.violated = Axiom::format;
            rep.witness_a = static_cast<SubsetMask>(s);
            rep.message = "negative rank at " + mask_str(rep.witness_a);
            return rep;
        }
    }
    const SubsetMask full = full_mask(m);
    // r({}) = 0 follows: normalization forces r({}) <= 0, format forces >= 0.
    for (SubsetMask s = 0;; ++s) {
        if (table[s] > popcount(s)) {
            rep.violated = Axiom::normalization;
            rep.witness_a = s;
            rep.message = "r" + mask_str(s) + " = " + std::to_string(table[s]) + " > |S| = " +
                          std::to_string(popcount(s));
            return rep;
        }
        if (s == full) break;
    }
    if (m == 0) {
        rep.valid = true;
        return rep;
    }
    // Monotonicity over covers S < S+e implies the general form by chaining.
    for (SubsetMask s = 0; s <= full; ++s) {
        for (int e = 0; e < m; ++e) {
            if (s & (SubsetMask{1} << e)) continue;
            const SubsetMask t = s | (SubsetMask{1} << e);
            if (table[s] > table[t]) {
                rep.violated = Axiom::monotonicity;
                rep.witness_a = s;
                rep.witness_b = t;
                rep.message = "r" + mask_str(s) + " = " + std::to_string(table[s]) + " > r" +
                              mask_str(t) + " = " + std::to_string(table[t]);
                return rep;
            }
        }
        if (s == full) break;
    }
    // Local submodularity r(S+e) + r(S+f) >= r(S+e+f) + r(S) is equivalent to
    // the pairwise axiom for monotone functions.
    for (SubsetMask s = 0; s <= full; ++s) {
        for (int e = 0; e < m; ++e) {
            if (s & (SubsetMask{1} << e)) continue;
            for (int f = e + 1; f < m; ++f) {
                if (s & (SubsetMask{1} << f)) continue;
                const SubsetMask a = s | (SubsetMask{1} << e);
                const SubsetMask b = s | (SubsetMask{1} << f);
                if (table[a] + table[b] < table[a | b] + table[s]) {
                    rep.violated = Axiom::submodularity;
                    rep.witness_a = a;
                    rep.witness_b = b;
                    rep.message = "r" + mask_str(a) + " + r" + mask_str(b) + " < r" +
                                  mask_str(a | b) + " + r" + mask_str(s);
                    return rep;
                }
            }
        }
        if (s == full) break;
    }
    rep.valid = true;
    return rep;
}

AxiomReport check_axioms(const RankTable& M) {
    std::vector<int> t(M.rank.begin(), M.rank.end());
    return check_axioms(M.m, t);
}

RankTable make_matroid(int m, const std::vector<int>& table) {
    AxiomReport rep = check_axioms(m, table);
    if (rep.violated == Axiom::format) throw FormatError(rep.message);
    if (!rep.valid) throw std::invalid_argument(std::string(axiom_name(rep.violated)) + " violated: " + rep.message);
    RankTable M;
    M.m = m;
    M.rank.assign(table.begin(), table.end());
    return M;
}

static void sort_by_size_then_value(std::vector<SubsetMask>& v) {
    std::sort(v.begin(), v.end(), [](SubsetMask a, SubsetMask b) {
        const int pa = popcount(a), pb = popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
}

std::vector<SubsetMask> independent_sets(const RankTable& M) {
    std::vector<SubsetMask> out;
    const SubsetMask full = M.ground();
    for (SubsetMask s = 0;; ++s) {
        if (M.r(s) == popcount(s)) out.push_back(s);
        if (s == full) break;
    }
    sort_by_size_then_value(out);
    return out;
}

std::vector<SubsetMask> bases(const RankTable& M) {
    std::vector<SubsetMask> out;
    const SubsetMask full = M.ground();
    const int rk = M.rank_of_ground();
    for (SubsetMask s = 0;; ++s) {
        if (popcount(s) == rk && M.r(s) == rk) out.push_back(s);
        if (s == full) break;
    }
    sort_by_size_then_value(out);
    return out;
}

std::vector<SubsetMask> circuits(const RankTable& M) {
    std::vector<SubsetMask> out;
    const SubsetMask full = M.ground();
    for (SubsetMask s = 1;; ++s) {
        if (M.r(s) < popcount(s)) {
            bool minimal = true;
            for (int e : mask_elements(s)) {
                const SubsetMask t = s & ~(SubsetMask{1} << e);
                if (M.r(t) < popcount(t)) {
                    minimal = false;
                    break;
                }
            }
            if (minimal) out.push_back(s);
        }
        if (s == full) break;
    }
    sort_by_size_then_value(out);
    return out;
}

RankTable restriction(const RankTable& M, SubsetMask a) {
    if (!is_subset(a, M.ground())) throw std::invalid_argument("restriction set outside ground set");
    const std::vector<int> elems = mask_elements(a);
    const int k = static_cast<int>(elems.size());
    RankTable out;
    out.m = k;
    out.rank.resize(std::size_t{1} << k);
    for (SubsetMask t = 0; t < (SubsetMask{1} << k); ++t) {
        SubsetMask s = 0;
        for (int i = 0; i < k; ++i)
            if (t & (SubsetMask{1} << i)) s |= SubsetMask{1} << elems[i];
        out.rank[t] = static_cast<std::uint8_t>(M.r(s));
    }
    return out;
}

RankTable contraction(const RankTable& M, SubsetMask a) {
    if (!is_subset(a, M.ground())) throw std::invalid_argument("contraction set outside ground set");
    if (M.r(a) != popcount(a)) throw std::invalid_argument("contraction set must be independent");
    const std::vector<int> elems = mask_elements(M.ground() & ~a);
    const int k = static_cast<int>(elems.size());
    const int ra = M.r(a);
    RankTable out;
    out.m = k;
    out.rank.resize(std::size_t{1} << k);
    for (SubsetMask t = 0; t < (SubsetMask{1} << k); ++t) {
        SubsetMask s = a;
        for (int i = 0; i < k; ++i)
            if (t & (SubsetMask{1} << i)) s |= SubsetMask{1} << elems[i];
        out.rank[t] = static_cast<std::uint8_t>(M.r(s) - ra);
    }
    return out;
}

RankTable dual(const RankTable& M) {
    RankTable out;
    out.m = M.m;
    out.rank.resize(M.rank.size());
    const SubsetMask full = M.ground();
    const int rk = M.rank_of_ground();
    for (SubsetMask s = 0;; ++s) {
        out.rank[s] = static_cast<std::uint8_t>(M.r(full & ~s) + popcount(s) - rk);
        if (s == full) break;
    }
    return out;
}

RankTable matroid_from_circuits(int m, const std::vector<std::vector<int>>& circ) {
    if (m < 0 || m > kMaxGroundSet) throw FormatError("ground set size out of range");
    const std::size_t n = std::size_t{1} << m;
    std::vector<char> dependent(n, 0);
    for (const auto& c : circ) {
        SubsetMask s = 0;
        for (int e : c) {
            if (e < 0 || e >= m) throw FormatError("circuit element out of range");
            s |= SubsetMask{1} << e;
        }
        dependent[s] = 1;
    }
    // Mark every superset of a circuit dependent.
    for (std::size_t s = 0; s < n; ++s) {
        if (!dependent[s]) continue;
        for (int e = 0; e < m; ++e) dependent[s | (std::size_t{1} << e)] = 1;
    }
    std::vector<int> table(n, 0);
    for (std::size_t s = 1; s < n; ++s) {
        if (!dependent[s]) {
            table[s] = popcount(static_cast<SubsetMask>(s));
        } else {
            int best = 0;
            SubsetMask sm = static_cast<SubsetMask>(s);
            for (int e : mask_elements(sm)) best = std::max(best, table[sm & ~(SubsetMask{1} << e)]);
            table[s] = best;
        }
    }
    return make_matroid(m, table);  // rejects circuit lists that do not define a matroid
}

RankTable uniform_matroid(int k, int n) {
    if (n < 0 || n > kMaxGroundSet || k < 0 || k > n) throw std::invalid_argument("bad uniform matroid parameters");
    RankTable M;
    M.m = n;
    M.rank.resize(std::size_t{1} << n);
    for (SubsetMask s = 0; s < (SubsetMask{1} << n); ++s)
        M.rank[s] = static_cast<std::uint8_t>(std::min(popcount(s), k));
    return M;
}

RankTable free_matroid(int n) { return uniform_matroid(n, n); }

namespace {

// Per-element invariant preserved by isomorphism: for each subset size,
// the sum of ranks of subsets of that size containing the element.
std::vector<std::vector<int>> element_profiles(const RankTable& M) {
    std::vector<std::vector<int>> prof(M.m, std::vector<int>(M.m + 1, 0));
    const SubsetMask full = M.ground();
    for (SubsetMask s = 1;; ++s) {
        const int pc = popcount(s);
        for (int e : mask_elements(s)) prof[e][pc] += M.r(s);
        if (s == full) break;
    }
    return prof;
}

bool extend_isomorphism(const RankTable& A, const RankTable& B,
                        const std::vector<std::vector<int>>& profA,
                        const std::vector<std::vector<int>>& profB,
                        std::vector<int>& perm, SubsetMask used, int next) {
    const int m = A.m;
    if (next == m) return true;
    for (int img = 0; img < m; ++img) {
        if (used & (SubsetMask{1} << img)) continue;
        if (profB[next] != profA[img]) continue;
        perm[next] = img;
        // Check every subset of the assigned prefix that contains `next`.
        bool ok = true;
        const SubsetMask prefix_lower = full_mask(next);
        for_each_submask(prefix_lower, [&](SubsetMask sub) {
            if (!ok) return;
            const SubsetMask sB = sub | (SubsetMask{1} << next);
            SubsetMask sA = 0;
            for (int e : mask_elements(sB)) sA |= SubsetMask{1} << perm[e];
            if (A.r(sA) != B.r(sB)) ok = false;
        });
        if (ok && extend_isomorphism(A, B, profA, profB, perm, used | (SubsetMask{1} << img), next + 1))
            return true;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const RankTable& A, const RankTable& B) {
    if (A.m != B.m) return std::nullopt;
    if (A.rank_of_ground() != B.rank_of_ground()) return std::nullopt;
    auto profA = element_profiles(A);
    auto profB = element_profiles(B);
    {
        auto sa = profA;
        auto sb = profB;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }
    std::vector<int> perm(A.m, -1);
    if (extend_isomorphism(A, B, profA, profB, perm, 0, 0)) return perm;
    return std::nullopt;
}

std::optional<MinorWitness> has_minor(const RankTable& M, const RankTable& N) {
    if (M.m > 9) throw CapabilityError("has_minor supports ground sets of size <= 9");
    if (N.m > M.m) return std::nullopt;
    const SubsetMask full = M.ground();
    for (SubsetMask c = 0;; ++c) {
        if (M.r(c) == popcount(c) && popcount(c) <= M.m - N.m) {
            const RankTable contracted = contraction(M, c);
            const SubsetMask rest_full = full_mask(contracted.m);
            // Choose the kept elements among the survivors.
            for (SubsetMask keep = 0;; ++keep) {
                if (popcount(keep) == N.m) {
                    const RankTable minor = restriction(contracted, keep);
                    if (auto perm = find_isomorphism(minor, N)) {
                        MinorWitness w;
                        w.contract_set = c;
                        // Map `keep` back to original element ids.
                        const std::vector<int> survivors = mask_elements(full & ~c);
                        SubsetMask kept_orig = 0;
                        for (int i : mask_elements(keep)) kept_orig |= SubsetMask{1} << survivors[i];
                        w.restrict_set = kept_orig;
                        w.element_map = *perm;
                        return w;
                    }
                }
                if (keep == rest_full) break;
            }
        }
        if (c == full) break;
    }
    return std::nullopt;
}

}  // namespace entromat
