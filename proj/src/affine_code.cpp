#include "entromat/affine_code.hpp"

#include "entromat/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace entromat {

AffineCode make_code_packed(int s, int m, std::vector<std::uint64_t> words) {
    if (s < 2) throw FormatError("alphabet size must be >= 2");
    if (m < 0 || m > kMaxGroundSet) throw FormatError("word length out of range [0,20]");
    if (words.empty()) throw FormatError("code must be non-empty");
    std::sort(words.begin(), words.end());
    if (std::adjacent_find(words.begin(), words.end()) != words.end())
        throw FormatError("duplicate codeword");
    for (std::uint64_t key : words) {
        std::uint64_t k = key;
        for (int e = 0; e < m; ++e) k /= static_cast<std::uint64_t>(s);
        if (k != 0) throw FormatError("codeword symbol out of range");
    }
    AffineCode c;
    c.s = s;
    c.m = m;
    c.words = std::move(words);
    return c;
}

AffineCode make_code(int s, int m, const std::vector<std::vector<int>>& words) {
    std::vector<std::uint64_t> packed;
    packed.reserve(words.size());
    for (const auto& w : words) {
        if (static_cast<int>(w.size()) != m) throw FormatError("codeword length mismatch");
        packed.push_back(pack_word(w, s));
    }
    return make_code_packed(s, m, std::move(packed));
}

std::string code_text_dump(const AffineCode& c) {
    std::vector<std::vector<int>> words;
    words.reserve(c.words.size());
    for (std::uint64_t key : c.words) words.push_back(unpack_word(key, c.s, c.m));
    std::sort(words.begin(), words.end());
    std::ostringstream os;
    for (const auto& w : words) {
        for (int e = 0; e < c.m; ++e) {
            if (e) os << ' ';
            os << w[e];
        }
        os << '\n';
    }
    return os.str();
}

namespace {

std::uint64_t project_key(std::uint64_t key, int s, int m, SubsetMask y) {
    std::uint64_t out = 0;
    std::uint64_t weight = 1;
    for (int e = 0; e < m; ++e) {
        const std::uint64_t digit = key % static_cast<std::uint64_t>(s);
        key /= static_cast<std::uint64_t>(s);
        if (y & (SubsetMask{1} << e)) {
            out += digit * weight;
            weight *= static_cast<std::uint64_t>(s);
        }
    }
    return out;
}

}  // namespace

std::uint64_t projection_count(const AffineCode& c, SubsetMask y) {
    if (!is_subset(y, full_mask(c.m))) throw std::invalid_argument("projection set outside [m]");
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(c.words.size() * 2);
    for (std::uint64_t key : c.words) seen.insert(project_key(key, c.s, c.m, y));
    return seen.size();
}

AlmostAffineResult is_almost_affine(const AffineCode& c) {
    AlmostAffineResult res;
    std::vector<int> table(std::size_t{1} << c.m, 0);
    const SubsetMask full = full_mask(c.m);
    for (SubsetMask y = 0;; ++y) {
        const std::uint64_t count = projection_count(c, y);
        const int k = exact_log(count, static_cast<std::uint64_t>(c.s));
        if (k < 0) {
            res.witness = y;
            return res;
        }
        table[y] = k;
        if (y == full) break;
    }
    AxiomReport rep = check_axioms(c.m, table);
    if (!rep.valid) {
        res.axiom_failure = rep;
        return res;
    }
    RankTable M;
    M.m = c.m;
    M.rank.assign(table.begin(), table.end());
    res.matroid = std::move(M);
    return res;
}

SecretSharingMatrix make_secret_sharing_matrix(int s, const std::vector<std::vector<int>>& rows) {
    if (s < 2) throw FormatError("alphabet size must be >= 2");
    if (rows.empty()) throw FormatError("matrix must be non-empty");
    const int m = static_cast<int>(rows[0].size());
    if (m > kMaxGroundSet) throw FormatError("too many columns");
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != m) throw FormatError("ragged matrix");
        for (int v : row)
            if (v < 0 || v >= s) throw FormatError("entry out of [0,s)");
    }
    SecretSharingMatrix A;
    A.s = s;
    A.m = m;
    A.rows = rows;
    return A;
}

SecretSharingCheck is_secret_sharing(const SecretSharingMatrix& A) {
    SecretSharingCheck out;
    const int m = A.m;
    const std::size_t nrows = A.rows.size();
    std::vector<std::uint64_t> packed(nrows);
    for (std::size_t i = 0; i < nrows; ++i) packed[i] = pack_word(A.rows[i], A.s);

    const std::uint32_t full_set = (A.s >= 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << A.s) - 1);
    for (int e = 0; e < m; ++e) {
        const SubsetMask others = full_mask(m) & ~(SubsetMask{1} << e);
        for_each_submask(others, [&](SubsetMask y) {
            if (out.e >= 0) return;  // already failed
            // Group rows by their Y-projection; n(i,e,Y) is the symbol set of
            // column e within row i's group.
            std::unordered_map<std::uint64_t, std::uint32_t> symbols_by_group;
            for (std::size_t i = 0; i < nrows; ++i)
                symbols_by_group[project_key(packed[i], A.s, m, y)] |= std::uint32_t{1} << A.rows[i][e];
            bool any_full = false, any_singleton = false, any_mid = false;
            for (const auto& [g, set] : symbols_by_group) {
                if (set == full_set)
                    any_full = true;
                else if (popcount(set) >= 2)
                    any_mid = true;
                else
                    any_singleton = true;
            }
            if (!any_mid && !(any_full && any_singleton)) return;  // dichotomy holds here
            out.e = e;
            out.y = y;
            // Deterministic witness rows: first in row order per class.
            for (std::size_t i = 0; i < nrows; ++i) {
                const std::uint32_t set = symbols_by_group[project_key(packed[i], A.s, m, y)];
                if (out.row_multi < 0 && popcount(set) >= 2) out.row_multi = static_cast<int>(i);
                if (out.row_singleton < 0 && popcount(set) == 1) out.row_singleton = static_cast<int>(i);
            }
        });
        if (out.e >= 0) return out;
    }
    out.ok = true;
    return out;
}

AffineCode code_from_matrix(const SecretSharingMatrix& A) {
    std::vector<std::uint64_t> keys;
    keys.reserve(A.rows.size());
    for (const auto& row : A.rows) keys.push_back(pack_word(row, A.s));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return make_code_packed(A.s, A.m, std::move(keys));
}

FiniteDistribution code_to_distribution(const AffineCode& c) {
    if (exact_log(c.words.size(), static_cast<std::uint64_t>(c.s)) < 0)
        throw std::invalid_argument("codeword count is not a power of the alphabet size");
    return uniform_on_words(c.s, c.m, c.words);
}

AffineCode distribution_to_code(const FiniteDistribution& mu) {
    const EntropicMatroidResult em = as_entropic_matroid(mu);
    if (!em.matroid) throw std::invalid_argument("distribution does not have an integral entropic rank");
    // Integral entropic rank forces a uniform support of size q^r(E).
    std::vector<std::uint64_t> support;
    support.reserve(mu.atoms.size());
    for (const auto& [key, w] : mu.atoms) support.push_back(key);
    const int r = em.matroid->rank_of_ground();
    if (static_cast<std::uint64_t>(support.size()) != u64_pow(static_cast<std::uint64_t>(mu.q), static_cast<unsigned>(r)))
        throw std::logic_error("entropic distribution with non-uniform support");
    return make_code_packed(mu.q, mu.m, std::move(support));
}

AffineCode simonis_ashikhmin_code() {
    // Generator over F_3^2; each two-digit entry ab is the pair (a,b).
    static const int gen[6][9][2] = {
        {{1, 0}, {1, 0}, {0, 0}, {1, 0}, {0, 0}, {1, 0}, {1, 0}, {1, 0}, {0, 0}},
        {{0, 1}, {0, 1}, {0, 0}, {0, 1}, {0, 0}, {0, 1}, {0, 1}, {0, 1}, {0, 0}},
        {{0, 0}, {0, 0}, {0, 0}, {1, 0}, {1, 0}, {2, 1}, {0, 1}, {1, 0}, {1, 0}},
        {{0, 0}, {0, 0}, {0, 0}, {0, 2}, {0, 1}, {2, 0}, {1, 2}, {0, 2}, {0, 1}},
        {{0, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 0}, {0, 1}, {0, 0}, {1, 1}, {1, 0}},
        {{0, 0}, {0, 1}, {0, 1}, {2, 1}, {0, 0}, {2, 1}, {0, 0}, {1, 0}, {0, 1}},
    };
    std::vector<std::uint64_t> words;
    words.reserve(729);
    int coeff[6];
    for (int it = 0; it < 729; ++it) {
        int t = it;
        for (int i = 0; i < 6; ++i) {
            coeff[i] = t % 3;
            t /= 3;
        }
        std::vector<int> word(9);
        for (int e = 0; e < 9; ++e) {
            int a = 0, b = 0;
            for (int i = 0; i < 6; ++i) {
                a += coeff[i] * gen[i][e][0];
                b += coeff[i] * gen[i][e][1];
            }
            word[e] = 3 * (a % 3) + (b % 3);  // pair (a,b) packed as one symbol in [9]
        }
        words.push_back(pack_word(word, 9));
    }
    return make_code_packed(9, 9, std::move(words));
}

}  // namespace entromat
