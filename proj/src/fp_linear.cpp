#include "entromat/fp_linear.hpp"

#include "entromat/distribution.hpp"
#include "entromat/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace entromat {

bool is_prime(std::int64_t p) {
    if (p > 1000000) throw CapabilityError("primality is only checked for p <= 10^6");
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

FpMatrix make_fp_matrix(std::int64_t p, const std::vector<std::vector<int>>& rows) {
    if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
    FpMatrix A;
    A.p = p;
    A.rows = static_cast<int>(rows.size());
    A.cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    A.a.reserve(static_cast<std::size_t>(A.rows) * A.cols);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != A.cols) throw FormatError("ragged matrix");
        for (int v : row) {
            if (v < 0 || v >= p) throw FormatError("matrix entry out of [0,p)");
            A.a.push_back(v);
        }
    }
    return A;
}

namespace {

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    // extended Euclid; a != 0 mod p, p prime
    std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        const std::int64_t t2 = t - q * new_t;
        t = new_t;
        new_t = t2;
        const std::int64_t r2 = r - q * new_r;
        r = new_r;
        new_r = r2;
    }
    return ((t % p) + p) % p;
}

// Incremental row echelon basis over F_p with at most `dim` pivot rows.
struct Echelon {
    std::int64_t p = 2;
    int dim = 0;
    int rank = 0;
    std::vector<std::int64_t> rows;  // rank * dim, each with leading pivot 1
    std::vector<int> pivot_col;

    void init(std::int64_t p_, int dim_) {
        p = p_;
        dim = dim_;
        rank = 0;
        rows.assign(static_cast<std::size_t>(dim) * dim, 0);
        pivot_col.assign(dim, -1);
    }

    // Returns true if v was independent of the current span (rank grew).
    bool add(const int* v) {
        std::vector<std::int64_t> w(v, v + dim);
        for (int r = 0; r < rank; ++r) {
            const std::int64_t c = w[pivot_col[r]] % p;
            if (c == 0) continue;
            const std::int64_t* row = &rows[static_cast<std::size_t>(r) * dim];
            for (int j = 0; j < dim; ++j) w[j] = (w[j] + (p - c) * row[j]) % p;
        }
        int lead = -1;
        for (int j = 0; j < dim; ++j)
            if (w[j] % p != 0) {
                lead = j;
                break;
            }
        if (lead < 0) return false;
        const std::int64_t inv = mod_inverse(w[lead], p);
        std::int64_t* row = &rows[static_cast<std::size_t>(rank) * dim];
        for (int j = 0; j < dim; ++j) row[j] = (w[j] * inv) % p;
        pivot_col[rank] = lead;
        ++rank;
        return true;
    }
};

}  // namespace

int fp_rank(const FpMatrix& A) {
    if (A.rows == 0 || A.cols == 0) return 0;
    std::vector<std::vector<std::int64_t>> rows(A.rows, std::vector<std::int64_t>(A.cols));
    for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) rows[r][c] = A.at(r, c);
    const std::int64_t p = A.p;
    int rank = 0;
    for (int col = 0; col < A.cols && rank < A.rows; ++col) {
        int piv = -1;
        for (int r = rank; r < A.rows; ++r)
            if (rows[r][col] % p != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        const std::int64_t inv = mod_inverse(rows[rank][col], p);
        for (int c = col; c < A.cols; ++c) rows[rank][c] = (rows[rank][c] * inv) % p;
        for (int r = 0; r < A.rows; ++r) {
            if (r == rank) continue;
            const std::int64_t f = rows[r][col] % p;
            if (f == 0) continue;
            for (int c = col; c < A.cols; ++c) rows[r][c] = (rows[r][c] + (p - f) * rows[rank][c]) % p;
        }
        ++rank;
    }
    return rank;
}

RankTable column_matroid(const FpMatrix& A) {
    const int m = A.cols;
    if (m > kMaxGroundSet) throw CapabilityError("too many columns for a dense rank table");
    RankTable M;
    M.m = m;
    M.rank.resize(std::size_t{1} << m);
    M.rank[0] = 0;
    // ech[S] built from ech[S minus top element] plus one column.
    std::vector<Echelon> ech(std::size_t{1} << m);
    ech[0].init(A.p, A.rows);
    std::vector<int> col(A.rows);
    for (SubsetMask s = 1; s < (SubsetMask{1} << m); ++s) {
        const int top = 31 - std::countl_zero(s);
        const SubsetMask rest = s & ~(SubsetMask{1} << top);
        ech[s] = ech[rest];
        for (int r = 0; r < A.rows; ++r) col[r] = A.at(r, top);
        ech[s].add(col.data());
        M.rank[s] = static_cast<std::uint8_t>(ech[s].rank);
    }
    return M;
}

Representation representation_from_matrix(const FpMatrix& A) {
    Representation R;
    R.p = A.p;
    R.d = A.rows;
    R.columns.resize(A.cols);
    for (int c = 0; c < A.cols; ++c) {
        R.columns[c].resize(A.rows);
        for (int r = 0; r < A.rows; ++r) R.columns[c][r] = A.at(r, c);
    }
    return R;
}

FpMatrix representation_matrix(const Representation& R) {
    FpMatrix A;
    A.p = R.p;
    A.rows = R.d;
    A.cols = static_cast<int>(R.columns.size());
    A.a.resize(static_cast<std::size_t>(A.rows) * A.cols);
    for (int c = 0; c < A.cols; ++c)
        for (int r = 0; r < A.rows; ++r) A.at(r, c) = R.columns[c][r];
    return A;
}

RepresentationCheck verify_representation(const RankTable& M, const Representation& R) {
    RepresentationCheck out;
    if (static_cast<int>(R.columns.size()) != M.m) {
        out.witness = 0;
        return out;
    }
    const RankTable induced = column_matroid(representation_matrix(R));
    for (SubsetMask s = 0;; ++s) {
        if (induced.r(s) != M.r(s)) {
            out.witness = s;
            return out;
        }
        if (s == M.ground()) break;
    }
    out.ok = true;
    return out;
}

namespace {

struct RepSearcher {
    const RankTable& M;
    std::int64_t p;
    int d;
    int m;
    std::vector<int> order;          // placement order, basis first
    std::vector<SubsetMask> placed_orig;  // prefix masks in original element ids
    std::vector<std::vector<int>> candidates;  // projective representatives
    std::vector<std::vector<int>> assigned;    // per placement slot
    // ech[mask] over placement-order prefixes; rank checked against r_M.
    std::vector<Echelon> ech;
    std::vector<int> rank_of_placed;  // r_M of mapped mask
    std::uint64_t nodes = 0;

    explicit RepSearcher(const RankTable& M_, std::int64_t p_) : M(M_), p(p_), d(M_.rank_of_ground()), m(M_.m) {}

    void build_order() {
        // A lexicographically greedy basis first, then remaining elements by
        // decreasing count of dependencies with already-ordered elements so
        // pruning bites early.
        SubsetMask basis = 0;
        for (int e = 0; e < m && popcount(basis) < d; ++e)
            if (M.r(basis | (SubsetMask{1} << e)) > M.r(basis)) basis |= SubsetMask{1} << e;
        for (int e : mask_elements(basis)) order.push_back(e);
        SubsetMask done = basis;
        while (static_cast<int>(order.size()) < m) {
            int best = -1;
            long best_score = -1;
            for (int e = 0; e < m; ++e) {
                if (done & (SubsetMask{1} << e)) continue;
                long score = 0;
                for_each_submask(done, [&](SubsetMask sub) {
                    const SubsetMask s = sub | (SubsetMask{1} << e);
                    if (M.r(s) < popcount(s)) ++score;
                });
                if (score > best_score) {
                    best_score = score;
                    best = e;
                }
            }
            if (best < 0) throw std::logic_error("element ordering ran out of elements");
            order.push_back(best);
            done |= SubsetMask{1} << best;
        }
    }

    void build_candidates() {
        // Projective representatives: first nonzero coordinate equals 1.
        std::vector<int> v(d, 0);
        for (;;) {
            int lead = -1;
            for (int j = 0; j < d; ++j)
                if (v[j] != 0) {
                    lead = j;
                    break;
                }
            if (lead >= 0 && v[lead] == 1) candidates.push_back(v);
            int j = d - 1;
            while (j >= 0 && v[j] == p - 1) v[j--] = 0;
            if (j < 0) break;
            ++v[j];
        }
    }

    bool place(int slot) {
        if (slot == m) return true;
        const int elem = order[slot];
        const SubsetMask bit = SubsetMask{1} << slot;

        auto attempt = [&](const std::vector<int>& v) -> bool {
            ++nodes;
            // Extend the echelon of every prefix subset containing this slot
            // and compare ranks with M.
            const SubsetMask lower = bit - 1;
            bool ok = true;
            for_each_submask(lower, [&](SubsetMask sub) {
                if (!ok) return;
                const SubsetMask s = sub | bit;
                ech[s] = ech[sub];
                ech[s].add(v.data());
                if (ech[s].rank != rank_of_placed[s]) ok = false;
            });
            if (!ok) return false;
            assigned[slot] = v;
            if (place(slot + 1)) return true;
            return false;
        };

        if (M.r(SubsetMask{1} << elem) == 0) {
            return attempt(std::vector<int>(d, 0));
        }
        if (slot < d) {
            // Basis elements pinned to the standard basis.
            std::vector<int> v(d, 0);
            v[slot] = 1;
            return attempt(v);
        }
        for (const auto& v : candidates)
            if (attempt(v)) return true;
        return false;
    }

    RepresentationSearchResult run() {
        RepresentationSearchResult out;
        if (m == 0) {
            out.representation = Representation{p, 0, {}};
            return out;
        }
        build_order();
        build_candidates();
        assigned.assign(m, {});
        ech.resize(std::size_t{1} << m);
        ech[0].init(p, d);
        rank_of_placed.assign(std::size_t{1} << m, 0);
        for (SubsetMask s = 1; s < (SubsetMask{1} << m); ++s) {
            SubsetMask orig = 0;
            for (int i : mask_elements(s)) orig |= SubsetMask{1} << order[i];
            rank_of_placed[s] = M.r(orig);
        }
        if (place(0)) {
            Representation R;
            R.p = p;
            R.d = d;
            R.columns.resize(m);
            for (int i = 0; i < m; ++i) R.columns[order[i]] = assigned[i];
            // Re-verify through the independent path before reporting success.
            if (!verify_representation(M, R).ok) throw std::logic_error("representation failed re-verification");
            out.representation = std::move(R);
        }
        out.nodes = nodes;
        return out;
    }
};

}  // namespace

RepresentationSearchResult find_representation(const RankTable& M, std::int64_t p) {
    if (M.m > 9) throw CapabilityError("find_representation supports m <= 9");
    if (p != 2 && p != 3 && p != 5 && p != 7) throw CapabilityError("find_representation supports p in {2,3,5,7}");
    RepSearcher s(M, p);
    return s.run();
}

FiniteDistribution representation_to_distribution(const Representation& R) {
    const int m = static_cast<int>(R.columns.size());
    const std::int64_t p = R.p;
    std::uint64_t total = 1;
    for (int i = 0; i < R.d; ++i) total *= static_cast<std::uint64_t>(p);
    std::map<std::uint64_t, Rational> atoms;
    const Rational w(1, BigInt(total));
    std::vector<int> y(R.d, 0);
    for (std::uint64_t it = 0;; ++it) {
        std::uint64_t key = 0;
        for (int e = m - 1; e >= 0; --e) {
            std::int64_t x = 0;
            for (int j = 0; j < R.d; ++j) x += static_cast<std::int64_t>(R.columns[e][j]) * y[j];
            key = key * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(x % p);
        }
        atoms[key] += w;
        int j = R.d - 1;
        while (j >= 0 && y[j] == p - 1) y[j--] = 0;
        if (j < 0) break;
        ++y[j];
    }
    return make_distribution(static_cast<int>(p), m, std::move(atoms));
}

}  // namespace entromat
