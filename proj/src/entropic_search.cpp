#include "entromat/entropic_search.hpp"

#include "entromat/errors.hpp"

#include <pthread.h>

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace entromat {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::entropic: return "entropic";
        case Verdict::not_entropic: return "not-entropic";
        case Verdict::timeout: return "timeout";
    }
    return "?";
}

namespace {

// Lexicographic convention inside the search: coordinate 0 is the most
// significant digit of a word, so scanning words in increasing digit order
// equals scanning them lexicographically.  Prefix projections are then
// monotone along the scan, which is what the frontier ("dead fiber") pruning
// relies on.
//
// Every committed multiset of words is reflected in counts[]/distinct[];
// each scan places all m digits of its candidate afresh (lower-bounded by
// the successor of the previous word), so cap checks always run against the
// current counts.  Fibers strictly below the frontier never change again:
// they are checked once, when the frontier passes them.
enum class ScanOutcome { found, exhausted, dead, timeout };

struct CodeSearcher {
    const RankTable& M;
    const int p;
    const int m;
    const int r;
    const std::uint32_t N;  // p^r codewords wanted

    std::vector<std::uint32_t> distinct_cap;  // p^{r(T)}
    std::vector<std::uint32_t> fiber_cap;     // p^{r - r(T)}
    std::vector<std::uint64_t> offset;        // block start per mask
    std::vector<std::uint64_t> pow_p;         // p^0 .. p^m
    std::vector<std::uint32_t> counts;        // fiber multiplicities
    std::vector<std::uint32_t> distinct;      // distinct projections per mask
    std::vector<std::uint64_t> idx;           // projection index of the candidate prefix

    std::vector<std::uint8_t> cur;        // candidate digits
    std::vector<std::uint8_t> committed;  // k * m digit stack
    std::vector<std::int8_t> t_max;       // max symbol seen per coordinate
    std::vector<std::int8_t> t_undo;      // k * m previous t_max values
    std::uint32_t k = 0;

    std::uint64_t nodes = 0;
    std::uint64_t budget;
    int max_words = 0;

    // When nonzero, commits stop at this many words and each reached prefix
    // is emitted as an independent subtree task instead of being explored.
    std::uint32_t split_words = 0;
    std::vector<std::vector<std::uint8_t>> tasks;

    // Frontier pruning can be disabled to cross-check verdicts against the
    // cap-only search (used by tests; much slower).
    bool frontier_pruning = true;

    CodeSearcher(const RankTable& M_, int p_, std::uint64_t budget_)
        : M(M_), p(p_), m(M_.m), r(M_.rank_of_ground()),
          N(static_cast<std::uint32_t>(u64_pow(static_cast<std::uint64_t>(p_), static_cast<unsigned>(M_.rank_of_ground())))),
          budget(budget_) {
        const std::size_t nmask = std::size_t{1} << m;
        distinct_cap.resize(nmask);
        fiber_cap.resize(nmask);
        offset.resize(nmask);
        std::uint64_t total = 0;
        for (std::size_t T = 0; T < nmask; ++T) {
            distinct_cap[T] = static_cast<std::uint32_t>(u64_pow(p, static_cast<unsigned>(M.r(static_cast<SubsetMask>(T)))));
            fiber_cap[T] = static_cast<std::uint32_t>(
                u64_pow(p, static_cast<unsigned>(r - M.r(static_cast<SubsetMask>(T)))));
            offset[T] = total;
            total += u64_pow(p, static_cast<unsigned>(popcount(static_cast<SubsetMask>(T))));
            if (total > (std::uint64_t{1} << 24))
                throw CapabilityError("projection count table exceeds 2^24 entries");
        }
        counts.assign(total, 0);
        distinct.assign(nmask, 0);
        idx.assign(nmask, 0);
        cur.assign(m, 0);
        t_max.assign(m, -1);
        pow_p.resize(m + 1);
        pow_p[0] = 1;
        for (int i = 1; i <= m; ++i) pow_p[i] = pow_p[i - 1] * static_cast<std::uint64_t>(p);
    }

    bool place_ok(int j, int s) {
        const std::uint32_t low = std::uint32_t{1} << j;
        const std::uint32_t after = N - k - 1;  // words still to add beyond this one
        for (std::uint32_t sub = 0; sub < low; ++sub) {
            const std::uint32_t T = sub | low;
            const std::uint64_t key = idx[sub] * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(s);
            idx[T] = key;
            const std::uint32_t c = counts[offset[T] + key];
            if (c + 1 > fiber_cap[T]) return false;
            const std::uint32_t d = distinct[T] + (c == 0 ? 1 : 0);
            if (d > distinct_cap[T]) return false;
            if (distinct_cap[T] - d > after) return false;  // cannot reach p^{r(T)} distinct
        }
        // Prefix keys are monotone along the scan, so fibers below the
        // current key are frozen and new distinct prefixes can only come
        // from the keys above it.
        const std::uint32_t P = (low << 1) - 1;
        const std::uint32_t d = distinct[P] + (counts[offset[P] + idx[P]] == 0 ? 1 : 0);
        if (distinct_cap[P] - d > pow_p[j + 1] - 1 - idx[P]) return false;
        return true;
    }

    // The scan has moved past prefix (cur[0..j-1], s); its fiber can no
    // longer grow, so it must be untouched or exactly full.
    bool retire_ok(int j, int s) {
        if (!frontier_pruning) return true;
        const std::uint32_t T = (std::uint32_t{1} << (j + 1)) - 1;
        const std::uint64_t key =
            (j == 0 ? 0 : idx[T >> 1]) * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(s);
        const std::uint32_t c = counts[offset[T] + key];
        return c == 0 || c == fiber_cap[T];
    }

    void commit() {
        const std::size_t nmask = std::size_t{1} << m;
        for (std::size_t T = 1; T < nmask; ++T) {
            std::uint32_t& c = counts[offset[T] + idx[T]];
            if (c == 0) ++distinct[T];
            ++c;
        }
        committed.insert(committed.end(), cur.begin(), cur.end());
        t_undo.insert(t_undo.end(), t_max.begin(), t_max.end());
        for (int j = 0; j < m; ++j) t_max[j] = std::max<std::int8_t>(t_max[j], static_cast<std::int8_t>(cur[j]));
        ++k;
        max_words = std::max(max_words, static_cast<int>(k));
    }

    // Uncommits the last word, restores the odometer to its digits and
    // rebuilds idx[] for them.
    void pop() {
        --k;
        std::copy_n(committed.end() - m, m, cur.begin());
        committed.resize(committed.size() - m);
        std::copy_n(t_undo.end() - m, m, t_max.begin());
        t_undo.resize(t_undo.size() - m);
        for (int j = 0; j < m; ++j) {
            const std::uint32_t low = std::uint32_t{1} << j;
            for (std::uint32_t sub = 0; sub < low; ++sub)
                idx[sub | low] = idx[sub] * static_cast<std::uint64_t>(p) + cur[j];
        }
        const std::size_t nmask = std::size_t{1} << m;
        for (std::size_t T = 1; T < nmask; ++T) {
            std::uint32_t& c = counts[offset[T] + idx[T]];
            --c;
            if (c == 0) --distinct[T];
        }
    }

    // Replays a forced prefix of words (already known canonical and
    // feasible).  Each word passes the same per-digit checks the original
    // enumeration ran, so a rejection here is a logic error.
    void force_prefix(const std::vector<std::uint8_t>& words) {
        for (std::size_t w = 0; w + m <= words.size(); w += m) {
            for (int j = 0; j < m; ++j) {
                cur[j] = words[w + j];
                if (!place_ok(j, cur[j])) throw std::logic_error("forced prefix rejected");
            }
            commit();
        }
    }

    std::vector<std::uint8_t>* cert_out = nullptr;

    // Seeks word index k given the committed words.  Must be entered right
    // after a commit (or with k == 0), so idx[] matches the last word.
    ScanOutcome scan() {
        if (k == N) {
            if (cert_out) *cert_out = committed;
            return ScanOutcome::found;
        }
        if (split_words != 0 && k == split_words) {
            tasks.emplace_back(committed);
            return ScanOutcome::exhausted;  // explored by a subtree task instead
        }
        std::uint8_t L[kMaxGroundSet] = {0};
        if (k > 0) {
            const std::uint8_t* base = &committed[(k - 1) * static_cast<std::size_t>(m)];
            int t = m - 1;
            while (t >= 0 && base[t] == p - 1) --t;
            // The frontier moves past every prefix (base[0..j-1], base[j])
            // for j >= t; each such fiber is now frozen.
            for (int j = m - 1; j >= std::max(t, 0); --j)
                if (!retire_ok(j, base[j])) return ScanOutcome::dead;
            if (t < 0) return ScanOutcome::exhausted;  // no word above base
            for (int i = 0; i < t; ++i) L[i] = base[i];
            L[t] = static_cast<std::uint8_t>(base[t] + 1);
        }
        return descend(0, L, true);
    }

    ScanOutcome descend(int j, const std::uint8_t* L, bool bounded) {
        const int lo = bounded ? L[j] : 0;
        const int cap = std::min(p - 1, static_cast<int>(t_max[j]) + 1);
        for (int s = lo; s <= cap; ++s) {
            ++nodes;
            if (nodes >= budget) return ScanOutcome::timeout;
            if (place_ok(j, s)) {
                cur[j] = static_cast<std::uint8_t>(s);
                if (j == m - 1) {
                    commit();
                    const ScanOutcome r = scan();
                    if (r == ScanOutcome::found || r == ScanOutcome::timeout) return r;
                    pop();  // child node infeasible or exhausted; counts restored
                } else {
                    const ScanOutcome r = descend(j + 1, L, bounded && s == L[j]);
                    if (r != ScanOutcome::exhausted) return r;  // found/timeout/dead propagate
                }
            }
            // The frontier moves past (cur[0..j-1], s): frozen from here on.
            if (!retire_ok(j, s)) return ScanOutcome::dead;
        }
        // Symbols above cap index fibers no committed word touches; they
        // freeze empty and need no check.
        return ScanOutcome::exhausted;
    }

    Verdict run(std::vector<std::uint8_t>* certificate) {
        cert_out = certificate;
        switch (scan()) {
            case ScanOutcome::found: return Verdict::entropic;
            case ScanOutcome::timeout: return Verdict::timeout;
            case ScanOutcome::exhausted:
            case ScanOutcome::dead: return Verdict::not_entropic;
        }
        return Verdict::timeout;
    }
};

// The recursion nests one scan frame plus m descend frames per committed
// word; near the formal cap p^{r(E)} = 2^16 that exceeds a default thread
// stack, so searches run on a dedicated big-stack thread.
void run_on_big_stack(const std::function<void()>& fn) {
    pthread_attr_t attr;
    if (pthread_attr_init(&attr) != 0) {
        fn();
        return;
    }
    pthread_attr_setstacksize(&attr, std::size_t{256} * 1024 * 1024);
    struct Ctx {
        const std::function<void()>* fn;
        std::exception_ptr err;
    } ctx{&fn, nullptr};
    auto trampoline = [](void* raw) -> void* {
        auto* c = static_cast<Ctx*>(raw);
        try {
            (*c->fn)();
        } catch (...) {
            c->err = std::current_exception();
        }
        return nullptr;
    };
    pthread_t tid;
    if (pthread_create(&tid, &attr, trampoline, &ctx) != 0) {
        pthread_attr_destroy(&attr);
        fn();
        return;
    }
    pthread_join(tid, nullptr);
    pthread_attr_destroy(&attr);
    if (ctx.err) std::rethrow_exception(ctx.err);
}

AffineCode words_to_code(int p, int m, const std::vector<std::uint8_t>& words) {
    std::vector<std::uint64_t> packed;
    packed.reserve(words.size() / m);
    for (std::size_t w = 0; w + m <= words.size(); w += m) {
        std::vector<int> word(m);
        for (int j = 0; j < m; ++j) word[j] = words[w + j];
        packed.push_back(pack_word(word, p));
    }
    return make_code_packed(p, m, std::move(packed));
}

}  // namespace

bool verify_entropic_certificate(const RankTable& M, const AffineCode& c) {
    if (c.m != M.m) return false;
    const AlmostAffineResult res = is_almost_affine(c);
    return res.matroid && *res.matroid == M;
}

SearchReport is_p_entropic(const RankTable& M, int p, const SearchOptions& opts) {
    if (p < 2) throw std::invalid_argument("alphabet size must be >= 2");
    {
        const AxiomReport rep = check_axioms(M);
        if (!rep.valid) throw std::invalid_argument(std::string("input is not a matroid: ") + rep.message);
    }
    if (M.m > 12) throw CapabilityError("entropic search supports m <= 12");
    const std::uint64_t want = u64_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(M.rank_of_ground()));
    if (want > (std::uint64_t{1} << 16)) throw CapabilityError("p^{r(E)} exceeds 2^16 codewords");

    SearchReport report;
    {
        std::ostringstream trace;
        trace << "first codeword fixed to the all-zero word; per-coordinate symbols "
                 "canonicalized to first appear in increasing order";
        report.symmetry_trace = trace.str();
    }

    if (M.m == 0) {
        report.verdict = Verdict::entropic;
        report.certificate = make_code_packed(p, 0, {0});  // the empty-word code
        report.nodes = 0;
        return report;
    }

    const int threads = std::max(1, opts.threads);
    std::vector<std::uint8_t> cert_words;

    if (threads == 1 || want <= 4) {
        CodeSearcher s(M, p, opts.node_budget);
        s.frontier_pruning = opts.frontier_pruning;
        run_on_big_stack([&] { report.verdict = s.run(&cert_words); });
        report.nodes = s.nodes;
        report.max_words = s.max_words;
    } else {
        // Deterministic parallel mode: enumerate all feasible three-word
        // prefixes, then exhaust each subtree independently.  No early
        // cancellation, so verdict, certificate and node totals do not
        // depend on the schedule.
        CodeSearcher enumerator(M, p, opts.node_budget);
        enumerator.split_words = 3;
        enumerator.frontier_pruning = opts.frontier_pruning;
        std::vector<std::uint8_t> ignore;
        Verdict enum_verdict = Verdict::timeout;
        run_on_big_stack([&] { enum_verdict = enumerator.run(&ignore); });
        report.nodes = enumerator.nodes;
        report.max_words = enumerator.max_words;
        if (enum_verdict == Verdict::timeout) {
            report.verdict = Verdict::timeout;
            return report;
        }
        if (enum_verdict == Verdict::entropic) {
            // N <= 3: the enumerator completed a code before splitting.
            report.verdict = Verdict::entropic;
            cert_words = ignore;
        } else {
            const auto& tasks = enumerator.tasks;
            const std::uint64_t per_task =
                tasks.empty() ? opts.node_budget : std::max<std::uint64_t>(1, opts.node_budget / tasks.size());
            std::vector<Verdict> verdicts(tasks.size(), Verdict::not_entropic);
            std::vector<std::vector<std::uint8_t>> certs(tasks.size());
            std::vector<std::uint64_t> task_nodes(tasks.size(), 0);
            std::vector<int> task_depth(tasks.size(), 0);
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    CodeSearcher s(M, p, per_task);
                    s.frontier_pruning = opts.frontier_pruning;
                    s.force_prefix(tasks[i]);
                    verdicts[i] = s.run(&certs[i]);
                    task_nodes[i] = s.nodes;
                    task_depth[i] = s.max_words;
                }
            };
            std::vector<std::thread> pool;
            pool.reserve(threads);
            for (int t = 0; t < threads; ++t) pool.emplace_back([&] { run_on_big_stack(worker); });
            for (auto& t : pool) t.join();

            report.verdict = Verdict::not_entropic;
            bool timed_out = false;
            for (std::size_t i = 0; i < tasks.size(); ++i) {
                report.nodes += task_nodes[i];
                report.max_words = std::max(report.max_words, task_depth[i]);
                if (verdicts[i] == Verdict::timeout) timed_out = true;
                if (verdicts[i] == Verdict::entropic && report.verdict != Verdict::entropic) {
                    report.verdict = Verdict::entropic;
                    cert_words = certs[i];  // least task index = lexicographically least certificate
                }
            }
            if (report.verdict != Verdict::entropic && timed_out) report.verdict = Verdict::timeout;
        }
    }

    if (report.verdict == Verdict::entropic) {
        AffineCode code = words_to_code(p, M.m, cert_words);
        if (!verify_entropic_certificate(M, code))
            throw std::logic_error("search produced a certificate that fails re-verification");
        report.certificate = std::move(code);
    }
    return report;
}

MinorClosureReport minor_closure_check(const RankTable& M, int p, const AffineCode& c) {
    MinorClosureReport out;
    if (c.s != p || !verify_entropic_certificate(M, c)) {
        out.all_ok = false;
        MinorCertificate item;
        item.detail = "certificate does not certify M";
        out.items.push_back(item);
        return out;
    }
    out.all_ok = true;
    const FiniteDistribution mu = code_to_distribution(c);
    for (int e = 0; e < M.m; ++e) {
        // Deletion: marginal onto the other coordinates.
        {
            MinorCertificate item;
            item.element = e;
            item.contraction = false;
            const SubsetMask keep = M.ground() & ~(SubsetMask{1} << e);
            const FiniteDistribution nu = marginal(mu, keep);
            const AffineCode minor_code = distribution_to_code(nu);
            item.ok = verify_entropic_certificate(restriction(M, keep), minor_code);
            if (!item.ok) item.detail = "marginal code does not certify the deletion";
            out.all_ok = out.all_ok && item.ok;
            out.items.push_back(std::move(item));
        }
        // Contraction, for elements of rank 1: condition on the element's
        // value in the first codeword.
        if (M.r(SubsetMask{1} << e) == 1) {
            MinorCertificate item;
            item.element = e;
            item.contraction = true;
            const int x = c.word(0)[e];
            const FiniteDistribution nu = condition_on_element(mu, e, x);
            const AffineCode minor_code = distribution_to_code(nu);
            item.ok = verify_entropic_certificate(contraction(M, SubsetMask{1} << e), minor_code);
            if (!item.ok) item.detail = "conditioned code does not certify the contraction";
            out.all_ok = out.all_ok && item.ok;
            out.items.push_back(std::move(item));
        }
    }
    return out;
}

}  // namespace entromat
