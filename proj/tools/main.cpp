// entromat: decide, verify and certify entropic / secret-sharing / almost
// affine / linearly representable status of small matroids, plus the exact
// polar-transform module.  See README.md for the JSON formats.

#include "entromat/affine_code.hpp"
#include "entromat/catalog.hpp"
#include "entromat/distribution.hpp"
#include "entromat/entropic_search.hpp"
#include "entromat/errors.hpp"
#include "entromat/fp_linear.hpp"
#include "entromat/json_io.hpp"
#include "entromat/polar.hpp"
#include "entromat/rank_table.hpp"
#include "entromat/reproduce.hpp"
#include "entromat/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

using namespace entromat;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;   // verdict "no" (not entropic, no minor, ...)
constexpr int kExitBadInput = 2;   // malformed input, axiom violation, timeout
constexpr int kExitCapability = 3; // outside supported caps

json base_report(const std::string& command, const std::vector<std::string>& inputs) {
    json rep;
    rep["schema_version"] = kReportSchemaVersion;
    rep["tool_version"] = kVersion;
    rep["command"] = command;
    json digests = json::array();
    for (const auto& path : inputs) {
        json d;
        d["path"] = path;
        d["fnv64"] = file_digest(path);
        digests.push_back(std::move(d));
    }
    rep["inputs"] = std::move(digests);
    return rep;
}

void emit(const json& rep, const std::string& report_path, bool as_json) {
    if (!report_path.empty()) write_json_file(report_path, rep);
    if (as_json) std::cout << rep.dump(2) << '\n';
}

std::string mask_str(SubsetMask s) {
    std::string out = "{";
    bool first = true;
    for (int e : mask_elements(s)) {
        if (!first) out += ',';
        out += std::to_string(e);
        first = false;
    }
    return out + "}";
}

void print_matrix(const FpMatrix& A) {
    for (int r = 0; r < A.rows; ++r) {
        std::cout << '[';
        for (int c = 0; c < A.cols; ++c) {
            if (c) std::cout << ' ';
            std::cout << A.at(r, c);
        }
        std::cout << "]\n";
    }
}

void print_rank_table(const RankTable& M) {
    std::cout << "m = " << M.m << ", rank by subset mask:\n";
    for (std::size_t s = 0; s < M.rank.size(); ++s) {
        std::cout << static_cast<int>(M.rank[s]) << ((s + 1) % 32 == 0 ? '\n' : ' ');
    }
    if (M.rank.size() % 32 != 0) std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entromat - entropic matroid toolkit"};
    app.require_subcommand(1);

    // ---- axioms ----
    std::string axioms_file;
    bool axioms_json = false;
    auto* cmd_axioms = app.add_subcommand("axioms", "check the rank axioms of a matroid file");
    cmd_axioms->add_option("file", axioms_file, "matroid JSON")->required();
    cmd_axioms->add_flag("--json", axioms_json, "machine-readable output");

    // ---- catalog ----
    std::string catalog_name;
    bool catalog_json = false;
    auto* cmd_catalog = app.add_subcommand("catalog", "print a named matroid");
    cmd_catalog->add_option("name", catalog_name, "catalog name (u24, fano, nonpappus, ...)")->required();
    cmd_catalog->add_flag("--json", catalog_json, "machine-readable output");

    // ---- minor ----
    std::string minor_m, minor_n, minor_report;
    bool minor_json = false;
    auto* cmd_minor = app.add_subcommand("minor", "search for an N-minor of M");
    cmd_minor->add_option("--matroid", minor_m, "matroid JSON (M)")->required();
    cmd_minor->add_option("--pattern", minor_n, "matroid JSON (N)")->required();
    cmd_minor->add_option("--report", minor_report, "write a JSON report");
    cmd_minor->add_flag("--json", minor_json, "machine-readable output");

    // ---- represent ----
    std::string rep_matroid, rep_out, rep_report;
    std::int64_t rep_p = 2;
    bool rep_json = false;
    auto* cmd_rep = app.add_subcommand("represent", "search for an F_p representation");
    cmd_rep->add_option("--matroid", rep_matroid, "matroid JSON")->required();
    cmd_rep->add_option("--p", rep_p, "prime field size")->required();
    cmd_rep->add_option("--out", rep_out, "write the representation JSON");
    cmd_rep->add_option("--report", rep_report, "write a JSON report");
    cmd_rep->add_flag("--json", rep_json, "machine-readable output");

    // ---- entropic ----
    std::string ent_matroid, ent_cert, ent_cert_text, ent_report;
    int ent_p = 2;
    std::uint64_t ent_budget = 1'000'000'000;
    int ent_threads = 1;
    bool ent_json = false;
    auto* cmd_ent = app.add_subcommand("entropic", "decide whether a matroid is p-entropic");
    cmd_ent->add_option("--matroid", ent_matroid, "matroid JSON")->required();
    cmd_ent->add_option("--p", ent_p, "alphabet size >= 2")->required();
    cmd_ent->add_option("--budget", ent_budget, "search node budget (default 1e9)");
    cmd_ent->add_option("--threads", ent_threads, "worker threads (default 1)");
    cmd_ent->add_option("--emit-certificate", ent_cert, "write the certifying code JSON");
    cmd_ent->add_option("--emit-certificate-text", ent_cert_text, "write the certifying code as a sorted text dump");
    cmd_ent->add_option("--report", ent_report, "write a JSON report");
    cmd_ent->add_flag("--json", ent_json, "machine-readable output");

    // ---- distribution ----
    std::string dist_file, dist_report;
    bool dist_json = false;
    auto* cmd_dist = app.add_subcommand("distribution", "entropic rank of a distribution file");
    cmd_dist->add_option("--file", dist_file, "distribution JSON")->required();
    cmd_dist->add_option("--report", dist_report, "write a JSON report");
    cmd_dist->add_flag("--json", dist_json, "machine-readable output");

    // ---- polar ----
    int polar_m = 1, polar_n = 2;
    double polar_eps = 0.1, polar_delta = 0.1;
    std::string polar_mu, polar_report;
    bool polar_json = false;
    auto* cmd_polar = app.add_subcommand("polar", "exact polarization profile and codec");
    cmd_polar->add_option("--m", polar_m, "variables per column")->required();
    cmd_polar->add_option("--n", polar_n, "block length (power of 2)")->required();
    cmd_polar->add_option("--mu", polar_mu, "column distribution JSON")->required();
    cmd_polar->add_option("--eps", polar_eps, "polarization threshold");
    cmd_polar->add_option("--delta", polar_delta, "codec storage threshold");
    cmd_polar->add_option("--report", polar_report, "write the full JSON report");
    cmd_polar->add_flag("--json", polar_json, "machine-readable output");

    // ---- reproduce-paper ----
    std::uint64_t rp_budget = 1'000'000'000;
    unsigned rp_seed = 0;
    int rp_threads = 1;
    std::string rp_report;
    bool rp_json = false;
    auto* cmd_rp = app.add_subcommand("reproduce-paper", "run the full reproduction suite");
    cmd_rp->add_option("--budget", rp_budget, "search node budget (default 1e9)");
    cmd_rp->add_option("--seed", rp_seed, "seed for randomized corpora (default 0)");
    cmd_rp->add_option("--threads", rp_threads, "worker threads (default 1)");
    cmd_rp->add_option("--report", rp_report, "write a JSON report");
    cmd_rp->add_flag("--json", rp_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_axioms) {
            const json j = load_json_file(axioms_file);
            json rep = base_report("axioms", {axioms_file});
            if (j.contains("circuits")) {
                try {
                    const RankTable M = matroid_from_json(j);
                    rep["result"] = {{"valid", true}, {"m", M.m}};
                    emit(rep, "", axioms_json);
                    if (!axioms_json) std::cout << "valid matroid (from circuits), m = " << M.m << "\n";
                    return kExitOk;
                } catch (const std::invalid_argument& e) {
                    if (!axioms_json) std::cout << "invalid: " << e.what() << "\n";
                    rep["result"] = {{"valid", false}, {"message", e.what()}};
                    emit(rep, "", axioms_json);
                    return kExitBadInput;
                }
            }
            if (!j.contains("m") || !j.contains("rank")) throw FormatError("matroid JSON needs \"rank\" or \"circuits\"");
            std::vector<int> table;
            for (const auto& v : j["rank"]) table.push_back(v.get<int>());
            const AxiomReport ar = check_axioms(j["m"].get<int>(), table);
            rep["result"] = {{"valid", ar.valid},
                             {"axiom", axiom_name(ar.violated)},
                             {"witness_a", ar.witness_a},
                             {"witness_b", ar.witness_b},
                             {"message", ar.message}};
            emit(rep, "", axioms_json);
            if (ar.valid) {
                if (!axioms_json) std::cout << "valid matroid\n";
                return kExitOk;
            }
            if (!axioms_json)
                std::cout << "invalid: " << axiom_name(ar.violated) << " violated, witness " << mask_str(ar.witness_a)
                          << (ar.witness_b ? " / " + mask_str(ar.witness_b) : "") << "\n  " << ar.message << "\n";
            return kExitBadInput;
        }

        if (*cmd_catalog) {
            CatalogEntry entry;
            try {
                entry = catalog(catalog_name);
            } catch (const std::invalid_argument& e) {
                std::cerr << e.what() << "\n";
                return kExitBadInput;
            }
            if (catalog_json) {
                json rep = base_report("catalog", {});
                rep["result"] = {{"name", entry.name},
                                 {"matroid", matroid_to_json(entry.matroid)},
                                 {"provenance", entry.provenance}};
                if (entry.representation)
                    rep["result"]["representation"] =
                        representation_to_json(representation_from_matrix(*entry.representation));
                std::cout << rep.dump(2) << '\n';
            } else {
                std::cout << entry.name << ": " << entry.provenance << "\n";
                print_rank_table(entry.matroid);
                if (entry.representation) {
                    std::cout << "representation over F_" << entry.representation->p << ":\n";
                    print_matrix(*entry.representation);
                }
            }
            return kExitOk;
        }

        if (*cmd_minor) {
            const RankTable M = matroid_from_json(load_json_file(minor_m));
            const RankTable N = matroid_from_json(load_json_file(minor_n));
            const auto witness = has_minor(M, N);
            json rep = base_report("minor", {minor_m, minor_n});
            if (witness) {
                rep["result"] = {{"found", true},
                                 {"contract_set", witness->contract_set},
                                 {"restrict_set", witness->restrict_set},
                                 {"element_map", witness->element_map}};
            } else {
                rep["result"] = {{"found", false}};
            }
            emit(rep, minor_report, minor_json);
            if (!minor_json) {
                if (witness)
                    std::cout << "minor found: contract " << mask_str(witness->contract_set) << ", keep "
                              << mask_str(witness->restrict_set) << "\n";
                else
                    std::cout << "no minor\n";
            }
            return witness ? kExitOk : kExitNegative;
        }

        if (*cmd_rep) {
            const RankTable M = matroid_from_json(load_json_file(rep_matroid));
            const RepresentationSearchResult res = find_representation(M, rep_p);
            json rep = base_report("represent", {rep_matroid});
            rep["result"] = {{"found", res.representation.has_value()}, {"nodes", res.nodes}, {"p", rep_p}};
            if (res.representation) {
                rep["result"]["representation"] = representation_to_json(*res.representation);
                if (!rep_out.empty()) write_json_file(rep_out, representation_to_json(*res.representation));
            }
            emit(rep, rep_report, rep_json);
            if (!rep_json) {
                if (res.representation) {
                    std::cout << "representable over F_" << rep_p << " (" << res.nodes << " nodes):\n";
                    print_matrix(representation_matrix(*res.representation));
                } else {
                    std::cout << "not representable over F_" << rep_p << "; search exhausted after " << res.nodes
                              << " nodes\n";
                }
            }
            return res.representation ? kExitOk : kExitNegative;
        }

        if (*cmd_ent) {
            const RankTable M = matroid_from_json(load_json_file(ent_matroid));
            SearchOptions opts;
            opts.node_budget = ent_budget;
            opts.threads = ent_threads;
            const auto t0 = std::chrono::steady_clock::now();
            const SearchReport sr = is_p_entropic(M, ent_p, opts);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            json rep = base_report("entropic", {ent_matroid});
            rep["result"] = {{"verdict", verdict_name(sr.verdict)},
                             {"p", ent_p},
                             {"nodes", sr.nodes},
                             {"max_words", sr.max_words},
                             {"budget", ent_budget},
                             {"symmetry", sr.symmetry_trace}};
            rep["wall_time_s"] = secs;
            if (sr.certificate) {
                rep["result"]["certificate"] = code_to_json(*sr.certificate);
                if (!ent_cert.empty()) write_json_file(ent_cert, code_to_json(*sr.certificate));
                if (!ent_cert_text.empty()) {
                    std::ofstream out(ent_cert_text);
                    if (!out) throw FormatError("cannot write " + ent_cert_text);
                    out << code_text_dump(*sr.certificate);
                }
            }
            emit(rep, ent_report, ent_json);
            if (!ent_json)
                std::cout << "verdict: " << verdict_name(sr.verdict) << " (p = " << ent_p << ", " << sr.nodes
                          << " nodes, max depth " << sr.max_words << ", " << secs << " s)\n";
            switch (sr.verdict) {
                case Verdict::entropic: return kExitOk;
                case Verdict::not_entropic: return kExitNegative;
                case Verdict::timeout: return kExitBadInput;
            }
        }

        if (*cmd_dist) {
            const FiniteDistribution mu = distribution_from_json(load_json_file(dist_file));
            const auto ranks = entropic_rank(mu);
            const EntropicMatroidResult em = as_entropic_matroid(mu);
            json rep = base_report("distribution", {dist_file});
            json table = json::array();
            for (SubsetMask s = 0; s < ranks.size(); ++s)
                table.push_back({{"subset", s}, {"entropy", ranks[s].value}, {"integral", ranks[s].integral}});
            rep["result"] = {{"q", mu.q}, {"m", mu.m}, {"entropies", std::move(table)}};
            rep["result"]["is_entropic_matroid"] = em.matroid.has_value();
            if (em.matroid) rep["result"]["matroid"] = matroid_to_json(*em.matroid);
            if (em.non_integral_subset) rep["result"]["non_integral_subset"] = *em.non_integral_subset;
            emit(rep, dist_report, dist_json);
            if (!dist_json) {
                if (em.matroid) {
                    std::cout << "entropic matroid:\n";
                    print_rank_table(*em.matroid);
                } else if (em.non_integral_subset) {
                    std::cout << "not integral: subset " << mask_str(*em.non_integral_subset) << " has entropy "
                              << ranks[*em.non_integral_subset].value << "\n";
                } else {
                    std::cout << "integral but the rounded table violates the rank axioms\n";
                }
            }
            return em.matroid ? kExitOk : kExitNegative;
        }

        if (*cmd_polar) {
            const FiniteDistribution mu = distribution_from_json(load_json_file(polar_mu));
            if (mu.m != polar_m) throw FormatError("--m does not match the distribution file");
            const SourceModel src = make_source(mu);
            const PolarProfile prof = exact_profile(src, polar_n);
            const PolarSummary sum = polarization_summary(prof, polar_eps);
            const CodecPlan plan = build_codec_plan(prof, polar_delta);
            const PolarCodec codec(src, polar_n, plan);
            const Rational err = codec.exact_block_error();
            json rep = base_report("polar", {polar_mu});
            json profile = json::array();
            for (int i = 0; i < polar_n; ++i) {
                json row = json::array();
                for (SubsetMask s = 0; s < (SubsetMask{1} << polar_m); ++s) row.push_back(prof.at(i, s));
                profile.push_back(std::move(row));
            }
            json stored = json::array();
            for (SubsetMask b : plan.stored) stored.push_back(mask_elements(b));
            rep["result"] = {{"m", polar_m},
                             {"n", polar_n},
                             {"eps", polar_eps},
                             {"delta", polar_delta},
                             {"profile", std::move(profile)},
                             {"non_polarized", sum.non_polarized},
                             {"mean_distance_to_integer", sum.mean_distance},
                             {"plan", std::move(stored)},
                             {"rate", plan.rate},
                             // exact rational as strings: the denominator can
                             // exceed 64 bits at the m*n cap
                             {"block_error", {{"num", numerator(err).str()},
                                              {"den", denominator(err).str()},
                                              {"value", to_double(err)}}}};
            emit(rep, polar_report, polar_json);
            if (!polar_json)
                std::cout << "n = " << polar_n << ", non-polarized indices at eps " << polar_eps << ": "
                          << sum.non_polarized << ", mean distance " << sum.mean_distance << ", rate " << plan.rate
                          << ", exact block error " << to_double(err) << "\n";
            return kExitOk;
        }

        if (*cmd_rp) {
            ReproduceOptions opts;
            opts.budget = rp_budget;
            opts.seed = rp_seed;
            opts.threads = rp_threads;
            const auto results = run_reproduction(opts);
            json rep = base_report("reproduce-paper", {});
            rep["budget"] = rp_budget;
            rep["seed"] = rp_seed;
            json items = json::array();
            bool all = true;
            double wall = 0;
            for (const auto& r : results) {
                items.push_back({{"criterion", r.criterion},
                                 {"key", r.key},
                                 {"pass", r.pass},
                                 {"detail", r.detail}});
                all = all && r.pass;
                wall += r.seconds;
                if (!rp_json)
                    std::printf("[%s] %2d %-36s %s\n", r.pass ? "PASS" : "FAIL", r.criterion, r.key.c_str(),
                                r.detail.c_str());
            }
            rep["checks"] = std::move(items);
            rep["all_pass"] = all;
            rep["wall_time_s"] = wall;
            emit(rep, rp_report, rp_json);
            if (!rp_json) std::printf("%s\n", all ? "all checks passed" : "SOME CHECKS FAILED");
            return all ? kExitOk : kExitNegative;
        }
    } catch (const CapabilityError& e) {
        std::cerr << "capability: " << e.what() << "\n";
        return kExitCapability;
    } catch (const FormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapability;
    }
    return kExitOk;
}
