#include "entromat/catalog.hpp"

#include "entromat/affine_code.hpp"
#include "entromat/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace entromat {

namespace {

FpMatrix fano_matrix() {
    return make_fp_matrix(2, {
                                 {1, 1, 0, 0, 0, 1, 1},
                                 {1, 0, 1, 0, 1, 0, 1},
                                 {1, 0, 0, 1, 1, 1, 0},
                             });
}

FpMatrix fano_dual_matrix() {
    return make_fp_matrix(2, {
                                 {1, 1, 1, 1, 1, 1, 1},
                                 {1, 1, 0, 0, 0, 1, 1},
                                 {1, 0, 1, 0, 1, 0, 1},
                                 {1, 0, 0, 1, 1, 1, 0},
                             });
}

// U_{2,p+1} pattern (0,1),(1,0),(1,1),...,(1,p-1) over F_p.
FpMatrix line_matrix(std::int64_t p) {
    std::vector<std::vector<int>> rows(2, std::vector<int>(static_cast<std::size_t>(p) + 1, 0));
    rows[0][0] = 0;
    rows[1][0] = 1;
    for (int c = 1; c <= p; ++c) {
        rows[0][c] = 1;
        rows[1][c] = (c - 1) % static_cast<int>(p);
    }
    return make_fp_matrix(p, rows);
}

RankTable nonpappus_table() {
    static const RankTable cached = [] {
        const AffineCode code = simonis_ashikhmin_code();
        const AlmostAffineResult res = is_almost_affine(code);
        if (!res.matroid) throw std::logic_error("Simonis-Ashikhmin code is not almost affine");
        const RankTable& M = *res.matroid;
        // Cross-check: rank min(|X|,3) everywhere except exactly eight
        // triples of rank 2.
        int lines = 0;
        for (SubsetMask s = 0;; ++s) {
            const int expect = std::min(popcount(s), 3);
            if (M.r(s) != expect) {
                if (popcount(s) == 3 && M.r(s) == 2)
                    ++lines;
                else
                    throw std::logic_error("unexpected rank in code-induced non-Pappus matroid");
            }
            if (s == M.ground()) break;
        }
        if (lines != 8) throw std::logic_error("code-induced matroid does not have eight dependent lines");
        return M;
    }();
    return cached;
}

RankTable vamos_table() {
    // Pairs {0,1},{2,3},{4,5},{6,7}; the union of two pairs is a circuit for
    // all pairs-of-pairs except {4,5,6,7}.
    const std::vector<std::vector<int>> four_circuits = {
        {0, 1, 2, 3}, {0, 1, 4, 5}, {0, 1, 6, 7}, {2, 3, 4, 5}, {2, 3, 6, 7}};
    std::vector<std::vector<int>> circ = four_circuits;
    // Every 5-set containing no 4-circuit is itself a circuit (rank is 4).
    for (SubsetMask s = 0; s < (SubsetMask{1} << 8); ++s) {
        if (popcount(s) != 5) continue;
        bool contains = false;
        for (const auto& c : four_circuits) {
            SubsetMask cm = 0;
            for (int e : c) cm |= SubsetMask{1} << e;
            if (is_subset(cm, s)) {
                contains = true;
                break;
            }
        }
        if (!contains) circ.push_back(mask_elements(s));
    }
    return matroid_from_circuits(8, circ);
}

std::string mask_str(SubsetMask s) {
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

}  // namespace

std::vector<SubsetMask> nonpappus_lines() {
    const RankTable M = nonpappus_table();
    std::vector<SubsetMask> lines;
    for (SubsetMask s = 0;; ++s) {
        if (popcount(s) == 3 && M.r(s) == 2) lines.push_back(s);
        if (s == M.ground()) break;
    }
    return lines;
}

std::vector<std::string> catalog_names() {
    return {"u23", "u24", "u25", "u26", "u27", "u35", "fano", "fano_dual", "nonpappus", "vamos"};
}

CatalogEntry catalog(const std::string& name) {
    CatalogEntry e;
    e.name = name;
    if (name == "u23" || name == "u24" || name == "u26") {
        const std::int64_t p = name == "u23" ? 2 : name == "u24" ? 3 : 5;
        e.matroid = uniform_matroid(2, static_cast<int>(p) + 1);
        e.representation = line_matrix(p);
        e.provenance = "uniform matroid U_{2," + std::to_string(p + 1) +
                       "}; F_" + std::to_string(p) + "-representable line";
        return e;
    }
    if (name == "u25") {
        e.matroid = uniform_matroid(2, 5);
        e.provenance = "uniform matroid U_{2,5}; forbidden minor of ternary matroids";
        return e;
    }
    if (name == "u27") {
        e.matroid = uniform_matroid(2, 7);
        e.provenance = "uniform matroid U_{2,7}; the line too long for alphabet size 5";
        return e;
    }
    if (name == "u35") {
        e.matroid = uniform_matroid(3, 5);
        e.provenance = "uniform matroid U_{3,5} = U_{2,5}*; forbidden minor of ternary matroids";
        return e;
    }
    if (name == "fano") {
        e.representation = fano_matrix();
        e.matroid = column_matroid(*e.representation);
        e.provenance = "Fano plane F_7: column matroid of its 3x7 binary matrix";
        return e;
    }
    if (name == "fano_dual") {
        e.representation = fano_dual_matrix();
        e.matroid = column_matroid(*e.representation);
        e.provenance = "dual Fano plane F_7*: column matroid of its 4x7 binary matrix";
        return e;
    }
    if (name == "nonpappus") {
        e.matroid = nonpappus_table();
        std::ostringstream prov;
        prov << "non-Pappus matroid: induced by the Simonis-Ashikhmin row-space code over "
                "[9]; dependent lines derived from the code:";
        for (SubsetMask s : nonpappus_lines()) prov << ' ' << mask_str(s);
        e.provenance = prov.str();
        return e;
    }
    if (name == "vamos") {
        e.matroid = vamos_table();
        e.provenance = "Vamos matroid: circuits are the five pair-unions {0,1}{2,3}, {0,1}{4,5}, "
                       "{0,1}{6,7}, {2,3}{4,5}, {2,3}{6,7} and the 5-sets containing none of them";
        return e;
    }
    // Generic uniform pattern u_<k>_<n>.
    if (name.size() > 2 && name[0] == 'u' && name[1] == '_') {
        const auto second = name.find('_', 2);
        if (second != std::string::npos) {
            try {
                const int k = std::stoi(name.substr(2, second - 2));
                const int n = std::stoi(name.substr(second + 1));
                e.matroid = uniform_matroid(k, n);
                e.provenance = "uniform matroid U_{" + std::to_string(k) + "," + std::to_string(n) + "}";
                return e;
            } catch (const std::invalid_argument&) {
            } catch (const std::out_of_range&) {
            }
        }
    }
    throw std::invalid_argument("unknown catalog name: " + name);
}

}  // namespace entromat
