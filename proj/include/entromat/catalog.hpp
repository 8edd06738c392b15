#pragma once

// Named matroids used throughout: uniform lines, Fano and its dual from
// their explicit binary matrices, the non-Pappus matroid induced by the
// Simonis-Ashikhmin code, and Vamos from its circuit description.

#include "entromat/fp_linear.hpp"
#include "entromat/rank_table.hpp"

#include <optional>
#include <string>
#include <vector>

namespace entromat {

struct CatalogEntry {
    std::string name;
    RankTable matroid;
    std::string provenance;
    std::optional<FpMatrix> representation;  // a known linear representation, when one exists
};

// Known names: u23 u24 u25 u26 u27 u35 fano fano_dual nonpappus vamos, plus
// the generic pattern u_<k>_<n>.  Throws std::invalid_argument on unknown
// names.
CatalogEntry catalog(const std::string& name);

std::vector<std::string> catalog_names();

// The eight dependent (rank-2) triples of the non-Pappus matroid as derived
// from the Simonis-Ashikhmin code.
std::vector<SubsetMask> nonpappus_lines();

}  // namespace entromat
