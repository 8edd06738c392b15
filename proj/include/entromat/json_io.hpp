#pragma once

// JSON formats:
//   matroid        { "m": int, "rank": [int; 2^m] }  (subset index = bitmask)
//                  or { "m": int, "circuits": [[int]] }
//   distribution   { "q": int, "m": int, "atoms": [{ "word": [int], "num": int, "den": int }] }
//   code           { "s": int, "m": int, "words": [[int]] }
//   representation { "p": int, "d": int, "columns": [[int]] }

#include "entromat/affine_code.hpp"
#include "entromat/distribution.hpp"
#include "entromat/fp_linear.hpp"
#include "entromat/rank_table.hpp"

#include <json.hpp>

#include <string>

namespace entromat {

nlohmann::json matroid_to_json(const RankTable& M);
RankTable matroid_from_json(const nlohmann::json& j);

nlohmann::json distribution_to_json(const FiniteDistribution& mu);
FiniteDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json code_to_json(const AffineCode& c);
AffineCode code_from_json(const nlohmann::json& j);

nlohmann::json representation_to_json(const Representation& r);
Representation representation_from_json(const nlohmann::json& j);

// Reads and parses a whole file; throws FormatError on unreadable or invalid
// input.
nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

// FNV-1a over the raw file bytes, for input digests in run reports.
std::string file_digest(const std::string& path);

}  // namespace entromat
