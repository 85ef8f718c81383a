#pragma once

// JSON expansion files:
//   {"max_level": N, "dimension": d,
//    "coefficients": [{"level": l, "pos": k, "value": [..d reals..]}, ...]}
// Coefficients are written in (level, pos) order; zero vectors are omitted.

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hardy/haar.hpp"

namespace hardy {

// Errors: MalformedInput (syntax, missing or mistyped fields), OutOfRange
// (level, pos, max_level, dimension), DuplicateKey (repeated (level,pos) or a
// repeated object key), DimensionMismatch (value length != dimension).
HaarExpansion parse_expansion(std::string_view text);
HaarExpansion expansion_from_json(const nlohmann::json& doc);
nlohmann::ordered_json expansion_to_json(const HaarExpansion& u);

HaarExpansion load(const std::filesystem::path& path);
void save(const std::filesystem::path& path, const HaarExpansion& u);

}  // namespace hardy
