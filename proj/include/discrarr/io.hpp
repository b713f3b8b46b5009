#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "discrarr/arrangement.hpp"
#include "discrarr/discriminantal.hpp"
#include "discrarr/presentation.hpp"

namespace discrarr {

/// {"k": int, "normals": [["p/q", ...], ...]}. Entries may also be JSON integers.
/// Malformed JSON throws ParseError with the byte offset; schema errors throw std::invalid_argument.
Arrangement arrangement_from_json(std::string_view text);
std::string arrangement_to_json(const Arrangement& a);

/// {"t": ["p/q", ...]}
TranslationVector translation_from_json(std::string_view text);
std::string translation_to_json(const TranslationVector& t);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// [[1,2,3],[1,5,6],...] in canonical order.
nlohmann::json presentation_to_json(const Presentation& t);
Presentation presentation_from_json(const nlohmann::json& j, int n, int k);

}  // namespace discrarr
