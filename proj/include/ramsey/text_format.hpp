#pragma once

#include "ramsey/structure.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ramsey {

// Structure text format, one directive per line:
//
//   # comment
//   signature: R/2, S/3
//   size: 4
//   R: 0 1; 1 2
//
// Symbols without a body line have the empty relation. Duplicate tuples,
// arity mismatches and out-of-range entries are FormatErrors.

Structure parse_structure(std::string_view text);

/// Symbols in signature order, tuples in lexicographic order.
std::string render_structure(const Structure & a);

/// Several structures separated by lines consisting of "---".
std::vector<Structure> parse_structures(std::string_view text);

Structure read_structure_file(const std::filesystem::path & path);

std::string read_text_file(const std::filesystem::path & path);

/// Map files: one "i -> j" line per source element, in any order.
std::vector<Element> parse_map(std::string_view text, std::size_t source_size);

std::string render_map(std::span<const Element> map);

std::vector<Element> read_map_file(const std::filesystem::path & path, std::size_t source_size);

} // namespace ramsey
