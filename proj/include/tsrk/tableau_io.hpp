#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tsrk/tableau.hpp"

namespace tsrk {

// JSON-shaped text format:
//   { "name": ..., "s": 2, "radicand": 41,
//     "c": ["0/1", "11/10-1/10*sqrt(41)"],
//     "u": [[...], ...], "v": [...], "A": [[[...], ...], ...],
//     "Atilde": ..., "b": [...], "btilde": [...] }
// A polynomial is an array of scalar strings in ascending powers; [] is zero.

std::string tableau_to_text(const TsrkTableau& t);
/// Throws ParseError on malformed input and TableauError if the structural
/// constraints fail.
TsrkTableau tableau_from_text(std::string_view text);

void save_tableau(const TsrkTableau& t, const std::filesystem::path& path);
TsrkTableau load_tableau(const std::filesystem::path& path);

}  // namespace tsrk
