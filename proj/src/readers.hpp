#pragma once

// Scanner-level readers shared by the text formats that embed links,
// Seifert symbols and matrices inside larger expressions.

#include "pmotif/elementary.hpp"
#include "pmotif/seifert.hpp"
#include "scanner.hpp"

namespace pmotif::detail {

ElementaryLink read_elementary(Scanner& in);
SeifertSymbol read_seifert(Scanner& in);
bool at_elementary(Scanner& in);

}  // namespace pmotif::detail
