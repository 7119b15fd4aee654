#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pmotif/diagram.hpp"

namespace pmotif::cli {

// Exit codes are part of the interface.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;  // not equivalent / not admissible
inline constexpr int kUnknown = 2;   // search budget exhausted, bound unknown
inline constexpr int kInputError = 3;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "depth=12,extra=4,states=200000,crossings=10" on top of `base`.
/// Throws Error{Parse}.
SearchBudget parse_budget(std::string_view text, SearchBudget base = {});

inline constexpr const char* kBudgetVariable = "PERIODIC_MOTIF_BUDGET";

}  // namespace pmotif::cli
