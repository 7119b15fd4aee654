#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pmotif/elementary.hpp"

namespace pmotif {

// Singular fiber slope alpha/beta (alpha * fiber + beta * section boundary).
// Ordered by denominator, then numerator.
struct Slope {
  Int alpha = 0;
  Int beta = 1;
  friend bool operator==(const Slope&, const Slope&) = default;
  friend auto operator<=>(const Slope& a, const Slope& b) {
    if (a.beta != b.beta) return a.beta <=> b.beta;
    return a.alpha <=> b.alpha;
  }
};

enum class SeifertExceptional { None, SolidTorus, ThickenedTorus, TwistedIBundle };
std::string_view to_string(SeifertExceptional e);

// M(g, b; a1/b1, ...). Negative genus means a non-orientable base.
struct SeifertSymbol {
  Int genus = 0;
  Int boundary = 0;
  std::vector<Slope> slopes;
  SeifertExceptional exceptional = SeifertExceptional::None;
  // True when normalization shifted some slope by an integer (the mod-1
  // convention for bounded symbols) or dropped an integer slope.
  bool shifted = false;

  // Equality ignores the bookkeeping flags.
  friend bool operator==(const SeifertSymbol& a, const SeifertSymbol& b) {
    return a.genus == b.genus && a.boundary == b.boundary && a.slopes == b.slopes;
  }
};

// Reduces each slope into (0,1), drops integer slopes, sorts, and tags the
// manifolds with several fibrations. Throws InvalidParams for beta == 0 or
// negative boundary count.
SeifertSymbol normalize_seifert(SeifertSymbol s);

struct Admissibility {
  bool admissible = false;
  // The fibration is not unique (solid torus M(0,2;) case).
  bool exception = false;
  std::string reason;
};

// Membership in the list of Seifert fibered JSJ pieces that can occur in a
// non-split link complement in the given ambient.
Admissibility is_jsj_admissible(const SeifertSymbol& s, Ambient ambient);

std::string format_seifert(const SeifertSymbol& s);
SeifertSymbol parse_seifert(std::string_view text);

}  // namespace pmotif
