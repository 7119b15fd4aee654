#include "pmotif/seifert.hpp"

#include <algorithm>
#include <numeric>

#include "pmotif/error.hpp"
#include "readers.hpp"

namespace pmotif {

std::string_view to_string(SeifertExceptional e) {
  switch (e) {
    case SeifertExceptional::None: return "None";
    case SeifertExceptional::SolidTorus: return "SolidTorus";
    case SeifertExceptional::ThickenedTorus: return "ThickenedTorus";
    case SeifertExceptional::TwistedIBundle: return "TwistedIBundle";
  }
  return "?";
}

SeifertSymbol normalize_seifert(SeifertSymbol s) {
  if (s.boundary < 0) throw Error(ErrorKind::InvalidParams, "boundary count must be non-negative");
  std::vector<Slope> kept;
  for (Slope sl : s.slopes) {
    if (sl.beta == 0) throw Error(ErrorKind::InvalidParams, "slope with zero denominator is the fiber itself");
    if (sl.beta < 0) {
      sl.alpha = checked_neg(sl.alpha);
      sl.beta = checked_neg(sl.beta);
    }
    Int g = std::gcd(sl.alpha, sl.beta);
    sl.alpha /= g;
    sl.beta /= g;
    Int reduced = floor_mod(sl.alpha, sl.beta);
    if (reduced != sl.alpha) s.shifted = true;
    sl.alpha = reduced;
    if (sl.alpha == 0) {
      s.shifted = true;
      continue;
    }
    kept.push_back(sl);
  }
  std::sort(kept.begin(), kept.end());
  s.slopes = std::move(kept);

  s.exceptional = SeifertExceptional::None;
  if (s.genus == 0 && s.boundary == 1 && s.slopes.size() <= 1)
    s.exceptional = SeifertExceptional::SolidTorus;
  else if (s.genus == 0 && s.boundary == 2 && s.slopes.empty())
    s.exceptional = SeifertExceptional::ThickenedTorus;
  else if (s.boundary == 1 && ((s.genus == 0 && s.slopes == std::vector<Slope>{{1, 2}, {1, 2}}) ||
                               (s.genus == -1 && s.slopes.empty())))
    s.exceptional = SeifertExceptional::TwistedIBundle;
  return s;
}

namespace {

// With a nonempty boundary each slope may be shifted by an integer, which
// changes a1*b2 - a2*b1 by multiples of b1*b2. The condition holds for some
// representative iff the determinant is congruent to +-1 modulo b1*b2.
bool unimodular_pair(const Slope& a, const Slope& b, Int& witness) {
  Int det = checked_sub(checked_mul(a.alpha, b.beta), checked_mul(b.alpha, a.beta));
  Int m = checked_mul(a.beta, b.beta);
  for (Int target : {Int{1}, Int{-1}}) {
    if (floor_mod(det - target, m) == 0) {
      witness = target;
      return true;
    }
  }
  witness = det;
  return false;
}

std::string n_text(Int n) { return std::to_string(n); }

}  // namespace

Admissibility is_jsj_admissible(const SeifertSymbol& s, Ambient ambient) {
  Admissibility out;
  const Int n = s.boundary;
  const size_t k = s.slopes.size();
  Int min_plain = ambient == Ambient::SolidTorus ? 2 : 3;

  if (s.genus == 0 && k == 2) {
    Int witness = 0;
    bool ok = unimodular_pair(s.slopes[0], s.slopes[1], witness);
    if (n >= 1 && ok) {
      out.admissible = true;
      out.reason = "two singular fibers with a1*b2 - a2*b1 = " + std::to_string(witness) + " and n = " + n_text(n) +
                   " >= 1";
    } else if (n < 1) {
      out.reason = "two singular fibers need n >= 1";
    } else {
      out.reason = "two singular fibers need a1*b2 - a2*b1 = +-1; got " + std::to_string(witness) + " modulo " +
                   std::to_string(s.slopes[0].beta * s.slopes[1].beta);
    }
    return out;
  }
  if (s.genus == 0 && k == 1) {
    out.admissible = n >= 2;
    out.reason = out.admissible ? "one singular fiber with n = " + n_text(n) + " >= 2"
                                : "one singular fiber needs n >= 2";
    return out;
  }
  if (s.genus == 0 && k == 0) {
    out.admissible = n >= min_plain;
    if (out.admissible) {
      out.reason = "no singular fibers with n = " + n_text(n) + " >= " + n_text(min_plain);
      if (ambient == Ambient::SolidTorus && n == 2) {
        out.exception = true;
        out.reason += "; M(0,2;) is the thickened torus, whose fibration is not unique; this occurs only for T1(0,0)";
      }
    } else {
      out.reason = "no singular fibers needs n >= " + n_text(min_plain);
    }
    return out;
  }
  if (s.genus == 1 && k == 0 && ambient == Ambient::ThreeTorus) {
    out.admissible = n >= 1;
    out.reason = out.admissible ? "genus one base with n = " + n_text(n) + " >= 1" : "genus one base needs n >= 1";
    return out;
  }
  out.reason = "not in the list of Seifert fibered pieces for " + std::string(to_string(ambient));
  return out;
}

std::string format_seifert(const SeifertSymbol& s) {
  std::string out = "M(" + std::to_string(s.genus) + "," + std::to_string(s.boundary) + ";";
  for (size_t i = 0; i < s.slopes.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.slopes[i].alpha);
    if (s.slopes[i].beta != 1) out += "/" + std::to_string(s.slopes[i].beta);
  }
  return out + ")";
}

namespace detail {

SeifertSymbol read_seifert(Scanner& in) {
  SeifertSymbol s;
  in.expect('M');
  in.expect('(');
  s.genus = in.integer();
  in.expect(',');
  s.boundary = in.integer();
  if (in.accept(';')) {
    if (in.peek() != ')') {
      do {
        Slope sl;
        sl.alpha = in.integer();
        sl.beta = in.accept('/') ? in.integer() : 1;
        s.slopes.push_back(sl);
      } while (in.accept(','));
    }
  }
  in.expect(')');
  return normalize_seifert(s);
}

}  // namespace detail

SeifertSymbol parse_seifert(std::string_view text) {
  detail::Scanner in(text);
  SeifertSymbol s = detail::read_seifert(in);
  in.expect_end();
  return s;
}

}  // namespace pmotif
