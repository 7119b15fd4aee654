#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmotif/lattice.hpp"
#include "pmotif/matrix.hpp"

namespace pmotif {

enum class Ambient { SolidTorus, ThickenedTorus, ThreeTorus };
enum class Family { T0, T1, T2, T3 };

std::string_view to_string(Ambient ambient);
std::string_view to_string(Family family);
// Lattice dimension of the covers of each ambient: 1, 2, 3.
int cover_dim(Ambient ambient);
Ambient ambient_of(Family family);

// Torus-type link in one of the three ambients. Always stored canonically;
// the only way to build one is canonicalize() or parse_elementary().
class ElementaryLink {
 public:
  Family family() const noexcept { return family_; }
  Ambient ambient() const noexcept { return ambient_of(family_); }
  const IntVec& params() const noexcept { return params_; }
  Int p() const { return params_[0]; }
  Int q() const { return params_[1]; }

  friend bool operator==(const ElementaryLink&, const ElementaryLink&) = default;
  friend auto operator<=>(const ElementaryLink& a, const ElementaryLink& b) {
    if (auto c = a.family_ <=> b.family_; c != 0) return c;
    return a.params_ <=> b.params_;
  }

 private:
  friend ElementaryLink canonicalize(Family family, IntVec raw);
  ElementaryLink(Family family, IntVec params) : family_(family), params_(std::move(params)) {}

  Family family_;
  IntVec params_;
};

// Sign flip so the first nonzero parameter is positive, then the solid-torus
// rewrite T0(p,q) -> T1(p-1,(p-1)q/p) whenever p >= 1 divides q.
// Throws InvalidParams on forbidden zero tuples or wrong arity.
ElementaryLink canonicalize(Family family, IntVec raw);

bool is_isotopic(const ElementaryLink& a, const ElementaryLink& b);
Int components(const ElementaryLink& link);
// Sorted multiset of sign-normalized primitive classes, one per component.
std::vector<IntVec> homology_classes(const ElementaryLink& link);

// Lift to the cover given by the canonical Hermite basis of `cover`.
ElementaryLink lift(const ElementaryLink& link, const Lattice& cover);
// Lift using the literal cover basis (columns), which must have positive
// determinant. Composes exactly: lift(lift(E, B1), B2) == lift(E, B1 * B2).
ElementaryLink lift(const ElementaryLink& link, const Matrix& cover_basis);
// Solid-torus shorthand for the degree-n cyclic cover.
ElementaryLink lift(const ElementaryLink& link, Int degree);

// Throws NotAdmissible for the solid torus or det(A) != 1, and
// AmbientMismatch when A has the wrong size.
ElementaryLink dehn_twist(const ElementaryLink& link, const Matrix& twist);

// A in SL(2,Z) with A x = (gcd(x), 0); similarly in SL(3,Z) for 3-vectors.
Matrix sl_reducer(const IntVec& x);

enum class MotifStatus { Exact, NotUnique, BestKnown };
std::string_view to_string(MotifStatus status);

struct MinimalMotif {
  ElementaryLink link;
  MotifStatus status;
  // Other minimal motifs of the same periodic tangle when status is NotUnique.
  std::vector<ElementaryLink> alternatives;
  std::string note;
};
MinimalMotif minimal_motif(const ElementaryLink& link);

enum class Verdict { Yes, No, Unknown };
std::string_view to_string(Verdict verdict);

// Witness of a common cover. Solid torus: cyclic degrees. Thickened torus
// and 3-torus: canon(lift(dehn_twist(E_i, twist_i), lattice_i)) == common.
struct ScaleWitness {
  Int degree0 = 0;
  Int degree1 = 0;
  std::optional<Matrix> twist0, twist1;
  std::optional<Lattice> lattice0, lattice1;
  std::optional<ElementaryLink> common;
};

struct ScaleVerdict {
  Verdict verdict = Verdict::Unknown;
  std::optional<ScaleWitness> witness;
  // For No: the separating invariant. For Unknown: what was searched.
  std::string reason;
};

ScaleVerdict scale_equivalent(const ElementaryLink& a, const ElementaryLink& b, Int search_bound = 64);

// Replays a Yes witness; false if it does not produce a common link.
bool replay(const ElementaryLink& a, const ElementaryLink& b, const ScaleWitness& witness);

// Largest common quotient of two quotients of `covered`. With H_i the
// cover bases, quotient_i = H_i * x / det(H_i) must be integral, otherwise
// NoCommonQuotient. The result satisfies (as literal bases)
//   lift(quotient, quotient_map_i) == part_i,
//   lift(part_i, H_i) == covered,
//   quotient_map_i * H_i == cover_basis.
struct JoinQuotient {
  ElementaryLink quotient;
  Matrix cover_basis;  // covered -> quotient
  Lattice cover;       // Hermite form of cover_basis
  ElementaryLink part0, part1;
  Matrix quotient_map0, quotient_map1;
};
JoinQuotient join_quotient(const ElementaryLink& covered, const Lattice& cover0, const Lattice& cover1);

std::string format_elementary(const ElementaryLink& link);
ElementaryLink parse_elementary(std::string_view text);

}  // namespace pmotif
