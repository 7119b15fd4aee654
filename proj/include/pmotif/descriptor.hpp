#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmotif/elementary.hpp"
#include "pmotif/lattice.hpp"
#include "pmotif/seifert.hpp"

namespace pmotif {

// Volumes of the regular ideal tetrahedron and octahedron.
inline constexpr double kTetrahedronVolume = 1.0149416064096536;
inline constexpr double kOctahedronVolume = 3.6638623767088760;
// Smallest volume of an orientable cusped hyperbolic 3-manifold.
inline constexpr double kMinCuspedVolume = 2 * kTetrahedronVolume;
inline constexpr double kVolumeTolerance = 1e-9;

enum class PieceKind { Elementary, Hyperbolic, Seifert, Satellite };

// One JSJ piece of a layered body.
//   Elementary: a torus-type link.
//   Hyperbolic: opaque identifier with an optional volume.
//   Seifert:    opaque Seifert fibered piece given by its symbol.
//   Satellite:  T2(p,q) whose components carry the solid-torus pattern
//               T_l(p',q'), q' != 0.
// Opaque pieces remember the (literal) cover basis they were lifted through;
// two opaque pieces are equal when identifiers and cover bases agree.
struct Piece {
  PieceKind kind = PieceKind::Hyperbolic;
  std::optional<ElementaryLink> link;
  std::optional<ElementaryLink> pattern;
  std::string id;
  std::optional<double> base_volume;
  std::optional<SeifertSymbol> seifert;
  std::optional<Matrix> cover;

  static Piece elementary(ElementaryLink link);
  static Piece hyperbolic(std::string id, std::optional<double> volume = std::nullopt);
  static Piece seifert_piece(SeifertSymbol symbol, std::string id = "");
  static Piece satellite(ElementaryLink outer, ElementaryLink pattern);

  bool opaque() const { return kind == PieceKind::Hyperbolic || kind == PieceKind::Seifert; }
  // base volume times the degree of the recorded cover
  std::optional<double> volume() const;
};

bool same_piece(const Piece& a, const Piece& b);

struct MotifDescriptor {
  Ambient ambient = Ambient::ThickenedTorus;
  // Ordered layering sequence; in the 3-torus a single opaque piece is a
  // non-layered complement and a single T3 link is the bare link.
  std::vector<Piece> body;
  std::vector<std::string> local_links;
  Int knotted_hole_balls = 0;
};

MotifDescriptor bare_descriptor(const ElementaryLink& link);
bool is_bare_elementary(const MotifDescriptor& d);
// True when the body is a layering sequence (3-torus: replicated by covers
// in the layering direction).
bool is_layered(const MotifDescriptor& d);

// Throws InvalidParams / AmbientMismatch on structural violations.
void validate_descriptor(const MotifDescriptor& d);

bool descriptor_equivalent(const MotifDescriptor& a, const MotifDescriptor& b);

struct DegreeBound {
  enum class Kind { Finite, Unbounded, Unknown };
  Kind kind = Kind::Unknown;
  Int value = 0;
  // Every applicable rule and its value, e.g. {"volume", 3}.
  std::vector<std::pair<std::string, Int>> rules;
};
std::string_view to_string(DegreeBound::Kind kind);

DegreeBound cover_degree_bound(const MotifDescriptor& d);

MotifDescriptor lift_descriptor(const MotifDescriptor& d, const Lattice& cover);
// Literal basis version; composes exactly for lower-triangular bases.
MotifDescriptor lift_descriptor(const MotifDescriptor& d, const Matrix& cover_basis);

struct DescriptorMotif {
  enum class Status { Exact, NotUnique, BestKnown, BoundOnly, Unknown };
  Status status = Status::Unknown;
  std::optional<MotifDescriptor> motif;
  std::vector<MotifDescriptor> alternatives;
  Int bound = 0;
  std::string note;
};
std::string_view to_string(DescriptorMotif::Status status);

DescriptorMotif minimal_motif_descriptor(const MotifDescriptor& d);

std::string format_descriptor(const MotifDescriptor& d);
MotifDescriptor parse_descriptor(std::string_view text);
std::string format_piece(const Piece& p);

}  // namespace pmotif
