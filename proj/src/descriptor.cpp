#include "pmotif/descriptor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "pmotif/error.hpp"
#include "readers.hpp"

namespace pmotif {

std::string_view to_string(DegreeBound::Kind kind) {
  switch (kind) {
    case DegreeBound::Kind::Finite: return "Finite";
    case DegreeBound::Kind::Unbounded: return "Unbounded";
    case DegreeBound::Kind::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view to_string(DescriptorMotif::Status status) {
  switch (status) {
    case DescriptorMotif::Status::Exact: return "Exact";
    case DescriptorMotif::Status::NotUnique: return "NotUnique";
    case DescriptorMotif::Status::BestKnown: return "BestKnown";
    case DescriptorMotif::Status::BoundOnly: return "BoundOnly";
    case DescriptorMotif::Status::Unknown: return "Unknown";
  }
  return "?";
}

Piece Piece::elementary(ElementaryLink link) {
  Piece p;
  p.kind = PieceKind::Elementary;
  p.link = std::move(link);
  return p;
}

Piece Piece::hyperbolic(std::string id, std::optional<double> volume) {
  Piece p;
  p.kind = PieceKind::Hyperbolic;
  p.id = std::move(id);
  p.base_volume = volume;
  return p;
}

Piece Piece::seifert_piece(SeifertSymbol symbol, std::string id) {
  Piece p;
  p.kind = PieceKind::Seifert;
  p.seifert = normalize_seifert(std::move(symbol));
  p.id = std::move(id);
  return p;
}

Piece Piece::satellite(ElementaryLink outer, ElementaryLink pattern) {
  Piece p;
  p.kind = PieceKind::Satellite;
  p.link = std::move(outer);
  p.pattern = std::move(pattern);
  return p;
}

std::optional<double> Piece::volume() const {
  if (!base_volume) return std::nullopt;
  double degree = cover ? static_cast<double>(determinant(*cover)) : 1.0;
  return *base_volume * degree;
}

namespace {

bool t2_family(const Piece& p) {
  return p.kind == PieceKind::Satellite || (p.kind == PieceKind::Elementary && p.link->family() == Family::T2);
}

int piece_cover_dim(const MotifDescriptor& d) {
  if (d.ambient == Ambient::ThreeTorus && is_layered(d)) return 2;
  return cover_dim(d.ambient);
}

bool lower_triangular(const Matrix& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = r + 1; c < m.cols(); ++c)
      if (m(r, c) != 0) return false;
  return true;
}

}  // namespace

bool same_piece(const Piece& a, const Piece& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case PieceKind::Elementary: return *a.link == *b.link;
    case PieceKind::Satellite: return *a.link == *b.link && *a.pattern == *b.pattern;
    case PieceKind::Hyperbolic:
    case PieceKind::Seifert: {
      if (a.id != b.id) return false;
      if (a.kind == PieceKind::Seifert && !(*a.seifert == *b.seifert)) return false;
      // Covers are compared as literal bases: later lifts act in the
      // coordinates that basis defines.
      return a.cover == b.cover;
    }
  }
  return false;
}

MotifDescriptor bare_descriptor(const ElementaryLink& link) {
  MotifDescriptor d;
  d.ambient = link.ambient();
  d.body.push_back(Piece::elementary(link));
  return d;
}

bool is_bare_elementary(const MotifDescriptor& d) {
  return d.body.size() == 1 && d.body[0].kind == PieceKind::Elementary && d.local_links.empty() &&
         d.knotted_hole_balls == 0;
}

bool is_layered(const MotifDescriptor& d) {
  if (d.ambient == Ambient::SolidTorus || d.body.empty()) return false;
  if (d.ambient == Ambient::ThickenedTorus) return true;
  return d.body.size() >= 2 || t2_family(d.body[0]);
}

void validate_descriptor(const MotifDescriptor& d) {
  if (d.knotted_hole_balls < 0) throw Error(ErrorKind::InvalidParams, "knotted hole ball count must be non-negative");
  if (d.ambient == Ambient::SolidTorus && d.body.size() > 1)
    throw Error(ErrorKind::InvalidParams, "layering sequences need a thickened torus or 3-torus ambient");
  const int dim = piece_cover_dim(d);
  for (const Piece& p : d.body) {
    switch (p.kind) {
      case PieceKind::Elementary: {
        Ambient expected = d.ambient;
        if (d.ambient == Ambient::ThreeTorus && d.body.size() >= 2) expected = Ambient::ThickenedTorus;
        if (d.ambient == Ambient::ThreeTorus && d.body.size() == 1 && p.link->family() == Family::T2)
          expected = Ambient::ThickenedTorus;
        if (p.link->ambient() != expected)
          throw Error(ErrorKind::AmbientMismatch, format_elementary(*p.link) + " cannot be a piece here (" +
                                                      std::string(to_string(d.ambient)) + ")");
        break;
      }
      case PieceKind::Satellite:
        if (d.ambient == Ambient::SolidTorus)
          throw Error(ErrorKind::AmbientMismatch, "satellite pieces need a thickened torus or 3-torus ambient");
        if (p.link->family() != Family::T2 || p.pattern->ambient() != Ambient::SolidTorus || p.pattern->q() == 0)
          throw Error(ErrorKind::InvalidParams, "satellite needs a T2 outer link and a T0/T1 pattern with q != 0");
        break;
      case PieceKind::Hyperbolic:
        if (p.base_volume && !(*p.base_volume > 0))
          throw Error(ErrorKind::InvalidParams, "hyperbolic volume must be positive");
        [[fallthrough]];
      case PieceKind::Seifert:
        if (p.id.empty() && p.kind == PieceKind::Hyperbolic)
          throw Error(ErrorKind::InvalidParams, "hyperbolic piece needs an identifier");
        if (p.cover && (p.cover->rows() != dim || !p.cover->square() || determinant(*p.cover) <= 0))
          throw Error(ErrorKind::InvalidParams, "piece cover must be a " + std::to_string(dim) + "x" +
                                                    std::to_string(dim) + " basis with positive determinant");
        break;
    }
  }
}

bool descriptor_equivalent(const MotifDescriptor& a, const MotifDescriptor& b) {
  if (a.ambient != b.ambient) throw Error(ErrorKind::AmbientMismatch, "descriptors live in different ambients");
  if (a.knotted_hole_balls != b.knotted_hole_balls) return false;
  auto la = a.local_links, lb = b.local_links;
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  if (la != lb) return false;
  const size_t n = a.body.size();
  if (n != b.body.size()) return false;
  if (n == 0) return true;
  auto matches_at = [&](size_t shift) {
    for (size_t i = 0; i < n; ++i)
      if (!same_piece(a.body[i], b.body[(i + shift) % n])) return false;
    return true;
  };
  if (a.ambient == Ambient::ThreeTorus && is_layered(a)) {
    for (size_t shift = 0; shift < n; ++shift)
      if (matches_at(shift)) return true;
    return false;
  }
  return matches_at(0);
}

DegreeBound cover_degree_bound(const MotifDescriptor& d) {
  DegreeBound out;
  if (is_bare_elementary(d)) {
    out.kind = DegreeBound::Kind::Unbounded;
    return out;
  }
  bool any_hyperbolic = false, all_volumes = true;
  double volume = 0;
  for (const Piece& p : d.body) {
    if (p.kind != PieceKind::Hyperbolic) continue;
    any_hyperbolic = true;
    if (auto v = p.volume())
      volume += *v;
    else
      all_volumes = false;
  }
  if (any_hyperbolic && all_volumes) {
    auto bound = static_cast<Int>(std::floor(volume / kMinCuspedVolume + kVolumeTolerance));
    out.rules.emplace_back("volume", std::max<Int>(1, bound));
  }
  if (!d.local_links.empty()) out.rules.emplace_back("split", static_cast<Int>(d.local_links.size()));
  if (d.knotted_hole_balls > 0) out.rules.emplace_back("knotted-hole-ball", d.knotted_hole_balls);
  for (const Piece& p : d.body)
    if (p.kind == PieceKind::Satellite)
      out.rules.emplace_back("satellite", checked_mul(gcd_of(p.link->params()), std::abs(p.pattern->q())));
  if (is_layered(d) && d.body.size() >= 2) {
    size_t pairs = d.ambient == Ambient::ThreeTorus ? d.body.size() : d.body.size() - 1;
    for (size_t i = 0; i < pairs; ++i) {
      const Piece& a = d.body[i];
      const Piece& b = d.body[(i + 1) % d.body.size()];
      if (a.kind != PieceKind::Elementary || b.kind != PieceKind::Elementary) continue;
      Int det = std::abs(checked_sub(checked_mul(a.link->p(), b.link->q()), checked_mul(b.link->p(), a.link->q())));
      if (det != 0) out.rules.emplace_back("layering", det);
    }
  }
  if (out.rules.empty()) return out;
  out.kind = DegreeBound::Kind::Finite;
  out.value = out.rules.front().second;
  for (const auto& [name, value] : out.rules) out.value = std::min(out.value, value);
  return out;
}

namespace {

Piece lift_piece(const Piece& p, const Matrix& basis) {
  Piece out = p;
  switch (p.kind) {
    case PieceKind::Elementary: out.link = lift(*p.link, basis); break;
    case PieceKind::Satellite: {
      out.link = lift(*p.link, basis);
      // Each outer component is covered k times, where k balances the
      // component count against the degree.
      Int n = determinant(basis);
      Int k = checked_mul(n, gcd_of(p.link->params())) / gcd_of(out.link->params());
      out.pattern = lift(*p.pattern, k);
      break;
    }
    case PieceKind::Hyperbolic:
    case PieceKind::Seifert: {
      Matrix accumulated = p.cover ? *p.cover * basis : basis;
      if (accumulated == Matrix::identity(accumulated.rows()))
        out.cover.reset();
      else
        out.cover = accumulated;
      break;
    }
  }
  return out;
}

}  // namespace

MotifDescriptor lift_descriptor(const MotifDescriptor& d, const Matrix& cover_basis) {
  validate_descriptor(d);
  const int dim = cover_dim(d.ambient);
  if (!cover_basis.square() || cover_basis.rows() != dim)
    throw Error(ErrorKind::AmbientMismatch, "cover of dimension " + std::to_string(cover_basis.rows()) +
                                                " does not match " + std::string(to_string(d.ambient)));
  Int n = determinant(cover_basis);
  if (n <= 0) throw Error(ErrorKind::InvalidParams, "cover basis must have positive determinant");

  MotifDescriptor out;
  out.ambient = d.ambient;
  out.knotted_hole_balls = checked_mul(d.knotted_hole_balls, n);
  for (Int copy = 0; copy < n; ++copy)
    out.local_links.insert(out.local_links.end(), d.local_links.begin(), d.local_links.end());

  if (d.ambient == Ambient::ThreeTorus && is_layered(d)) {
    Matrix basis = lower_triangular(cover_basis) ? cover_basis : hnf(cover_basis).basis();
    Int layers = basis(0, 0);
    Matrix block(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) block(r, c) = basis(r + 1, c + 1);
    for (Int copy = 0; copy < layers; ++copy)
      for (const Piece& p : d.body) out.body.push_back(lift_piece(p, block));
  } else {
    for (const Piece& p : d.body) out.body.push_back(lift_piece(p, cover_basis));
  }
  return out;
}

MotifDescriptor lift_descriptor(const MotifDescriptor& d, const Lattice& cover) {
  return lift_descriptor(d, cover.basis());
}

DescriptorMotif minimal_motif_descriptor(const MotifDescriptor& d) {
  validate_descriptor(d);
  DescriptorMotif out;
  if (is_bare_elementary(d)) {
    MinimalMotif m = minimal_motif(*d.body[0].link);
    out.motif = bare_descriptor(m.link);
    for (const auto& alt : m.alternatives) out.alternatives.push_back(bare_descriptor(alt));
    out.note = m.note;
    switch (m.status) {
      case MotifStatus::Exact: out.status = DescriptorMotif::Status::Exact; break;
      case MotifStatus::NotUnique: out.status = DescriptorMotif::Status::NotUnique; break;
      case MotifStatus::BestKnown: out.status = DescriptorMotif::Status::BestKnown; break;
    }
    return out;
  }
  if (!d.local_links.empty()) {
    out.status = DescriptorMotif::Status::NotUnique;
    out.note = "split tangles can have several minimal motifs";
    return out;
  }
  DegreeBound b = cover_degree_bound(d);
  if (b.kind == DegreeBound::Kind::Finite) {
    out.status = DescriptorMotif::Status::BoundOnly;
    out.bound = b.value;
    out.note = "any covering map from this motif has degree at most the bound";
  } else {
    out.status = DescriptorMotif::Status::Unknown;
    out.note = "no degree bound applies";
  }
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Ambient inferred_ambient(const std::vector<Piece>& body) {
  for (const Piece& p : body) {
    if (p.kind == PieceKind::Elementary) return p.link->ambient();
    if (p.kind == PieceKind::Satellite) return Ambient::ThickenedTorus;
  }
  return Ambient::ThickenedTorus;
}

Ambient parse_ambient(detail::Scanner& in) {
  for (Ambient a : {Ambient::SolidTorus, Ambient::ThickenedTorus, Ambient::ThreeTorus})
    if (in.accept(to_string(a))) return a;
  in.fail("expected SolidTorus, ThickenedTorus or ThreeTorus");
}

std::optional<Matrix> read_cover(detail::Scanner& in) {
  Matrix m = parse_matrix(in.bracket_group());
  if (m == Matrix::identity(m.rows())) return std::nullopt;
  return m;
}

Piece read_piece(detail::Scanner& in) {
  if (detail::at_elementary(in)) return Piece::elementary(detail::read_elementary(in));
  if (in.accept("hyp")) {
    in.expect('(');
    Piece p = Piece::hyperbolic(in.identifier());
    while (in.accept(',')) {
      if (in.accept("vol")) {
        in.expect('=');
        p.base_volume = in.real();
      } else if (in.accept("cover")) {
        in.expect('=');
        p.cover = read_cover(in);
      } else {
        in.fail("expected vol= or cover=");
      }
    }
    in.expect(')');
    return p;
  }
  if (in.accept("sfs")) {
    in.expect('(');
    Piece p = Piece::seifert_piece(detail::read_seifert(in));
    while (in.accept(',')) {
      if (in.accept("id")) {
        in.expect('=');
        p.id = in.identifier();
      } else if (in.accept("cover")) {
        in.expect('=');
        p.cover = read_cover(in);
      } else {
        in.fail("expected id= or cover=");
      }
    }
    in.expect(')');
    return p;
  }
  if (in.accept("sat")) {
    in.expect('(');
    ElementaryLink outer = detail::read_elementary(in);
    in.expect(',');
    ElementaryLink pattern = detail::read_elementary(in);
    in.expect(')');
    return Piece::satellite(outer, pattern);
  }
  in.fail("expected a piece: T*(..), hyp(..), sfs(..) or sat(..)");
}

}  // namespace

std::string format_piece(const Piece& p) {
  switch (p.kind) {
    case PieceKind::Elementary: return format_elementary(*p.link);
    case PieceKind::Satellite: return "sat(" + format_elementary(*p.link) + ", " + format_elementary(*p.pattern) + ")";
    case PieceKind::Hyperbolic:
    case PieceKind::Seifert: {
      std::string s = p.kind == PieceKind::Hyperbolic ? "hyp(" + p.id : "sfs(" + format_seifert(*p.seifert);
      if (p.kind == PieceKind::Seifert && !p.id.empty()) s += ", id=" + p.id;
      if (p.base_volume) s += ", vol=" + format_double(*p.base_volume);
      if (p.cover) s += ", cover=" + format_matrix(*p.cover);
      return s + ")";
    }
  }
  return "?";
}

std::string format_descriptor(const MotifDescriptor& d) {
  if (is_bare_elementary(d)) return format_elementary(*d.body[0].link);
  std::string s = "split{ ";
  if (inferred_ambient(d.body) != d.ambient) s += "ambient: " + std::string(to_string(d.ambient)) + ", ";
  s += "body: ";
  if (d.body.empty()) {
    s += "empty";
  } else {
    s += "layered[";
    for (size_t i = 0; i < d.body.size(); ++i) {
      if (i) s += ", ";
      s += format_piece(d.body[i]);
    }
    s += "]";
  }
  s += ", local: [";
  for (size_t i = 0; i < d.local_links.size(); ++i) {
    if (i) s += ", ";
    s += d.local_links[i];
  }
  s += "], khb: " + std::to_string(d.knotted_hole_balls) + " }";
  return s;
}

MotifDescriptor parse_descriptor(std::string_view text) {
  detail::Scanner in(text);
  MotifDescriptor d;
  if (detail::at_elementary(in)) {
    d = bare_descriptor(detail::read_elementary(in));
    in.expect_end();
    return d;
  }
  in.expect("split");
  in.expect('{');
  std::optional<Ambient> ambient;
  if (in.peek() != '}') {
    do {
      if (in.accept("ambient")) {
        in.expect(':');
        ambient = parse_ambient(in);
      } else if (in.accept("body")) {
        in.expect(':');
        if (!in.accept("empty")) {
          in.expect("layered");
          in.expect('[');
          if (in.peek() != ']') {
            do d.body.push_back(read_piece(in));
            while (in.accept(','));
          }
          in.expect(']');
        }
      } else if (in.accept("local")) {
        in.expect(':');
        in.expect('[');
        if (in.peek() != ']') {
          do d.local_links.push_back(in.identifier());
          while (in.accept(','));
        }
        in.expect(']');
      } else if (in.accept("khb")) {
        in.expect(':');
        d.knotted_hole_balls = in.integer();
      } else {
        in.fail("expected ambient, body, local or khb");
      }
    } while (in.accept(','));
  }
  in.expect('}');
  in.expect_end();
  d.ambient = ambient ? *ambient : inferred_ambient(d.body);
  validate_descriptor(d);
  return d;
}

}  // namespace pmotif
