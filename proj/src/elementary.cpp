#include "pmotif/elementary.hpp"

#include <algorithm>
#include <numeric>

#include "pmotif/error.hpp"
#include "readers.hpp"

namespace pmotif {

std::string_view to_string(Ambient ambient) {
  switch (ambient) {
    case Ambient::SolidTorus: return "SolidTorus";
    case Ambient::ThickenedTorus: return "ThickenedTorus";
    case Ambient::ThreeTorus: return "ThreeTorus";
  }
  return "?";
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::T0: return "T0";
    case Family::T1: return "T1";
    case Family::T2: return "T2";
    case Family::T3: return "T3";
  }
  return "?";
}

std::string_view to_string(MotifStatus status) {
  switch (status) {
    case MotifStatus::Exact: return "Exact";
    case MotifStatus::NotUnique: return "NotUnique";
    case MotifStatus::BestKnown: return "BestKnown";
  }
  return "?";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

int cover_dim(Ambient ambient) {
  switch (ambient) {
    case Ambient::SolidTorus: return 1;
    case Ambient::ThickenedTorus: return 2;
    case Ambient::ThreeTorus: return 3;
  }
  return 0;
}

Ambient ambient_of(Family family) {
  switch (family) {
    case Family::T0:
    case Family::T1: return Ambient::SolidTorus;
    case Family::T2: return Ambient::ThickenedTorus;
    case Family::T3: return Ambient::ThreeTorus;
  }
  return Ambient::SolidTorus;
}

namespace {

size_t arity(Family family) { return family == Family::T3 ? 3 : 2; }

Int sign_of(Int x) { return (x > 0) - (x < 0); }

// Strand count along the core; preserved by every cyclic cover.
Int strands(const ElementaryLink& e) { return e.family() == Family::T0 ? e.p() : e.p() + 1; }

void require_same_ambient(const ElementaryLink& a, const ElementaryLink& b) {
  if (a.ambient() != b.ambient())
    throw Error(ErrorKind::AmbientMismatch, format_elementary(a) + " and " + format_elementary(b) +
                                                " live in different ambients");
}

}  // namespace

ElementaryLink canonicalize(Family family, IntVec raw) {
  if (raw.size() != arity(family))
    throw Error(ErrorKind::InvalidParams, std::string(to_string(family)) + " takes " +
                                              std::to_string(arity(family)) + " parameters");
  bool all_zero = std::all_of(raw.begin(), raw.end(), [](Int x) { return x == 0; });
  if (all_zero && family != Family::T1)
    throw Error(ErrorKind::InvalidParams, std::string(to_string(family)) + " parameters must not all vanish");
  raw = sign_normalized(std::move(raw));
  if (family == Family::T0 && raw[0] >= 1 && raw[1] % raw[0] == 0) {
    Int p = raw[0];
    return ElementaryLink(Family::T1, {p - 1, checked_mul(p - 1, raw[1] / p)});
  }
  return ElementaryLink(family, std::move(raw));
}

bool is_isotopic(const ElementaryLink& a, const ElementaryLink& b) {
  require_same_ambient(a, b);
  return a == b;
}

Int components(const ElementaryLink& link) {
  Int d = gcd_of(link.params());
  return link.family() == Family::T1 ? d + 1 : d;
}

std::vector<IntVec> homology_classes(const ElementaryLink& link) {
  std::vector<IntVec> out;
  Int d = gcd_of(link.params());
  if (link.ambient() == Ambient::SolidTorus) {
    // Each of the d components winds p/d times around the core.
    for (Int i = 0; i < d; ++i) out.push_back({link.p() / d});
    if (link.family() == Family::T1) out.push_back({1});
  } else {
    IntVec primitive = link.params();
    for (Int& x : primitive) x /= d;
    primitive = sign_normalized(primitive);
    for (Int i = 0; i < d; ++i) out.push_back(primitive);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ElementaryLink lift(const ElementaryLink& link, const Matrix& cover_basis) {
  const int d = cover_dim(link.ambient());
  if (cover_basis.rows() != d || !cover_basis.square())
    throw Error(ErrorKind::AmbientMismatch, "cover of dimension " + std::to_string(cover_basis.rows()) +
                                                " does not match " + std::string(to_string(link.ambient())));
  Int det = determinant(cover_basis);
  if (det <= 0) throw Error(ErrorKind::InvalidParams, "cover basis must have positive determinant");
  if (d == 1) return canonicalize(link.family(), {link.p(), checked_mul(det, link.q())});
  return canonicalize(link.family(), adjugate(cover_basis) * link.params());
}

ElementaryLink lift(const ElementaryLink& link, const Lattice& cover) {
  if (cover.dim() != cover_dim(link.ambient()))
    throw Error(ErrorKind::AmbientMismatch, "cover of dimension " + std::to_string(cover.dim()) +
                                                " does not match " + std::string(to_string(link.ambient())));
  return lift(link, cover.basis());
}

ElementaryLink lift(const ElementaryLink& link, Int degree) { return lift(link, Lattice::scalar(degree)); }

ElementaryLink dehn_twist(const ElementaryLink& link, const Matrix& twist) {
  if (link.ambient() == Ambient::SolidTorus)
    throw Error(ErrorKind::NotAdmissible, "admissible self-maps of the solid torus are isotopic to the identity");
  const int d = cover_dim(link.ambient());
  if (!twist.square() || twist.rows() != d)
    throw Error(ErrorKind::AmbientMismatch, "twist matrix size does not match " + std::string(to_string(link.ambient())));
  if (determinant(twist) != 1) throw Error(ErrorKind::NotAdmissible, "twist matrix must have determinant 1");
  return canonicalize(link.family(), twist * link.params());
}

Matrix sl_reducer(const IntVec& x) {
  if (x.size() == 2) {
    Int g = gcd_of(x);
    if (g == 0) throw Error(ErrorKind::InvalidParams, "cannot reduce the zero vector");
    Int p = x[0] / g, q = x[1] / g;
    ExtGcd e = ext_gcd(p, q);
    return Matrix{{e.x, e.y}, {-q, p}};
  }
  if (x.size() == 3) {
    if (gcd_of(x) == 0) throw Error(ErrorKind::InvalidParams, "cannot reduce the zero vector");
    Matrix inner = Matrix::identity(3);
    if (x[1] != 0 || x[2] != 0) {
      Matrix a = sl_reducer(IntVec{x[1], x[2]});
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) inner(r + 1, c + 1) = a(r, c);
    }
    IntVec y = inner * x;
    Matrix outer = Matrix::identity(3);
    if (y[0] != 0 || y[1] != 0) {
      Matrix a = sl_reducer(IntVec{y[0], y[1]});
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) outer(r, c) = a(r, c);
    }
    return outer * inner;
  }
  throw Error(ErrorKind::InvalidParams, "reducer needs a 2- or 3-vector");
}

MinimalMotif minimal_motif(const ElementaryLink& link) {
  switch (link.family()) {
    case Family::T2: return {canonicalize(Family::T2, {1, 0}), MotifStatus::Exact, {}, ""};
    case Family::T3: return {canonicalize(Family::T3, {1, 0, 0}), MotifStatus::Exact, {}, ""};
    default: break;
  }
  Int p = link.p(), q = link.q();
  Int s = sign_of(q);
  if (link.family() == Family::T1 && q == 0)
    return {link, MotifStatus::Exact, {}, "cyclic covers fix parallel strands; no proper quotient exists"};
  if (link.family() == Family::T1 && p == 0) return {canonicalize(Family::T1, {0, 1}), MotifStatus::Exact, {}, ""};
  if (link.family() == Family::T0 && p == 0)
    return {canonicalize(Family::T0, {0, 1}), MotifStatus::BestKnown, {},
            "null-homotopic family: least quotient found, outside the exact case analysis"};
  // Strand count k >= 2 with nonzero twisting: T0(k,s) and T1(k-1,s) are
  // both minimal and share every cover of degree divisible by k.
  Int k = strands(link);
  ElementaryLink first = canonicalize(Family::T0, {k, s});
  ElementaryLink second = canonicalize(Family::T1, {k - 1, s});
  return {first, MotifStatus::NotUnique, {second},
          "T0(k,±1) and T1(k-1,±1) have a common cover but neither covers the other"};
}

namespace {

ScaleVerdict bounded_search(const ElementaryLink& a, const ElementaryLink& b, Int bound) {
  for (Int total = 2; total <= 2 * bound; ++total)
    for (Int n0 = std::max<Int>(1, total - bound); n0 <= std::min(bound, total - 1); ++n0) {
      Int n1 = total - n0;
      if (lift(a, n0) == lift(b, n1)) {
        ScaleWitness w;
        w.degree0 = n0;
        w.degree1 = n1;
        w.common = lift(a, n0);
        return {Verdict::Yes, w, "found by bounded search"};
      }
    }
  return {Verdict::Unknown, std::nullopt,
          "no common cyclic cover with degrees <= " + std::to_string(bound) + "; outside the exact case analysis"};
}

ScaleVerdict solid_torus_case(const ElementaryLink& a, const ElementaryLink& b, Int bound) {
  bool a_null = a.family() == Family::T0 && a.p() == 0;
  bool b_null = b.family() == Family::T0 && b.p() == 0;
  if (a_null || b_null) return bounded_search(a, b, bound);

  // Every cyclic cover keeps the strand count and the sign of the twisting.
  if (strands(a) != strands(b))
    return {Verdict::No, std::nullopt,
            "strand count " + std::to_string(strands(a)) + " vs " + std::to_string(strands(b))};
  if (sign_of(a.q()) != sign_of(b.q()))
    return {Verdict::No, std::nullopt,
            "twist sign " + std::to_string(sign_of(a.q())) + " vs " + std::to_string(sign_of(b.q()))};

  ScaleWitness w;
  if (a.family() == b.family()) {
    if (a.q() == 0) {
      w.degree0 = w.degree1 = 1;
    } else {
      Int g = std::gcd(a.q(), b.q());
      w.degree0 = std::abs(b.q()) / g;
      w.degree1 = std::abs(a.q()) / g;
    }
  } else {
    bool swapped = a.family() == Family::T1;
    const ElementaryLink& t0 = swapped ? b : a;
    const ElementaryLink& t1 = swapped ? a : b;
    Int p = t0.p(), q = t0.q();
    Int step = p / std::gcd(p, q);
    Int n0 = 0, n1 = 0;
    for (Int n = step;; n += step) {
      Int twist = checked_mul(p - 1, checked_mul(n, q) / p);
      if (twist % t1.q() == 0 && twist / t1.q() > 0) {
        n0 = n;
        n1 = twist / t1.q();
        break;
      }
    }
    w.degree0 = swapped ? n1 : n0;
    w.degree1 = swapped ? n0 : n1;
  }
  w.common = lift(a, w.degree0);
  if (!replay(a, b, w)) throw Error(ErrorKind::InvalidParams, "internal: solid-torus witness failed to replay");
  return {Verdict::Yes, w, ""};
}

}  // namespace

ScaleVerdict scale_equivalent(const ElementaryLink& a, const ElementaryLink& b, Int search_bound) {
  require_same_ambient(a, b);
  if (a.ambient() == Ambient::SolidTorus) return solid_torus_case(a, b, search_bound);

  const int d = cover_dim(a.ambient());
  Int d0 = gcd_of(a.params()), d1 = gcd_of(b.params());
  Int common = std::lcm(d0, d1);
  auto scaling = [&](Int di) {
    IntVec diag(static_cast<size_t>(d), 1);
    diag[1] = common / di;
    return Lattice::from_basis(Matrix::diagonal(diag));
  };
  ScaleWitness w;
  w.twist0 = sl_reducer(a.params());
  w.twist1 = sl_reducer(b.params());
  w.lattice0 = scaling(d0);
  w.lattice1 = scaling(d1);
  IntVec top(static_cast<size_t>(d), 0);
  top[0] = common;
  w.common = canonicalize(a.family(), top);
  w.degree0 = index(*w.lattice0);
  w.degree1 = index(*w.lattice1);
  if (!replay(a, b, w)) throw Error(ErrorKind::InvalidParams, "internal: twist witness failed to replay");
  return {Verdict::Yes, w, ""};
}

bool replay(const ElementaryLink& a, const ElementaryLink& b, const ScaleWitness& w) {
  if (a.ambient() == Ambient::SolidTorus) {
    if (w.degree0 < 1 || w.degree1 < 1) return false;
    ElementaryLink la = lift(a, w.degree0);
    return la == lift(b, w.degree1) && (!w.common || *w.common == la);
  }
  if (!w.twist0 || !w.twist1 || !w.lattice0 || !w.lattice1) return false;
  ElementaryLink la = lift(dehn_twist(a, *w.twist0), *w.lattice0);
  ElementaryLink lb = lift(dehn_twist(b, *w.twist1), *w.lattice1);
  return la == lb && (!w.common || *w.common == la);
}

JoinQuotient join_quotient(const ElementaryLink& covered, const Lattice& cover0, const Lattice& cover1) {
  if (covered.ambient() == Ambient::SolidTorus)
    throw Error(ErrorKind::AmbientMismatch, "common quotients are computed for the thickened torus and 3-torus");
  const int d = cover_dim(covered.ambient());
  if (cover0.dim() != d || cover1.dim() != d)
    throw Error(ErrorKind::AmbientMismatch, "cover dimension does not match the link");

  auto quotient_params = [&](const Matrix& h) {
    Int n = determinant(h);
    IntVec x = h * covered.params();
    for (Int& v : x) {
      if (v % n != 0)
        throw Error(ErrorKind::NoCommonQuotient, format_elementary(covered) + " is not a lift under " +
                                                     format_matrix(h));
      v /= n;
    }
    return x;
  };
  IntVec x0 = quotient_params(cover0.basis());
  IntVec x1 = quotient_params(cover1.basis());

  // Deck groups in covered coordinates are H_i^{-1} Z^d; scale by N so the
  // generated group becomes an integer lattice J, then the covered -> quotient
  // basis is N * J^{-1}.
  Int n0 = index(cover0), n1 = index(cover1);
  Int scale = std::lcm(n0, n1);
  Matrix g(d, 2 * d);
  Matrix a0 = adjugate(cover0.basis()), a1 = adjugate(cover1.basis());
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      g(r, c) = checked_mul(a0(r, c), scale / n0);
      g(r, c + d) = checked_mul(a1(r, c), scale / n1);
    }
  Lattice joined = Lattice::from_generators(g);
  Int det_j = index(joined);
  Matrix adj_j = adjugate(joined.basis());
  Matrix basis(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      Int v = checked_mul(scale, adj_j(r, c));
      if (v % det_j != 0) throw Error(ErrorKind::NoCommonQuotient, "deck groups do not generate a lattice quotient");
      basis(r, c) = v / det_j;
    }

  auto quotient_map = [&](const Lattice& cover) {
    // cover_basis * H^{-1} = cover_basis * adj(H) / det(H)
    Matrix m = basis * adjugate(cover.basis());
    Int n = index(cover);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        if (m(r, c) % n != 0) throw Error(ErrorKind::NoCommonQuotient, "deck group not contained in the join");
        m(r, c) /= n;
      }
    return m;
  };

  Int m = determinant(basis);
  IntVec xq = basis * covered.params();
  for (Int& v : xq) {
    if (v % m != 0) throw Error(ErrorKind::NoCommonQuotient, "link does not descend to the common quotient");
    v /= m;
  }
  JoinQuotient out{canonicalize(covered.family(), xq),
                   basis,
                   Lattice::from_basis(basis),
                   canonicalize(covered.family(), x0),
                   canonicalize(covered.family(), x1),
                   quotient_map(cover0),
                   quotient_map(cover1)};
  return out;
}

std::string format_elementary(const ElementaryLink& link) {
  std::string s(to_string(link.family()));
  s += '(';
  for (size_t i = 0; i < link.params().size(); ++i) {
    if (i) s += ',';
    s += std::to_string(link.params()[i]);
  }
  return s + ')';
}

namespace detail {

bool at_elementary(Scanner& in) { return in.peek() == 'T'; }

ElementaryLink read_elementary(Scanner& in) {
  Family family;
  if (in.accept("T0"))
    family = Family::T0;
  else if (in.accept("T1"))
    family = Family::T1;
  else if (in.accept("T2"))
    family = Family::T2;
  else if (in.accept("T3"))
    family = Family::T3;
  else
    in.fail("expected T0, T1, T2 or T3");
  in.expect('(');
  IntVec params;
  do params.push_back(in.integer());
  while (in.accept(','));
  in.expect(')');
  return canonicalize(family, std::move(params));
}

}  // namespace detail

ElementaryLink parse_elementary(std::string_view text) {
  detail::Scanner in(text);
  ElementaryLink link = detail::read_elementary(in);
  in.expect_end();
  return link;
}

}  // namespace pmotif
